#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "dt/arcs.hpp"
#include "dt/boundary.hpp"
#include "dt/error.hpp"
#include "brute_force.hpp"
#include "oracles.hpp"

using namespace dt;

namespace {

const SurfaceSignature kSigs[] = {{1, 1, 0}, {0, 2, 0}, {0, 3, 0}, {0, 1, 2}, {1, 1, 1}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}};

std::vector<bool> all_arcs(const QuasiTriangulation& qt) {
  std::vector<bool> m(qt.edge_count(), false);
  for (int e = 0; e < qt.arc_count(); ++e) m[e] = true;
  return m;
}

// Random quasi-filling family on a randomly flipped chart.
std::optional<WeightedArcFamily> random_family(const SurfaceSignature& sig, oracle::Rng& rng, double keep = 0.75) {
  QuasiTriangulation qt = build_seed_triangulation(sig);
  for (int k = 0; k < 10; ++k) {
    const int e = rng.integer(0, qt.arc_count() - 1);
    if (is_flippable(qt, e)) qt = flip_combinatorial(qt, e);
  }
  EdgeVector w(qt.edge_count(), 0.0);
  for (int e = 0; e < qt.arc_count(); ++e)
    if (rng.uniform(0.0, 1.0) < keep) w[e] = rng.uniform(0.2, 2.0);
  std::vector<bool> m(qt.edge_count(), false);
  for (int e = 0; e < qt.arc_count(); ++e) m[e] = w[e] > 0.0;
  if (!quasi_fills(qt, m)) return std::nullopt;
  return make_weighted_family(qt, w);
}

// Weight of the band reached first by the rotation at d_i (after flipping
// non-family arcs out of the way).
double leading_band_weight(const WeightedArcFamily& f, int i) {
  QuasiTriangulation qt = f.qt;
  for (;;) {
    const auto& sides = qt.triangles()[qt.boundary_triangle(i)].sides;
    int k = 0;
    while (sides[k].edge != qt.boundary_edge(i)) ++k;
    const int before = sides[(k + 2) % 3].edge;
    if (f.weights[before] > 0.0) return f.weights[before];
    qt = qt.is_monogon_edge(before) ? move_monogon_base(qt, before) : flip_combinatorial(qt, before);
  }
}

std::multiset<long long> weight_multiset(const WeightedArcFamily& f) {
  std::multiset<long long> out;
  for (int e = 0; e < f.qt.arc_count(); ++e)
    if (f.weights[e] > 0.0) out.insert(std::llround(f.weights[e] * 1e9));
  return out;
}

}  // namespace

TEST_CASE("quasi filling examples") {
  for (const auto& sig : kSigs) {
    const auto qt = build_seed_triangulation(sig);
    CHECK(quasi_fills(qt, all_arcs(qt)));
    CHECK_FALSE(quasi_fills(qt, std::vector<bool>(qt.edge_count(), false)));
  }
  const auto qt = build_seed_triangulation({1, 1, 0});
  std::vector<bool> one(qt.edge_count(), false);
  one[0] = true;
  CHECK_FALSE(quasi_fills(qt, one));
}

TEST_CASE("weighted family construction") {
  const auto qt = build_seed_triangulation({1, 1, 0});
  EdgeVector w(qt.edge_count(), 0.0);
  CHECK_THROWS_AS(make_weighted_family(qt, w), Error);
  w[0] = -1.0;
  CHECK_THROWS_AS(make_weighted_family(qt, w), Error);
  w[0] = 1.0;
  w[qt.boundary_edge(0)] = 1.0;
  CHECK_THROWS_AS(make_weighted_family(qt, w), Error);
  w[qt.boundary_edge(0)] = 0.0;
  w[1] = 3.0;
  const auto f = make_weighted_family(qt, w, true);
  CHECK(f.weights[0] == doctest::Approx(0.25));
  CHECK(f.weights[1] == doctest::Approx(0.75));
  CHECK(f.size() == 2);
}

TEST_CASE("twist at zero is the identity") {
  oracle::Rng rng(1);
  for (int n = 0; n < 80; ++n) {
    const auto f = random_family(kSigs[n % std::size(kSigs)], rng);
    if (!f) continue;
    const auto g = circle_action_twist(*f, 0, 0.0);
    CHECK(g.weights == f->weights);
    CHECK(g.qt.same_cells(f->qt));
  }
}

TEST_CASE("twist composition, width and quasi filling") {
  oracle::Rng rng(2);
  int tested = 0;
  for (int n = 0; n < 400; ++n) {
    const auto& sig = kSigs[n % std::size(kSigs)];
    const auto f = random_family(sig, rng);
    if (!f) continue;
    const int i = rng.integer(0, sig.r - 1);
    const double s = rng.uniform(0.05, 0.95), t = rng.uniform(0.0, 1.0);
    const auto a = circle_action_twist(*f, i, s);
    CHECK(quasi_fills(a));
    CHECK(width_at(a, i) == doctest::Approx(width_at(*f, i)).epsilon(1e-12));
    // A generic twist moves the family; going the rest of the way round does not.
    CHECK_FALSE(equivalent(a, *f));
    CHECK(equivalent(circle_action_twist(a, i, 1.0 - s), *f));
    const double u = s + t >= 1.0 ? s + t - 1.0 : s + t;
    CHECK(equivalent(circle_action_twist(a, i, t), circle_action_twist(*f, i, u)));
    ++tested;
  }
  CHECK(tested > 250);
}

TEST_CASE("twist with the cut at a band boundary does not split") {
  // On the annulus the band slid around the boundary lands parallel to the
  // other band, so the two merge.
  const auto qt = build_seed_triangulation({0, 2, 0});
  EdgeVector w(qt.edge_count(), 0.0);
  w[0] = 0.3;
  w[1] = 0.7;
  const auto f = make_weighted_family(qt, w);
  const double first = leading_band_weight(f, 0);
  const auto g = circle_action_twist(f, 0, first / width_at(f, 0));
  CHECK(g.size() == 1);
  CHECK(weight_multiset(g) == std::multiset<long long>{1000000000});
  // Elsewhere the slid band usually lands on a new arc: a pure relabeling.
  oracle::Rng rng(3);
  int relabeled = 0;
  for (int n = 0; n < 200; ++n) {
    const auto& sig = kSigs[n % std::size(kSigs)];
    const auto h = random_family(sig, rng);
    if (!h) continue;
    const int i = rng.integer(0, sig.r - 1);
    const double lead = leading_band_weight(*h, i);
    if (lead >= width_at(*h, i)) continue;  // a single end: a full turn
    const auto moved = circle_action_twist(*h, i, lead / width_at(*h, i));
    CHECK(moved.size() <= h->size());
    if (moved.size() == h->size()) {
      CHECK(weight_multiset(moved) == weight_multiset(*h));
      ++relabeled;
    }
    // A cut inside a band splits it.
    const auto split = circle_action_twist(*h, i, 0.5 * lead / width_at(*h, i));
    CHECK(split.size() >= h->size());
  }
  CHECK(relabeled > 50);
}

TEST_CASE("twisting past a punctured monogon") {
  oracle::Rng rng(4);
  int tested = 0;
  for (const SurfaceSignature sig : {SurfaceSignature{0, 1, 2}, SurfaceSignature{1, 1, 1}, SurfaceSignature{0, 2, 1}}) {
    for (int n = 0; n < 40; ++n) {
      const auto f = random_family(sig, rng, 0.5);
      if (!f) continue;
      const auto g = circle_action_twist(*f, 0, rng.uniform(0.0, 1.0));
      CHECK(validate_quasi_triangulation(g.qt).ok());
      CHECK(quasi_fills(g));
      ++tested;
    }
  }
  CHECK(tested > 30);
  const auto qt = build_seed_triangulation({1, 1, 1});
  for (int e = 0; e < qt.arc_count(); ++e) {
    if (!qt.is_monogon_edge(e)) continue;
    const auto moved = move_monogon_base(qt, e);
    CHECK(validate_quasi_triangulation(moved).ok());
    CHECK(moved.is_monogon_edge(e));
  }
}

TEST_CASE("q projection") {
  oracle::Rng rng(5);
  const auto qt = build_seed_triangulation({1, 1, 1});
  const auto ds = uniform_structure(qt);
  const EdgeVector v = simplicial_coordinates(ds);
  const auto f = q_projection(qt, v);
  for (int e = 0; e < qt.arc_count(); ++e)
    CHECK(f.weights[e] == (qt.is_monogon_edge(e) ? 0.0 : v[e]));
  // Changing the boundary coordinates does not move the projection.
  EdgeVector v2 = v;
  for (int i = 0; i < qt.signature().r; ++i) v2[qt.boundary_edge(i)] += 0.5;
  CHECK(q_projection(qt, v2).weights == f.weights);
  // Zero on the arcs outside a family gives back that family.
  for (int n = 0; n < 60; ++n) {
    const auto g = random_family(kSigs[n % std::size(kSigs)], rng);
    if (!g) continue;
    EdgeVector x = g->weights;
    for (int i = 0; i < g->qt.signature().r; ++i) x[g->qt.boundary_edge(i)] = 1.0;
    if (!membership_tilde_C(g->qt, x).member) continue;
    CHECK(q_projection(g->qt, x).mask() == g->mask());
  }
  EdgeVector bad = v;
  bad[0] = -1.0;
  CHECK_THROWS_AS(q_projection(qt, bad), Error);
}

TEST_CASE("arc to moduli on the seed of F_{1,1}^0") {
  const auto qt = build_seed_triangulation({1, 1, 0});
  EdgeVector w(qt.edge_count(), 0.0);
  for (int e = 0; e < qt.arc_count(); ++e) w[e] = 1.0;
  const auto m = arc_to_moduli(make_weighted_family(qt, w));
  // The solved structure reproduces the projectivized weights and a zero
  // boundary coordinate.
  const EdgeVector x = simplicial_coordinates(m.structure);
  for (int e = 0; e < qt.arc_count(); ++e) CHECK(x[e] == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(std::abs(x[qt.boundary_edge(0)]) < 1e-10);
  REQUIRE(m.lengths.size() == 1);
  CHECK(m.lengths[0] == 1.0);
  // Pinned regression values.
  const double pinned[] = {12.875805665989835, 3.1380711874360685, 4.2672167743288583, 7.8474907774675273,
                           9.1236132358779543};
  REQUIRE(m.fingerprint.size() >= 5);
  for (int k = 0; k < 5; ++k) CHECK(m.fingerprint[k] == doctest::Approx(pinned[k]).epsilon(1e-9));
}

TEST_CASE("arc to moduli is projective, completion independent and continuous along twists") {
  oracle::Rng rng(6);
  int tested = 0;
  for (int n = 0; n < 300 && tested < 60; ++n) {
    const auto& sig = kSigs[n % std::size(kSigs)];
    const auto f = random_family(sig, rng);
    if (!f) continue;
    ModuliPoint m;
    try {
      m = arc_to_moduli(*f);
    } catch (const Error& e) {
      CHECK((e.code() == "not-in-cell" || e.code() == "invalid-weights"));
      continue;
    }
    ++tested;
    EdgeVector w2 = f->weights;
    for (auto& x : w2) x *= 2.0;
    const auto m2 = arc_to_moduli(make_weighted_family(f->qt, w2));
    CHECK(m2.lengths == m.lengths);
    CHECK(m2.fingerprint == m.fingerprint);
    // Flipping arcs outside the family changes the completion only.
    WeightedArcFamily g = *f;
    for (int k = 0; k < 6; ++k) {
      const int e = rng.integer(0, g.qt.arc_count() - 1);
      if (g.weights[e] == 0.0 && is_flippable(g.qt, e)) g.qt = flip_combinatorial(g.qt, e);
    }
    const auto mg = arc_to_moduli(g);
    for (std::size_t i = 0; i < m.lengths.size(); ++i) CHECK(mg.lengths[i] == doctest::Approx(m.lengths[i]).epsilon(1e-8));
    // Deviation along the circle action shrinks linearly with the twist.
    const int i = rng.integer(0, sig.r - 1);
    const auto lengths_gap = [&](double t) {
      const auto mt = arc_to_moduli(circle_action_twist(*f, i, t));
      const auto a = boundary_traces(mt.structure), b = boundary_traces(m.structure);
      double d = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]) / b[k]);
      return d;
    };
    const double g3 = lengths_gap(1e-3), g5 = lengths_gap(1e-5);
    CHECK(g5 <= 0.1 * g3 + 1e-9);
    CHECK(g5 < 1e-3);
  }
  CHECK(tested > 30);
}

TEST_CASE("arc to moduli rejects coordinates outside the cell") {
  // On the annulus a single arc leaves a vanishing arc between the two boundaries.
  const auto qt = build_seed_triangulation({0, 2, 0});
  EdgeVector w(qt.edge_count(), 0.0);
  w[0] = 1.0;
  const auto f = make_weighted_family(qt, w);
  REQUIRE(quasi_fills(f));
  try {
    arc_to_moduli(f);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == "not-in-cell");
  }
}

TEST_CASE("arc complex enumeration") {
  const auto annulus = enumerate_arc_complex({0, 2, 0}, 1000);
  CHECK(annulus.complete);
  CHECK(annulus.top_dimension == 1);
  CHECK(annulus.simplices == std::vector<int>{1, 1});
  const auto disk = enumerate_arc_complex({0, 1, 2}, 1000);
  CHECK(disk.triangulations == 2);
  CHECK(disk.simplices == std::vector<int>{2, 2});
  CHECK(disk.filling_simplices == std::vector<int>{2, 2});
  for (const auto& sig : kSigs) {
    if (sig.arc_count() > 9) continue;
    const auto cat = enumerate_arc_complex(sig, 5000);
    CHECK(cat.complete);
    CHECK(cat.top_dimension == sig.arc_complex_dimension());
    CHECK(cat.filling_simplices.back() == cat.simplices.back());
  }
  CHECK_THROWS_AS(enumerate_arc_complex({3, 1, 0}, 10), Error);
  CHECK_FALSE(enumerate_arc_complex({1, 2, 0}, 3).complete);
}

TEST_CASE("enumeration agrees with brute-force gluing") {
  for (const SurfaceSignature sig :
       {SurfaceSignature{0, 2, 0}, SurfaceSignature{0, 1, 2}, SurfaceSignature{1, 1, 0}, SurfaceSignature{0, 1, 3}}) {
    const auto brute = oracle::brute_force_triangulations(sig);
    const FlipGraph fg = enumerate_flip_graph(sig, 1000);
    CHECK(fg.nodes.size() == brute.size());
    CHECK(fg.edges.size() == oracle::brute_force_flip_edges(brute).size());
    const auto cat = enumerate_arc_complex(sig, 1000);
    const auto oracle_cat = oracle::brute_force_arc_complex(sig);
    CHECK(cat.simplices == oracle_cat.simplices);
    CHECK(cat.filling_simplices == oracle_cat.filling);
  }
}

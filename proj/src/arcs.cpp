#include "dt/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "dt/boundary.hpp"
#include "dt/cells.hpp"
#include "dt/error.hpp"

namespace dt {

namespace {

int ends_at(const QuasiTriangulation& qt, int e, int i) {
  const auto [a, b] = qt.side_endpoints({e, 0});
  return (a == i) + (b == i);
}

double total(const EdgeVector& w) {
  double s = 0.0;
  for (double x : w) s += x;
  return s;
}

}  // namespace

std::vector<bool> WeightedArcFamily::mask() const {
  std::vector<bool> m(qt.edge_count(), false);
  for (int e = 0; e < qt.arc_count(); ++e) m[e] = weights[e] > 0.0;
  return m;
}

int WeightedArcFamily::size() const {
  int n = 0;
  for (int e = 0; e < qt.arc_count(); ++e) n += weights[e] > 0.0;
  return n;
}

WeightedArcFamily make_weighted_family(const QuasiTriangulation& qt, EdgeVector weights, bool projective) {
  if (static_cast<int>(weights.size()) != qt.edge_count())
    throw Error("invalid-weights", "expected " + std::to_string(qt.edge_count()) + " weights");
  for (int e = 0; e < qt.edge_count(); ++e) {
    if (!std::isfinite(weights[e]) || weights[e] < 0.0)
      throw Error("invalid-weights", "weight on edge " + std::to_string(e) + " is negative or not finite");
    if (qt.is_boundary(e) && weights[e] != 0.0)
      throw Error("invalid-weights", "boundary segment " + std::to_string(e) + " carries a weight");
  }
  const double s = total(weights);
  if (!(s > 0.0)) throw Error("invalid-weights", "empty family");
  if (projective)
    for (auto& w : weights) w /= s;
  return {qt, std::move(weights), projective};
}

bool quasi_fills(const QuasiTriangulation& qt, const std::vector<bool>& mask) { return family_quasi_fills(qt, mask); }
bool quasi_fills(const WeightedArcFamily& waf) { return family_quasi_fills(waf.qt, waf.mask()); }

double width_at(const WeightedArcFamily& waf, int i) {
  double w = 0.0;
  for (int e = 0; e < waf.qt.arc_count(); ++e) w += waf.weights[e] * ends_at(waf.qt, e, i);
  return w;
}

WeightedArcFamily circle_action_twist(const WeightedArcFamily& waf, int i, double t) {
  if (i < 0 || i >= waf.qt.signature().r) throw Error("bad-index", "no boundary component " + std::to_string(i));
  if (!(t >= 0.0 && t < 1.0)) throw Error("bad-parameter", "twist parameter must lie in [0, 1)");
  if (!quasi_fills(waf)) throw Error("not-quasi-filling", "twisting needs a quasi-filling family");
  WeightedArcFamily out = waf;
  const double width = width_at(waf, i);
  const double eps = 1e-12 * width;
  double remaining = t * width;
  // The band ending at d_i just before the boundary segment slides once
  // around the boundary and becomes the third side of the boundary triangle.
  for (int guard = 0; remaining > eps; ++guard) {
    if (guard > 100000) throw Error("numerical-failure", "band rotation did not settle");
    const QuasiTriangulation& qt = out.qt;
    const int tri = qt.boundary_triangle(i);
    const auto& sides = qt.triangles()[tri].sides;
    int k = 0;
    while (sides[k].edge != qt.boundary_edge(i)) ++k;
    const int before = sides[(k + 2) % 3].edge, after = sides[(k + 1) % 3].edge;
    if (out.weights[before] <= 0.0) {
      if (qt.is_monogon_edge(before)) {
        out.qt = move_monogon_base(qt, before);
        continue;
      }
      if (!is_flippable(qt, before))
        throw Error("twist-unsupported", "arc " + std::to_string(before) + " blocks the fan at boundary " +
                                             std::to_string(i) + ": " + *flip_obstruction(qt, before));
      out.qt = flip_combinatorial(qt, before);
      continue;
    }
    if (before == after) break;
    const double moved = std::min(out.weights[before], remaining);
    out.weights[after] += moved;
    out.weights[before] -= moved;
    if (out.weights[before] <= eps) out.weights[before] = 0.0;
    remaining -= moved;
  }
  return out;
}

FamilyKey family_key(const WeightedArcFamily& waf) {
  FamilyKey key;
  std::vector<int> order;
  key.code = family_code(waf.qt, waf.mask(), &order);
  std::vector<bool> seen(waf.qt.edge_count(), false);
  for (int d : order) {
    const int e = SideRef::from_dart(d).edge;
    if (seen[e] || waf.qt.is_boundary(e)) continue;
    seen[e] = true;
    key.weights.push_back(waf.weights[e]);
  }
  return key;
}

bool equivalent(const WeightedArcFamily& a, const WeightedArcFamily& b, double tol) {
  const FamilyKey ka = family_key(a), kb = family_key(b);
  if (ka.code != kb.code || ka.weights.size() != kb.weights.size()) return false;
  for (std::size_t k = 0; k < ka.weights.size(); ++k)
    if (std::abs(ka.weights[k] - kb.weights[k]) > tol * (1.0 + std::abs(ka.weights[k]))) return false;
  return true;
}

WeightedArcFamily q_projection(const QuasiTriangulation& qt, const EdgeVector& v) {
  const Membership m = membership_tilde_C(qt, v);
  if (!m.member) throw Error("not-in-cell", "coordinates are outside the cell: " + m.witness->reason);
  EdgeVector w(qt.edge_count(), 0.0);
  for (int e = 0; e < qt.arc_count(); ++e) w[e] = v[e] > 0.0 ? v[e] : 0.0;
  return make_weighted_family(qt, std::move(w));
}

ModuliPoint arc_to_moduli(const WeightedArcFamily& waf) {
  if (!quasi_fills(waf)) throw Error("not-quasi-filling", "the family does not quasi-fill");
  const QuasiTriangulation& qt = waf.qt;
  EdgeVector v(qt.edge_count(), 0.0);
  double s = 0.0;
  for (int e = 0; e < qt.arc_count(); ++e)
    if (!qt.is_monogon_edge(e)) s += waf.weights[e];
  if (!(s > 0.0)) throw Error("invalid-weights", "no weight off the monogon arcs");
  for (int e = 0; e < qt.arc_count(); ++e)
    if (!qt.is_monogon_edge(e)) v[e] = waf.weights[e] / s;
  const SolveReport rep = solve_inverse_coordinates(qt, v);
  ModuliPoint out;
  out.structure = rep.ds;
  out.residual = rep.residual;
  for (int i = 0; i < qt.signature().r; ++i) out.lengths.push_back(boundary_length(rep.ds, i));
  const double total_length = total(out.lengths);
  if (total_length > 0.0)
    for (auto& l : out.lengths) l /= total_length;
  out.fingerprint = metric_fingerprint(rep.ds);
  return out;
}

ArcComplexCatalog enumerate_arc_complex(const SurfaceSignature& sig, int max_triangulations) {
  require_admissible(sig);
  if (sig.arc_count() > 12) throw Error("catalog-too-large", "arc complex catalog is limited to 12 arcs");
  const FlipGraph fg = enumerate_flip_graph(sig, max_triangulations);
  ArcComplexCatalog cat;
  cat.signature = sig;
  cat.triangulations = static_cast<int>(fg.nodes.size());
  const int arcs = sig.arc_count();
  std::vector<std::map<std::vector<int>, bool>> orbits(arcs);
  for (const auto& qt : fg.nodes) {
    for (unsigned bits = 1; bits < (1u << arcs); ++bits) {
      std::vector<bool> mask(qt.edge_count(), false);
      int n = 0;
      for (int e = 0; e < arcs; ++e)
        if (bits >> e & 1u) mask[e] = true, ++n;
      auto code = family_code(qt, mask);
      auto& slot = orbits[n - 1];
      if (slot.count(code)) continue;
      slot.emplace(std::move(code), family_quasi_fills(qt, mask));
    }
  }
  for (int p = 0; p < arcs; ++p) {
    int filling = 0;
    std::vector<std::vector<int>> reps;
    for (const auto& [code, fills] : orbits[p]) {
      filling += fills;
      reps.push_back(code);
    }
    cat.simplices.push_back(static_cast<int>(orbits[p].size()));
    cat.filling_simplices.push_back(filling);
    cat.representatives.push_back(std::move(reps));
    if (!orbits[p].empty()) cat.top_dimension = p;
  }
  cat.complete = !fg.truncated;
  return cat;
}

}  // namespace dt

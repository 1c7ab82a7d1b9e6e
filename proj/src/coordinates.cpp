#include "dt/coordinates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "dt/error.hpp"

namespace dt {

namespace {

int mod3(int k) { return ((k % 3) + 3) % 3; }

double det2(const Spinor& p, const Spinor& q) { return p[0] * q[1] - p[1] * q[0]; }

Spinor combo(double x, const Spinor& p, double y, const Spinor& q) {
  return {x * p[0] + y * q[0], x * p[1] + y * q[1]};
}

// Spinor of C with (P, Q, C) counterclockwise and the given lambda lengths.
Spinor third_vertex(const Spinor& p, const Spinor& q, double lambda_qc, double lambda_pc) {
  const double d = det2(p, q);
  if (!(std::abs(d) > 0.0) || !std::isfinite(d)) throw Error("numerical-failure", "degenerate spinor pair in development");
  const double x = lambda_qc / std::abs(d);
  const double y = (d > 0 ? 1.0 : -1.0) * lambda_pc / std::abs(d);
  return combo(x, p, y, q);
}

void check_spinors(const LiftedTriangle& l) {
  for (const auto& s : l.corners) {
    const double m = std::max(std::abs(s[0]), std::abs(s[1]));
    if (!std::isfinite(m) || m < 1e-150 || m > 1e150)
      throw Error("numerical-failure", "horocycle size underflow in triangle " + std::to_string(l.triangle));
  }
}

}  // namespace

void require_valid(const DecoratedStructure& ds) {
  if (static_cast<int>(ds.lambda.size()) != ds.qt.edge_count())
    throw Error("invalid-lambda", "lambda vector has wrong length");
  for (double v : ds.lambda)
    if (!(v > 0.0) || !std::isfinite(v)) throw Error("invalid-lambda", "lambda lengths must be positive and finite");
}

DecoratedStructure uniform_structure(const QuasiTriangulation& qt, double value) {
  return {qt, EdgeVector(qt.edge_count(), value)};
}

double side_term(const DecoratedStructure& ds, SideRef s) {
  const FaceSlot f = ds.qt.face_of(s);
  if (f.kind != FaceKind::Triangle) throw Error("invalid-side", "side does not lie on a triangle");
  const Triangle& t = ds.qt.triangles()[f.index];
  const double e = ds.lambda[s.edge];
  const double a = ds.lambda[t.sides[mod3(f.pos + 1)].edge];
  const double b = ds.lambda[t.sides[mod3(f.pos + 2)].edge];
  return (a * a + b * b - e * e) / (a * b * e);
}

EdgeVector simplicial_coordinates(const DecoratedStructure& ds) {
  require_valid(ds);
  EdgeVector out(ds.qt.edge_count(), 0.0);
  for (int e = 0; e < ds.qt.edge_count(); ++e) {
    if (ds.qt.is_boundary(e)) {
      out[e] = 2.0 * side_term(ds, {e, 0});
    } else if (!ds.qt.is_monogon_edge(e)) {
      out[e] = side_term(ds, {e, 0}) + side_term(ds, {e, 1});
    }
  }
  return out;
}

double corner_h_length(const DecoratedStructure& ds, int t, int k) {
  const Triangle& tri = ds.qt.triangles().at(t);
  return h_length_corner(ds.lambda[tri.sides[mod3(k)].edge], ds.lambda[tri.sides[mod3(k - 1)].edge],
                         ds.lambda[tri.sides[mod3(k + 1)].edge]);
}

double ptolemy_length(double a, double b, double c, double d, double e) { return (a * c + b * d) / e; }

DecoratedStructure ptolemy_flip(const DecoratedStructure& ds, int e) {
  require_valid(ds);
  std::vector<double> lambda = ptolemy_lengths(ds.qt, ds.lambda, e);
  return {flip_combinatorial(ds.qt, e), std::move(lambda)};
}

MoebiusMap spinor_map(const Spinor& p, const Spinor& q, const Spinor& p2, Spinor q2) {
  const double d1 = det2(p, q);
  if (det2(p2, q2) * d1 < 0) q2 = {-q2[0], -q2[1]};
  // M = [p2 q2] [p q]^-1
  const MoebiusMap target{p2[0], q2[0], p2[1], q2[1]};
  const MoebiusMap source_inv{q[1] / d1, -q[0] / d1, -p[1] / d1, p[0] / d1};
  return (target * source_inv).normalized();
}

LiftedTriangle lift_across(const DecoratedStructure& ds, const LiftedTriangle& l, int pos) {
  const Triangle& t = ds.qt.triangles()[l.triangle];
  const SideRef s = t.sides[mod3(pos)];
  const FaceSlot f = ds.qt.face_of(s.twin());
  if (f.kind != FaceKind::Triangle) throw Error("invalid-side", "lift_across needs a triangle on both sides");
  const Triangle& n = ds.qt.triangles()[f.index];
  const Spinor& a = l.corners[mod3(pos)];
  const Spinor& b = l.corners[mod3(pos + 1)];
  LiftedTriangle out;
  out.triangle = f.index;
  out.corners[mod3(f.pos)] = b;
  out.corners[mod3(f.pos + 1)] = a;
  out.corners[mod3(f.pos + 2)] =
      third_vertex(b, a, ds.lambda[n.sides[mod3(f.pos + 1)].edge], ds.lambda[n.sides[mod3(f.pos + 2)].edge]);
  check_spinors(out);
  return out;
}

LiftedTriangle lift_through_monogon(const DecoratedStructure& ds, const LiftedTriangle& l, int pos) {
  const Triangle& t = ds.qt.triangles()[l.triangle];
  const SideRef s = t.sides[mod3(pos)];
  if (ds.qt.face_of(s.twin()).kind != FaceKind::Monogon)
    throw Error("invalid-side", "lift_through_monogon needs a monogon across the side");
  const Spinor a = l.corners[mod3(pos)];
  Spinor b = l.corners[mod3(pos + 1)];
  if (det2(a, b) < 0) b = {-b[0], -b[1]};
  // Consecutive vertices of a punctured monogon satisfy p_{k+1} = 2 p_k - p_{k-1}.
  const Spinor next = combo(2.0, a, -1.0, b);
  LiftedTriangle out;
  out.triangle = l.triangle;
  out.corners[mod3(pos)] = next;
  out.corners[mod3(pos + 1)] = a;
  out.corners[mod3(pos + 2)] =
      third_vertex(next, a, ds.lambda[t.sides[mod3(pos + 1)].edge], ds.lambda[t.sides[mod3(pos + 2)].edge]);
  check_spinors(out);
  return out;
}

std::vector<LiftedTriangle> fan_around_u1(const DecoratedStructure& ds, const LiftedTriangle& t0, int k) {
  std::vector<LiftedTriangle> fan{t0};
  LiftedTriangle cur = t0;
  int j = mod3(k + 1);
  const int limit = 4 * (static_cast<int>(ds.qt.triangles().size()) + static_cast<int>(ds.qt.monogons().size())) + 8;
  for (int step = 0; step < limit; ++step) {
    const SideRef s = ds.qt.triangles()[cur.triangle].sides[j];
    if (ds.qt.is_boundary(s.edge)) return fan;
    const FaceSlot f = ds.qt.face_of(s.twin());
    if (f.kind == FaceKind::Monogon) {
      cur = lift_through_monogon(ds, cur, j);
      j = mod3(j + 1);
    } else {
      cur = lift_across(ds, cur, j);
      j = mod3(f.pos + 1);
    }
    fan.push_back(cur);
  }
  throw Error("invalid-triangulation", "walk around a distinguished point did not close");
}

MoebiusMap parabolic_through(const IdealPoint& fixed, const IdealPoint& p, const IdealPoint& q) {
  const MoebiusMap t = send_to_infinity(fixed);
  const IdealPoint p1 = moebius_apply(t, p), q1 = moebius_apply(t, q);
  if (p1.infinite || q1.infinite) throw Error("degenerate-moebius", "parabolic endpoints coincide with its fixed point");
  const MoebiusMap shift{1.0, q1.x - p1.x, 0.0, 1.0};
  return (t.inverse() * shift * t).normalized();
}

namespace {

LiftedTriangle root_lift(const DecoratedStructure& ds, int t, int k) {
  const Triangle& tri = ds.qt.triangles()[t];
  const auto h = realize_triangle(ds.lambda[tri.sides[mod3(k)].edge], ds.lambda[tri.sides[mod3(k + 2)].edge],
                                  ds.lambda[tri.sides[mod3(k + 1)].edge]);
  LiftedTriangle l;
  l.triangle = t;
  for (int i = 0; i < 3; ++i) l.corners[mod3(k + i)] = to_spinor(h[i]);
  return l;
}

int boundary_position(const QuasiTriangulation& qt, int t, int component) {
  const int b = qt.boundary_edge(component);
  for (int k = 0; k < 3; ++k)
    if (qt.triangles()[t].sides[k].edge == b) return k;
  throw Error("invalid-triangulation", "boundary segment missing from its triangle");
}

struct StripMaps {
  MoebiusMap deck;
  MoebiusMap parabolic_product;
};

StripMaps strip_holonomy(const DecoratedStructure& ds, const LiftedTriangle& t0, int k) {
  const auto fan = fan_around_u1(ds, t0, k);
  const LiftedTriangle& t1 = fan.back();
  const int component = ds.qt.edges()[ds.qt.triangles()[t0.triangle].sides[k].edge].component;
  const int j = boundary_position(ds.qt, t1.triangle, component);
  StripMaps out;
  out.deck = spinor_map(t0.corners[k], t0.corners[mod3(k + 1)], t1.corners[j], t1.corners[mod3(j + 1)]);
  const IdealPoint u0 = t0.horocycle(k).center, u1 = t0.horocycle(k + 1).center, v0 = t0.horocycle(k + 2).center;
  const IdealPoint v1 = t1.horocycle(j + 2).center;
  // sigma fixes v0 and takes u0 to u1, tau fixes u1 and takes v0 to v1.
  const MoebiusMap sigma = parabolic_through(v0, u0, u1);
  const MoebiusMap tau = parabolic_through(u1, v0, v1);
  out.parabolic_product = (tau * sigma).normalized();
  return out;
}

}  // namespace

std::pair<LiftedTriangle, int> lift_boundary_triangle(const DecoratedStructure& ds, int i) {
  require_valid(ds);
  const int t = ds.qt.boundary_triangle(i);
  const int k = boundary_position(ds.qt, t, i);
  return {root_lift(ds, t, k), k};
}

MoebiusMap strip_deck_map(const DecoratedStructure& ds, const LiftedTriangle& t0, int k) {
  return strip_holonomy(ds, t0, k).deck;
}

DevelopedStructure develop_holonomy(const DecoratedStructure& ds) {
  require_valid(ds);
  const QuasiTriangulation& qt = ds.qt;
  const int nt = static_cast<int>(qt.triangles().size());
  DevelopedStructure out;
  out.lifts.resize(nt);
  out.parent.assign(nt, -1);
  out.parent_side.assign(nt, -1);
  std::vector<bool> placed(nt, false);
  std::vector<bool> tree_edge(qt.edge_count(), false);
  const int root = qt.boundary_triangle(0);
  out.lifts[root] = root_lift(ds, root, boundary_position(qt, root, 0));
  placed[root] = true;
  std::queue<int> queue;
  queue.push(root);
  while (!queue.empty()) {
    const int t = queue.front();
    queue.pop();
    for (int k = 0; k < 3; ++k) {
      const SideRef s = qt.triangles()[t].sides[k];
      if (!qt.is_arc(s.edge)) continue;
      const FaceSlot f = qt.face_of(s.twin());
      if (f.kind != FaceKind::Triangle || placed[f.index]) continue;
      out.lifts[f.index] = lift_across(ds, out.lifts[t], k);
      out.parent[f.index] = t;
      out.parent_side[f.index] = k;
      placed[f.index] = true;
      tree_edge[s.edge] = true;
      queue.push(f.index);
    }
  }
  for (int e = 0; e < qt.edge_count(); ++e) {
    if (!qt.is_arc(e) || tree_edge[e] || qt.is_monogon_edge(e)) continue;
    const FaceSlot f0 = qt.face_of({e, 0}), f1 = qt.face_of({e, 1});
    const LiftedTriangle moved = lift_across(ds, out.lifts[f0.index], f0.pos);
    const LiftedTriangle& base = out.lifts[f1.index];
    out.generators.push_back({e, spinor_map(base.corners[f1.pos], base.corners[mod3(f1.pos + 1)], moved.corners[f1.pos],
                                            moved.corners[mod3(f1.pos + 1)])});
  }
  for (int i = 0; i < qt.signature().r; ++i) {
    const int t = qt.boundary_triangle(i);
    const StripMaps maps = strip_holonomy(ds, out.lifts[t], boundary_position(qt, t, i));
    out.boundary_holonomy.push_back(maps.deck);
    out.parabolic_product.push_back(maps.parabolic_product);
  }
  for (const Monogon& m : qt.monogons()) {
    const FaceSlot f = qt.face_of(m.side.twin());
    const LiftedTriangle& l = out.lifts[f.index];
    const Spinor a = l.corners[f.pos];
    Spinor b = l.corners[mod3(f.pos + 1)];
    if (det2(a, b) < 0) b = {-b[0], -b[1]};
    out.puncture_holonomy.push_back(spinor_map(b, a, a, combo(2.0, a, -1.0, b)));
  }
  return out;
}

std::vector<double> boundary_traces(const DecoratedStructure& ds) {
  // Each trace comes from a lift rooted at its own boundary triangle: the
  // globally developed holonomy is conjugated along a tree path whose entries
  // grow with the path and cost digits.
  std::vector<double> out;
  for (int i = 0; i < ds.qt.signature().r; ++i) {
    const auto [t0, k] = lift_boundary_triangle(ds, i);
    out.push_back(std::abs(strip_deck_map(ds, t0, k).trace()));
  }
  return out;
}

double boundary_length(const DecoratedStructure& ds, int i) {
  const auto traces = boundary_traces(ds);
  const double tr = traces.at(i);
  if (!(tr > 2.0)) throw Error("degenerate-boundary", "degenerate boundary");
  return 2.0 * std::acosh(tr / 2.0);
}

// ---------------------------------------------------------------------------

std::vector<ArcSum> minimal_arc_sums(const QuasiTriangulation& qt, const EdgeVector& v) {
  const int r = qt.signature().r;
  const int nd = 2 * qt.edge_count();
  std::vector<ArcSum> out;
  for (int i = 0; i < r; ++i) {
    // State: the dart through which the current face was entered.
    std::vector<double> dist(nd, std::numeric_limits<double>::infinity());
    std::vector<int> prev(nd, -1);
    std::vector<bool> done(nd, false);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    const int start = SideRef{qt.boundary_edge(i), 0}.dart();
    dist[start] = v[qt.boundary_edge(i)];
    heap.push({dist[start], start});
    std::vector<double> best(r, std::numeric_limits<double>::infinity());
    std::vector<int> best_state(r, -1);
    while (!heap.empty()) {
      const auto [d, state] = heap.top();
      heap.pop();
      if (done[state]) continue;
      done[state] = true;
      const SideRef in = SideRef::from_dart(state);
      const FaceSlot f = qt.face_of(in);
      std::vector<SideRef> exits;
      if (f.kind == FaceKind::Monogon) {
        exits.push_back(in);
      } else {
        const Triangle& t = qt.triangles()[f.index];
        exits.push_back(t.sides[mod3(f.pos + 1)]);
        exits.push_back(t.sides[mod3(f.pos + 2)]);
      }
      for (const SideRef out_side : exits) {
        if (qt.is_boundary(out_side.edge)) {
          const int j = qt.edges()[out_side.edge].component;
          const double total = d + v[out_side.edge];
          if (total < best[j]) {
            best[j] = total;
            best_state[j] = state;
          }
          continue;
        }
        const int next = out_side.twin().dart();
        const double nd2 = d + v[out_side.edge];
        if (nd2 < dist[next]) {
          dist[next] = nd2;
          prev[next] = state;
          heap.push({nd2, next});
        }
      }
    }
    for (int j = i; j < r; ++j) {
      if (best_state[j] < 0) continue;
      ArcSum a{i, j, best[j], {}};
      for (int s = best_state[j]; s >= 0 && s != start; s = prev[s]) a.edges.push_back(SideRef::from_dart(s).edge);
      std::reverse(a.edges.begin(), a.edges.end());
      out.push_back(std::move(a));
    }
  }
  return out;
}

Membership membership_tilde_C(const QuasiTriangulation& qt, const EdgeVector& v, double tol) {
  if (static_cast<int>(v.size()) != qt.edge_count()) throw Error("invalid-vector", "coordinate vector has wrong length");
  Membership m;
  std::vector<bool> mask(qt.edge_count(), false);
  for (int e = 0; e < qt.arc_count(); ++e) {
    if (v[e] < 0.0) {
      m.witness = MembershipWitness{"negative", {e}, -1, -1, v[e], "negative arc coordinate"};
      return m;
    }
    mask[e] = v[e] > tol || qt.is_monogon_edge(e);
  }
  const RegionDecomposition dec = complementary_regions(qt, mask);
  for (const Region& reg : dec.regions) {
    if (reg.is_polygon()) continue;
    std::string why = reg.genus > 0 ? "region has genus" : reg.cycles.size() > 1 ? "region has several boundary cycles"
                                                                                    : "region has several punctures";
    m.witness = MembershipWitness{"cycle", reg.interior_arcs, -1, -1, 0.0, why};
    return m;
  }
  for (const ArcSum& a : minimal_arc_sums(qt, v)) {
    if (a.value <= tol) {
      m.witness = MembershipWitness{"arc", a.edges, a.from, a.to, a.value, "vanishing arc"};
      return m;
    }
  }
  m.member = true;
  return m;
}

bool strict_triangle(double a, double b, double c) { return a < b + c && b < a + c && c < a + b; }

bool in_hat(const DecoratedStructure& ds) {
  require_valid(ds);
  for (const Triangle& t : ds.qt.triangles())
    if (!strict_triangle(ds.lambda[t.sides[0].edge], ds.lambda[t.sides[1].edge], ds.lambda[t.sides[2].edge]))
      return false;
  return true;
}

DecoratedStructure retract_to_hat(const DecoratedStructure& ds, double eps) {
  require_valid(ds);
  const EdgeVector x = simplicial_coordinates(ds);
  for (int e = 0; e < ds.qt.arc_count(); ++e)
    if (x[e] < -1e-12) throw Error("precondition", "retract_to_hat needs nonnegative simplicial coordinates");
  if (!membership_tilde_C(ds.qt, x).member) throw Error("precondition", "retract_to_hat needs a point of the cell");
  DecoratedStructure out = ds;
  for (int i = 0; i < ds.qt.signature().r; ++i) {
    const int t = ds.qt.boundary_triangle(i);
    const int k = boundary_position(ds.qt, t, i);
    const Triangle& tri = ds.qt.triangles()[t];
    const double a = ds.lambda[tri.sides[mod3(k + 1)].edge], b = ds.lambda[tri.sides[mod3(k + 2)].edge];
    double& e = out.lambda[tri.sides[k].edge];
    e = std::min(e, (a + b) * (1.0 - eps));
  }
  return out;
}

std::optional<double> projection_gap(const DecoratedStructure& ds, int e) {
  require_valid(ds);
  const FaceSlot f0 = ds.qt.face_of({e, 0}), f1 = ds.qt.face_of({e, 1});
  if (!ds.qt.is_arc(e) || f0.kind != FaceKind::Triangle || f1.kind != FaceKind::Triangle)
    throw Error("invalid-side", "projection_gap needs an arc between two triangles");
  const LiftedTriangle l0 = root_lift(ds, f0.index, f0.pos);
  const LiftedTriangle l1 = lift_across(ds, l0, f0.pos);
  const auto z0 = equidistant_point(l0.horocycle(0), l0.horocycle(1), l0.horocycle(2));
  const auto z1 = equidistant_point(l1.horocycle(0), l1.horocycle(1), l1.horocycle(2));
  if (!z0 || !z1) return std::nullopt;
  const Horocycle h = l0.horocycle(f0.pos);
  return horocyclic_length(h, project_to_horocycle(z1->zeta, h), project_to_horocycle(z0->zeta, h));
}

}  // namespace dt

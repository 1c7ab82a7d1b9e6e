#include "dt/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "dt/cells.hpp"
#include "dt/error.hpp"

namespace dt {

namespace {

HPoint interior_of_t0(const BoundaryStrip& s) {
  const double x = s.k0().center.x;
  return {0.5 * x, x};
}

double reduce(double v, double period) {
  double r = std::fmod(v, period);
  if (r < 0) r += period;
  return r >= period ? 0.0 : r;
}

}  // namespace

BoundaryStrip develop_boundary_strip(const DecoratedStructure& ds, int i) {
  BoundaryStrip s;
  s.boundary = i;
  std::tie(s.t0, s.side) = lift_boundary_triangle(ds, i);
  const Horocycle h0 = s.h0(), h1 = s.h1(), k0 = s.k0();
  if (!h0.center.infinite || std::abs(h1.center.x) > 1e-12 || k0.center.infinite)
    throw Error("numerical-failure", "boundary triangle is not in its normal chart");
  s.gamma = strip_deck_map(ds, s.t0, s.side);
  std::tie(s.axis, s.length) = moebius_axis(s.gamma);
  s.c0 = {h0.center, h1.center};
  s.a0 = {h0.center, k0.center};
  s.b0 = {h1.center, k0.center};
  s.a1 = moebius_apply(s.gamma, s.a0);
  s.b_minus1 = moebius_apply(s.gamma.inverse(), s.b0);
  const IdealPoint v1 = moebius_apply(s.gamma, k0.center);
  s.parabolic_product =
      (parabolic_through(h1.center, k0.center, v1) * parabolic_through(k0.center, h0.center, h1.center)).normalized();
  // Height on c0 where the distances to h0 (height H) and h1 (diameter D) agree.
  const double r = std::sqrt(h0.size * h1.size);
  s.beta = {IdealPoint::at(-r), IdealPoint::at(r)};
  s.beta_on_c0 = {0.0, r};
  const auto foot = geodesic_intersection(s.beta, s.axis);
  if (!foot) throw Error("numerical-failure", "bisector of the boundary segment misses the boundary geodesic");
  s.beta_on_axis = *foot;
  const auto z = equidistant_point(h0, h1, k0);
  if (!z) throw Error("not-in-hat", "no equidistant point for the boundary triangle " + std::to_string(i));
  s.zeta = z->zeta;
  s.folded = s.zeta.x < 0;
  // Reflection in c0, which fixes h0 and h1 and does not depend on v0.
  s.zeta_folded = s.folded ? HPoint{-s.zeta.x, s.zeta.y} : s.zeta;
  return s;
}

bool same_side_as_t0(const BoundaryStrip& strip, const Geodesic& g, const HPoint& p) {
  return (geodesic_side(g, p) > 0) == (geodesic_side(g, interior_of_t0(strip)) > 0);
}

double axis_coordinate(const BoundaryStrip& strip, const HPoint& q) {
  auto raw = [&](const HPoint& p) {
    const Complex z = p.z();
    return std::log(std::abs(z - strip.axis.a.x)) - std::log(std::abs(z - strip.axis.b.x));
  };
  return raw(q) - raw(strip.beta_on_axis);
}

double strip_projection(const BoundaryStrip& strip, const HPoint& p, IdealPoint* center) {
  HPoint q = p;
  int shift = 0;
  const MoebiusMap inv = strip.gamma.inverse();
  for (int it = 0;; ++it) {
    if (it > 10000) throw Error("numerical-failure", "projection walk did not settle");
    if (!same_side_as_t0(strip, strip.a0, q)) {
      q = moebius_apply(strip.gamma, q);
      --shift;
    } else if (!same_side_as_t0(strip, strip.a1, q)) {
      q = moebius_apply(inv, q);
      ++shift;
    } else {
      break;
    }
  }
  const IdealPoint c = same_side_as_t0(strip, strip.b0, q) ? strip.k0().center : strip.h1().center;
  if (center) *center = c;
  const HPoint foot = central_project(q, c, strip.axis);
  return reduce(axis_coordinate(strip, foot) + shift * strip.length, strip.length);
}

double orthogonal_projection(const BoundaryStrip& strip, const HPoint& p) {
  // The cross ratio |z - att| / |z - rep| is constant along perpendiculars to the axis.
  return reduce(axis_coordinate(strip, p), strip.length);
}

std::vector<double> metric_fingerprint(const DecoratedStructure& ds, int count, int walk_length) {
  const DevelopedStructure dev = develop_holonomy(ds);
  std::vector<double> out;
  for (const auto& g : dev.boundary_holonomy) out.push_back(std::abs(g.trace()));
  std::sort(out.begin(), out.end());
  // Closed walks in the dual graph only depend on the cell structure, not on
  // labels or on the spanning tree, so their traces are chart independent.
  std::vector<double> traces;
  struct Step {
    LiftedTriangle lift;
    int entered;
    int depth;
  };
  const auto& qt = ds.qt;
  for (int t0 = 0; t0 < static_cast<int>(qt.triangles().size()); ++t0) {
    const LiftedTriangle& start = dev.lifts[t0];
    std::vector<Step> stack{{start, -1, 0}};
    while (!stack.empty()) {
      const Step cur = stack.back();
      stack.pop_back();
      if (cur.depth > 0 && cur.lift.triangle == t0) {
        const MoebiusMap m = spinor_map(start.corners[0], start.corners[1], cur.lift.corners[0], cur.lift.corners[1]);
        const double tr = std::abs(m.trace());
        if (tr > 2.0 + 1e-6) traces.push_back(tr);
      }
      if (cur.depth == walk_length) continue;
      for (int k = 0; k < 3; ++k) {
        if (k == cur.entered) continue;
        const SideRef side = qt.triangles()[cur.lift.triangle].sides[k];
        if (!qt.is_arc(side.edge)) continue;
        const FaceSlot f = qt.face_of(side.twin());
        if (f.kind == FaceKind::Monogon)
          stack.push_back({lift_through_monogon(ds, cur.lift, k), k, cur.depth + 1});
        else
          stack.push_back({lift_across(ds, cur.lift, k), f.pos, cur.depth + 1});
      }
    }
  }
  std::sort(traces.begin(), traces.end());
  std::vector<double> uniq;
  for (double t : traces)
    if (uniq.empty() || t - uniq.back() > 1e-6 * t) uniq.push_back(t);
  for (int k = 0; k < count && k < static_cast<int>(uniq.size()); ++k) out.push_back(uniq[k]);
  return out;
}

BoundaryMarking psi_boundary_points(const DecoratedStructure& ds) {
  const SurfaceSignature& sig = ds.qt.signature();
  if (sig.g == 0 && sig.r == 2 && sig.s == 0) throw Error("psi-undefined-annulus", "psi undefined for F_{0,2}^0");
  const CellDescriptor cell = delaunay_cell(ds);
  if (!in_hat(cell.ds)) throw Error("not-in-hat", "decorated structure is outside the hat");
  BoundaryMarking out;
  for (int i = 0; i < sig.r; ++i) {
    const BoundaryStrip strip = develop_boundary_strip(cell.ds, i);
    BoundaryPoints bp;
    bp.boundary = i;
    bp.length = strip.length;
    bp.xi = 0.0;
    bp.a = reduce(axis_coordinate(strip, *geodesic_intersection(strip.a0, strip.axis)), strip.length);
    bp.b = orthogonal_projection(strip, strip.zeta_folded);
    bp.delta = horocycle_distance(strip.zeta, strip.h0());
    bp.t = strip.length / (1.0 + std::exp(-bp.delta));
    bp.p = reduce(bp.xi + bp.t, strip.length);
    out.boundaries.push_back(bp);
  }
  out.fingerprint = metric_fingerprint(cell.ds);
  return out;
}

DecoratedStructure scale_decoration_at(const DecoratedStructure& ds, int i, double t) {
  require_valid(ds);
  if (!(t > 0.0) || !std::isfinite(t)) throw Error("nonpositive-scale", "decoration scale must be positive");
  if (i < 0 || i >= ds.qt.signature().r) throw Error("bad-index", "no boundary component " + std::to_string(i));
  DecoratedStructure out = ds;
  for (int e = 0; e < ds.qt.edge_count(); ++e) {
    const auto [a, b] = ds.qt.side_endpoints({e, 0});
    out.lambda[e] *= std::pow(t, (a == i) + (b == i));
  }
  return out;
}

}  // namespace dt

#pragma once

// Boundary strips and the marked points xi_i, p_i on the geodesic boundary.

#include <optional>
#include <vector>

#include "dt/coordinates.hpp"

namespace dt {

/// Everything lives in the chart where the lift t0 of sigma_i has u0 at
/// infinity, u1 at 0, v0 on the positive axis, and h0 at height 1.
struct BoundaryStrip {
  int boundary = 0;
  LiftedTriangle t0;
  int side = 0;
  /// Deck transformation with u0 -> u1; its axis G runs repelling to attracting.
  MoebiusMap gamma;
  MoebiusMap parabolic_product;
  Geodesic axis;
  double length = 0.0;
  Geodesic c0, a0, b0, a1, b_minus1;
  /// Perpendicular bisector of c0 with respect to h0, h1, oriented into t0.
  Geodesic beta;
  HPoint beta_on_c0;
  HPoint beta_on_axis;
  /// Equidistant point of h0, h1, k0 and its reflection in c0 into the closed
  /// half-plane of t0.
  HPoint zeta, zeta_folded;
  bool folded = false;

  Horocycle h0() const { return t0.horocycle(side); }
  Horocycle h1() const { return t0.horocycle(side + 1); }
  Horocycle k0() const { return t0.horocycle(side + 2); }
};

/// Throws "not-in-hat" when the equidistant point is missing.
BoundaryStrip develop_boundary_strip(const DecoratedStructure& ds, int i);

/// True when p lies on the same side of g as the interior of t0.
bool same_side_as_t0(const BoundaryStrip& strip, const Geodesic& g, const HPoint& p);

/// Oriented position of a point of the axis, in hyperbolic length from
/// beta_on_axis, increasing toward the attracting fixed point (not reduced).
double axis_coordinate(const BoundaryStrip& strip, const HPoint& q);

/// The projection pi onto the axis, as a position in [0, length): central
/// projection from v_j inside gamma^j(t0), from u_k in the region between
/// gamma^(k-1)(t0) and gamma^k(t0). `center` receives the projection center.
double strip_projection(const BoundaryStrip& strip, const HPoint& p, IdealPoint* center = nullptr);

/// Position in [0, length) of the foot of the perpendicular from p to the
/// axis. Unlike strip_projection it does not depend on the third vertex of t0.
double orthogonal_projection(const BoundaryStrip& strip, const HPoint& p);

struct BoundaryPoints {
  int boundary = 0;
  double length = 0.0;
  /// Positions on the boundary geodesic, in [0, length), from the foot of beta.
  double xi = 0.0;
  double p = 0.0;
  double t = 0.0;
  /// a0 meets the axis at a; b is the orthogonal projection of zeta'.
  double a = 0.0;
  double b = 0.0;
  /// Signed distance from zeta to h0.
  double delta = 0.0;
};

struct BoundaryMarking {
  std::vector<BoundaryPoints> boundaries;
  std::vector<double> fingerprint;
};

/// Sorted boundary traces followed by the smallest distinct traces (to 1e-6
/// relative) of closed non-backtracking walks in the dual graph, up to
/// walk_length steps. Charts with the same cell structure agree.
std::vector<double> metric_fingerprint(const DecoratedStructure& ds, int count = 5, int walk_length = 10);

/// Runs the flip algorithm first, so the result does not depend on the chart.
/// Throws "psi-undefined-annulus" on F_{0,2}^0 and "not-in-hat" when the
/// Delaunay chart fails the strict triangle inequality at a boundary.
BoundaryMarking psi_boundary_points(const DecoratedStructure& ds);

/// Multiplies each lambda length by t to the number of its ends at d_i.
DecoratedStructure scale_decoration_at(const DecoratedStructure& ds, int i, double t);

}  // namespace dt

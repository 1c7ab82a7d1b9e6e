#pragma once

// Upper half-plane kernel: horocycles, lambda lengths, Moebius maps,
// equidistant points and central projection.

#include <array>
#include <complex>
#include <optional>
#include <utility>

namespace dt {

using Complex = std::complex<double>;

/// Point of the real line or infinity.
struct IdealPoint {
  double x = 0.0;
  bool infinite = false;

  static IdealPoint at(double x) { return {x, false}; }
  static IdealPoint inf() { return {0.0, true}; }
};

struct HPoint {
  double x = 0.0;
  double y = 1.0;
  Complex z() const { return {x, y}; }
};

/// Horocycle in the upper half-plane. size is the Euclidean diameter for a
/// finite center and the height of the horizontal line for the center at infinity.
struct Horocycle {
  IdealPoint center;
  double size = 1.0;
};

struct Geodesic {
  IdealPoint a, b;
};

/// Spinor (a, b) with horocycle centered at a/b of diameter sqrt2/b^2, or at
/// infinity of height a^2/sqrt2 when b = 0. Lambda length is |ad - bc|.
using Spinor = std::array<double, 2>;
Spinor to_spinor(const Horocycle& h);
Horocycle from_spinor(const Spinor& s, double tol = 1e-14);

/// Light-cone vector with -<u,v> = lambda^2 for Minkowski form -x0y0 + x1y1 + x2y2.
std::array<double, 3> to_light_cone(const Horocycle& h);
double minkowski(const std::array<double, 3>& u, const std::array<double, 3>& v);

struct MoebiusMap {
  double a = 1, b = 0, c = 0, d = 1;

  static MoebiusMap identity() { return {}; }
  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
  MoebiusMap inverse() const { return {d, -b, -c, a}; }
  /// Divides by sqrt(det).
  MoebiusMap normalized() const;
  MoebiusMap operator*(const MoebiusMap& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

Complex moebius_apply(const MoebiusMap& m, Complex z);
HPoint moebius_apply(const MoebiusMap& m, const HPoint& p);
IdealPoint moebius_apply(const MoebiusMap& m, const IdealPoint& p);
Horocycle moebius_apply(const MoebiusMap& m, const Horocycle& h);
Geodesic moebius_apply(const MoebiusMap& m, const Geodesic& g);

/// Axis from repelling to attracting fixed point, and translation length.
std::pair<Geodesic, double> moebius_axis(const MoebiusMap& m, double tol = 1e-12);

/// Determinant-one map sending p to infinity (and infinity to a finite point
/// unless p is infinite, in which case the identity).
MoebiusMap send_to_infinity(const IdealPoint& p);
/// Unique determinant-one map with (0, 1, inf) -> (p, q, r) in orientation order.
MoebiusMap map_from_standard(const IdealPoint& p, const IdealPoint& q, const IdealPoint& r);

double lambda_length(const Horocycle& h1, const Horocycle& h2);
double h_length_corner(double a, double b, double e);

/// Signed distance from p to h: positive outside the horodisk.
double horocycle_distance(const HPoint& p, const Horocycle& h);
double hyperbolic_distance(const HPoint& p, const HPoint& q);

struct EquidistantPoint {
  HPoint zeta;
  double rho = 0.0;
};

/// rho for the triangle with lambda lengths l (l[j] opposite horocycle j), or
/// nullopt when a strict triangle inequality fails.
std::optional<double> equidistant_rho(const std::array<double, 3>& l);
std::optional<EquidistantPoint> equidistant_point(const Horocycle& h0, const Horocycle& h1, const Horocycle& h2);

/// (l_k^2 + l_l^2 - l_j^2) / (4 l_j l_k l_l).
double horocyclic_offset(int j, int k, int l, const std::array<double, 3>& lambda);

/// Horocycles h0 at infinity (height 1), h1 at 0 and h2 at a positive center
/// with lambda(h0,h1) = a, lambda(h0,h2) = b, lambda(h1,h2) = e.
std::array<Horocycle, 3> realize_triangle(double a, double b, double e);

/// Intersection of the geodesic from center through p with target.
HPoint central_project(const HPoint& p, const IdealPoint& center, const Geodesic& target);
/// Central projection of p from the center of h onto h.
HPoint project_to_horocycle(const HPoint& p, const Horocycle& h);
/// Signed hyperbolic length along h from u to v (both on h); positive in the
/// direction of increasing x once the center is sent to infinity.
double horocyclic_length(const Horocycle& h, const HPoint& u, const HPoint& v);

/// Crossing point of two geodesics, if they cross.
std::optional<HPoint> geodesic_intersection(const Geodesic& g, const Geodesic& h);

/// Positive when p lies to the left of g oriented from a to b, negative to the right.
double geodesic_side(const Geodesic& g, const HPoint& p);

}  // namespace dt

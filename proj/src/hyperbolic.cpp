#include "dt/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

#include "dt/error.hpp"

namespace dt {

namespace {

const double kSqrt2 = std::sqrt(2.0);

bool same_point(const IdealPoint& p, const IdealPoint& q) {
  if (p.infinite || q.infinite) return p.infinite && q.infinite;
  return std::abs(p.x - q.x) <= 1e-14 * std::max({1.0, std::abs(p.x), std::abs(q.x)});
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error("nonpositive-input", std::string(what) + " must be positive");
}

}  // namespace

Spinor to_spinor(const Horocycle& h) {
  require_positive(h.size, "horocycle size");
  if (h.center.infinite) return {std::sqrt(kSqrt2 * h.size), 0.0};
  const double b = std::sqrt(kSqrt2 / h.size);
  return {h.center.x * b, b};
}

Horocycle from_spinor(const Spinor& s, double tol) {
  const double scale = std::max(std::abs(s[0]), std::abs(s[1]));
  if (scale == 0.0) throw Error("degenerate-spinor", "zero spinor");
  if (std::abs(s[1]) <= tol * scale) return {IdealPoint::inf(), s[0] * s[0] / kSqrt2};
  return {IdealPoint::at(s[0] / s[1]), kSqrt2 / (s[1] * s[1])};
}

std::array<double, 3> to_light_cone(const Horocycle& h) {
  const Spinor s = to_spinor(h);
  // Symmetric matrix sqrt2 * s s^T = [[x0 + x1, x2], [x2, x0 - x1]].
  const double p = kSqrt2 * s[0] * s[0], q = kSqrt2 * s[1] * s[1];
  return {(p + q) / 2.0, (p - q) / 2.0, kSqrt2 * s[0] * s[1]};
}

double minkowski(const std::array<double, 3>& u, const std::array<double, 3>& v) {
  return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

MoebiusMap MoebiusMap::normalized() const {
  const double dt = det();
  if (!(dt > 0.0)) throw Error("degenerate-moebius", "Moebius map must have positive determinant");
  const double k = 1.0 / std::sqrt(dt);
  return {a * k, b * k, c * k, d * k};
}

Complex moebius_apply(const MoebiusMap& m, Complex z) { return (m.a * z + m.b) / (m.c * z + m.d); }

HPoint moebius_apply(const MoebiusMap& m, const HPoint& p) {
  const Complex w = moebius_apply(m, p.z());
  return {w.real(), w.imag()};
}

IdealPoint moebius_apply(const MoebiusMap& m, const IdealPoint& p) {
  if (p.infinite) return m.c == 0.0 ? IdealPoint::inf() : IdealPoint::at(m.a / m.c);
  const double den = m.c * p.x + m.d;
  if (den == 0.0) return IdealPoint::inf();
  return IdealPoint::at((m.a * p.x + m.b) / den);
}

Horocycle moebius_apply(const MoebiusMap& m, const Horocycle& h) {
  const MoebiusMap n = m.normalized();
  const Spinor s = to_spinor(h);
  return from_spinor({n.a * s[0] + n.b * s[1], n.c * s[0] + n.d * s[1]});
}

Geodesic moebius_apply(const MoebiusMap& m, const Geodesic& g) {
  return {moebius_apply(m, g.a), moebius_apply(m, g.b)};
}

std::pair<Geodesic, double> moebius_axis(const MoebiusMap& m, double tol) {
  const MoebiusMap n = m.normalized();
  const double tr = std::abs(n.trace());
  if (tr <= 2.0 + tol) throw Error("not-hyperbolic", "not hyperbolic");
  const double length = 2.0 * std::acosh(tr / 2.0);
  auto attracting = [&](const IdealPoint& z) {
    if (z.infinite) return std::abs(n.d) < 1.0;
    return std::abs(n.c * z.x + n.d) > 1.0;
  };
  IdealPoint p, q;
  if (std::abs(n.c) <= tol * std::max({std::abs(n.a), std::abs(n.b), std::abs(n.d), 1.0})) {
    p = IdealPoint::inf();
    q = IdealPoint::at(n.b / (n.d - n.a));
  } else {
    const double disc = std::sqrt(n.trace() * n.trace() - 4.0);
    p = IdealPoint::at((n.a - n.d + disc) / (2.0 * n.c));
    q = IdealPoint::at((n.a - n.d - disc) / (2.0 * n.c));
  }
  if (attracting(p)) std::swap(p, q);
  return {{p, q}, length};
}

MoebiusMap send_to_infinity(const IdealPoint& p) {
  if (p.infinite) return MoebiusMap::identity();
  return {0.0, -1.0, 1.0, -p.x};
}

MoebiusMap map_from_standard(const IdealPoint& p, const IdealPoint& q, const IdealPoint& r) {
  if (same_point(p, q) || same_point(q, r) || same_point(p, r))
    throw Error("degenerate-moebius", "map_from_standard needs distinct points");
  MoebiusMap m;
  if (r.infinite) {
    m = {q.x - p.x, p.x, 0.0, 1.0};
  } else if (p.infinite) {
    m = {r.x, q.x - r.x, 1.0, 0.0};
  } else if (q.infinite) {
    m = {r.x, -p.x, 1.0, -1.0};
  } else {
    const double t = (q.x - p.x) / (r.x - q.x);
    m = {r.x * t, p.x, t, 1.0};
  }
  if (!(m.det() > 0.0)) throw Error("orientation", "points are not in counterclockwise order");
  return m.normalized();
}

double lambda_length(const Horocycle& h1, const Horocycle& h2) {
  if (same_point(h1.center, h2.center))
    throw Error("concentric-horocycles", "lambda length undefined for concentric horocycles");
  const Spinor u = to_spinor(h1), v = to_spinor(h2);
  return std::abs(u[0] * v[1] - u[1] * v[0]);
}

double h_length_corner(double a, double b, double e) {
  require_positive(a, "lambda length");
  require_positive(b, "lambda length");
  require_positive(e, "lambda length");
  return e / (a * b);
}

double horocycle_distance(const HPoint& p, const Horocycle& h) {
  if (h.center.infinite) return std::log(h.size / p.y);
  const double dx = p.x - h.center.x;
  return std::log((dx * dx + p.y * p.y) / (h.size * p.y));
}

double hyperbolic_distance(const HPoint& p, const HPoint& q) {
  const double dx = p.x - q.x, dy = p.y - q.y;
  return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y));
}

std::optional<double> equidistant_rho(const std::array<double, 3>& l) {
  const double p0 = l[0] + l[1] + l[2];
  const double p1 = l[0] + l[1] - l[2];
  const double p2 = l[0] + l[2] - l[1];
  const double p3 = l[1] + l[2] - l[0];
  if (!(p1 > 0.0 && p2 > 0.0 && p3 > 0.0)) return std::nullopt;
  return std::sqrt(2.0 * l[0] * l[0] * l[1] * l[1] * l[2] * l[2] / (p0 * p1 * p2 * p3));
}

std::optional<EquidistantPoint> equidistant_point(const Horocycle& h0, const Horocycle& h1, const Horocycle& h2) {
  const std::array<double, 3> l{lambda_length(h1, h2), lambda_length(h0, h2), lambda_length(h0, h1)};
  const auto rho = equidistant_rho(l);
  if (!rho) return std::nullopt;
  const MoebiusMap t = send_to_infinity(h0.center);
  const Horocycle k0 = moebius_apply(t, h0), k1 = moebius_apply(t, h1), k2 = moebius_apply(t, h2);
  const double y = k0.size / *rho;
  const double p1 = k1.center.x, p2 = k2.center.x;
  const double x = (p1 * p1 - p2 * p2 - *rho * y * (k1.size - k2.size)) / (2.0 * (p1 - p2));
  return EquidistantPoint{moebius_apply(t.inverse(), HPoint{x, y}), *rho};
}

double horocyclic_offset(int j, int k, int l, const std::array<double, 3>& lambda) {
  if (j < 0 || k < 0 || l < 0 || j > 2 || k > 2 || l > 2 || j == k || k == l || j == l)
    throw Error("bad-index", "indices must be a permutation of 0, 1, 2");
  if (!equidistant_rho(lambda)) throw Error("triangle-inequality", "lambda lengths violate a strict triangle inequality");
  return (lambda[k] * lambda[k] + lambda[l] * lambda[l] - lambda[j] * lambda[j]) / (4.0 * lambda[j] * lambda[k] * lambda[l]);
}

std::array<Horocycle, 3> realize_triangle(double a, double b, double e) {
  require_positive(a, "lambda length");
  require_positive(b, "lambda length");
  require_positive(e, "lambda length");
  const double d1 = 2.0 / (a * a), d2 = 2.0 / (b * b);
  const double c = e * kSqrt2 / (a * b);
  return {Horocycle{IdealPoint::inf(), 1.0}, Horocycle{IdealPoint::at(0.0), d1}, Horocycle{IdealPoint::at(c), d2}};
}

HPoint central_project(const HPoint& p, const IdealPoint& center, const Geodesic& target) {
  const MoebiusMap t = send_to_infinity(center);
  const HPoint q = moebius_apply(t, p);
  const Geodesic g = moebius_apply(t, target);
  if (g.a.infinite || g.b.infinite) throw Error("projection-undefined", "projection undefined");
  const double lo = std::min(g.a.x, g.b.x), hi = std::max(g.a.x, g.b.x);
  if (!(q.x > lo && q.x < hi)) throw Error("projection-undefined", "projection undefined");
  return moebius_apply(t.inverse(), HPoint{q.x, std::sqrt((q.x - lo) * (hi - q.x))});
}

HPoint project_to_horocycle(const HPoint& p, const Horocycle& h) {
  const MoebiusMap t = send_to_infinity(h.center);
  const HPoint q = moebius_apply(t, p);
  return moebius_apply(t.inverse(), HPoint{q.x, moebius_apply(t, h).size});
}

double horocyclic_length(const Horocycle& h, const HPoint& u, const HPoint& v) {
  const MoebiusMap t = send_to_infinity(h.center);
  return (moebius_apply(t, v).x - moebius_apply(t, u).x) / moebius_apply(t, h).size;
}

std::optional<HPoint> geodesic_intersection(const Geodesic& g, const Geodesic& h) {
  const MoebiusMap t = send_to_infinity(g.a);
  const IdealPoint x = moebius_apply(t, g.b);
  const Geodesic k = moebius_apply(t, h);
  if (x.infinite || k.a.infinite || k.b.infinite) return std::nullopt;
  const double lo = std::min(k.a.x, k.b.x), hi = std::max(k.a.x, k.b.x);
  if (!(x.x > lo && x.x < hi)) return std::nullopt;
  return moebius_apply(t.inverse(), HPoint{x.x, std::sqrt((x.x - lo) * (hi - x.x))});
}

double geodesic_side(const Geodesic& g, const HPoint& p) {
  if (g.a.infinite) return p.x - g.b.x;
  if (g.b.infinite) return g.a.x - p.x;
  const Complex z = p.z();
  const Complex w = g.a.x < g.b.x ? (z - g.a.x) / (g.b.x - z) : (z - g.a.x) / (z - g.b.x);
  return -w.real();
}

}  // namespace dt

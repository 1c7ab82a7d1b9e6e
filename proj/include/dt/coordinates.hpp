#pragma once

// Decorated structures in lambda-length coordinates: simplicial coordinates,
// Ptolemy flips, development into the upper half-plane and holonomy.

#include <optional>
#include <string>
#include <vector>

#include "dt/hyperbolic.hpp"
#include "dt/surface.hpp"

namespace dt {

/// Values indexed by edge id (arcs first, then boundary segments).
using EdgeVector = std::vector<double>;

struct DecoratedStructure {
  QuasiTriangulation qt;
  EdgeVector lambda;
};

/// Throws dt::Error("invalid-lambda") unless lambda is positive and finite on every edge.
void require_valid(const DecoratedStructure& ds);
DecoratedStructure uniform_structure(const QuasiTriangulation& qt, double value = 1.0);

/// (a^2 + b^2 - e^2) / (abe) for the triangle holding side s, e the lambda
/// length of s and a, b the other two sides.
double side_term(const DecoratedStructure& ds, SideRef s);
/// Simplicial coordinates: x on arcs (zero on monogon arcs), y on boundary segments.
EdgeVector simplicial_coordinates(const DecoratedStructure& ds);
/// h-length at corner k of triangle t.
double corner_h_length(const DecoratedStructure& ds, int t, int k);

double ptolemy_length(double a, double b, double c, double d, double e);
/// Lambda lengths after flipping e, for any field type (exact rationals included).
/// The flipped triangulation is flip_combinatorial(qt, e).
template <class T>
std::vector<T> ptolemy_lengths(const QuasiTriangulation& qt, std::vector<T> lambda, int e) {
  const Quadrilateral q = quadrilateral_of(qt, e);
  lambda[e] = (lambda[q.x1.edge] * lambda[q.y1.edge] + lambda[q.x2.edge] * lambda[q.y2.edge]) / lambda[e];
  return lambda;
}
DecoratedStructure ptolemy_flip(const DecoratedStructure& ds, int e);

// ---------------------------------------------------------------------------
// Development

/// A triangle placed in the plane, with spinors at its three corners.
struct LiftedTriangle {
  int triangle = -1;
  std::array<Spinor, 3> corners{};
  Horocycle horocycle(int k) const { return from_spinor(corners[((k % 3) + 3) % 3]); }
};

struct HolonomyGenerator {
  /// Arc across which the generator is read off (non-tree dual edge).
  int edge = -1;
  MoebiusMap map;
};

struct DevelopedStructure {
  /// One lift per triangle, placed along a breadth-first spanning tree of the
  /// dual graph rooted at the triangle holding boundary segment 0.
  std::vector<LiftedTriangle> lifts;
  std::vector<int> parent;
  std::vector<int> parent_side;
  std::vector<HolonomyGenerator> generators;
  /// Deck transformation gamma_i of boundary i, sending the lift t0 of sigma_i
  /// to the next lift t1 met around u_1 (u0 -> u1, u1 -> u2, v0 -> v1).
  std::vector<MoebiusMap> boundary_holonomy;
  /// tau o sigma with sigma the parabolic at v0 taking u0 to u1 and tau the
  /// parabolic at u1 taking v0 to v1. Agrees with gamma_i only in special
  /// cases (all lambda lengths equal, for instance); kept for comparison.
  std::vector<MoebiusMap> parabolic_product;
  /// Parabolic holonomy of each puncture.
  std::vector<MoebiusMap> puncture_holonomy;
};

/// Lift of the triangle across side pos of L (which must be a triangle side).
LiftedTriangle lift_across(const DecoratedStructure& ds, const LiftedTriangle& l, int pos);
/// For a monogon arc at side pos of L: the next lift of the same triangle met
/// by turning around corner pos inside the monogon.
LiftedTriangle lift_through_monogon(const DecoratedStructure& ds, const LiftedTriangle& l, int pos);
/// Determinant-one map sending spinors (p, q) to (p2, q2) up to sign.
MoebiusMap spinor_map(const Spinor& p, const Spinor& q, const Spinor& p2, Spinor q2);

/// Walk from the lift t0 of sigma_i (boundary segment at side k, u0 = corner k,
/// u1 = corner k + 1, v0 = corner k + 2) around u1 to the next lift t1 of
/// sigma_i. The returned list starts with t0 and ends with t1.
std::vector<LiftedTriangle> fan_around_u1(const DecoratedStructure& ds, const LiftedTriangle& t0, int k);

/// Parabolic fixing `fixed` and sending p to q.
MoebiusMap parabolic_through(const IdealPoint& fixed, const IdealPoint& p, const IdealPoint& q);

/// Lift of sigma_i with its boundary segment running from u0 at infinity to
/// u1 at 0, and the side position of the boundary segment in the triangle.
std::pair<LiftedTriangle, int> lift_boundary_triangle(const DecoratedStructure& ds, int i);
/// Deck transformation of boundary i for a lift t0 of sigma_i (boundary at side k).
MoebiusMap strip_deck_map(const DecoratedStructure& ds, const LiftedTriangle& t0, int k);

DevelopedStructure develop_holonomy(const DecoratedStructure& ds);
double boundary_length(const DecoratedStructure& ds, int i);
/// Traces |tr gamma_i| for all boundaries.
std::vector<double> boundary_traces(const DecoratedStructure& ds);

// ---------------------------------------------------------------------------
// Cells

struct MembershipWitness {
  /// "cycle", "arc" or "negative".
  std::string kind;
  /// For a cycle: arcs interior to a non-polygonal complementary region of
  /// the positive support (monogon arcs always count as support). For an arc: the arcs crossed, in order.
  std::vector<int> edges;
  /// Boundary components joined by a vanishing arc.
  int from = -1, to = -1;
  double value = 0.0;
  std::string reason;
};

struct Membership {
  bool member = false;
  std::optional<MembershipWitness> witness;
};

/// Minimum of y_i + sum x + y_j over efficient dual paths from boundary i to
/// boundary j, with the crossed arcs; one entry per ordered pair i <= j.
struct ArcSum {
  int from = -1, to = -1;
  double value = 0.0;
  std::vector<int> edges;
};
std::vector<ArcSum> minimal_arc_sums(const QuasiTriangulation& qt, const EdgeVector& v);

Membership membership_tilde_C(const QuasiTriangulation& qt, const EdgeVector& v, double tol = 0.0);

bool strict_triangle(double a, double b, double c);
bool in_hat(const DecoratedStructure& ds);
DecoratedStructure retract_to_hat(const DecoratedStructure& ds, double eps = 1e-6);

/// Signed horocyclic gap, at the horocycle of the side-0 start vertex of e,
/// between the central projections of the equidistant points of the two
/// triangles adjacent to e, oriented to carry the sign of the simplicial
/// coordinate (it equals E / sqrt2 in half-plane length).
std::optional<double> projection_gap(const DecoratedStructure& ds, int e);

}  // namespace dt

#pragma once

// Weighted arc families: the quasi-filling subspace, band twisting at a
// boundary, the projection from simplicial coordinates, the map to moduli
// and enumeration of the arc complex.

#include <vector>

#include "dt/coordinates.hpp"

namespace dt {

/// Arcs of qt with positive weight form the family; weights on other edges are zero.
struct WeightedArcFamily {
  QuasiTriangulation qt;
  EdgeVector weights;
  bool projective = false;

  std::vector<bool> mask() const;
  int size() const;
};

/// Throws "invalid-weights" unless weights are finite, nonnegative, zero on
/// boundary segments and positive somewhere; normalizes to sum 1 when projective.
WeightedArcFamily make_weighted_family(const QuasiTriangulation& qt, EdgeVector weights, bool projective = false);

bool quasi_fills(const QuasiTriangulation& qt, const std::vector<bool>& mask);
bool quasi_fills(const WeightedArcFamily& waf);

/// Total width of band ends at distinguished point i.
double width_at(const WeightedArcFamily& waf, int i);

/// Rotates the band ends at d_i by t times their total width, splitting the
/// band where the cut lands. Non-family arcs of the underlying
/// quasi-triangulation are flipped as needed. Throws "not-quasi-filling",
/// "bad-parameter" and "twist-unsupported" (an unflippable arc blocks the fan).
WeightedArcFamily circle_action_twist(const WeightedArcFamily& waf, int i, double t);

/// Canonical code of the family followed by its weights in canonical order.
struct FamilyKey {
  std::vector<int> code;
  std::vector<double> weights;
};
FamilyKey family_key(const WeightedArcFamily& waf);
/// Same family up to homeomorphism fixing labels, weights within tol.
bool equivalent(const WeightedArcFamily& a, const WeightedArcFamily& b, double tol = 1e-9);

/// Positive support of x with its values. Throws "not-in-cell" unless v lies in the cell.
WeightedArcFamily q_projection(const QuasiTriangulation& qt, const EdgeVector& v);

struct ModuliPoint {
  /// Boundary lengths normalized to sum 1.
  std::vector<double> lengths;
  std::vector<double> fingerprint;
  DecoratedStructure structure;
  double residual = 0.0;
};

/// Solves for the structure whose arc coordinates are the projectivized
/// weights, with zero on the other arcs and on the boundary. Monogon arcs carry
/// coordinate zero on every structure, so their weights are ignored.
ModuliPoint arc_to_moduli(const WeightedArcFamily& waf);

struct ArcComplexCatalog {
  SurfaceSignature signature;
  int triangulations = 0;
  /// Orbits of families by dimension (arc count minus one), all and quasi-filling.
  std::vector<int> simplices;
  std::vector<int> filling_simplices;
  /// Canonical code of one representative per orbit, by dimension.
  std::vector<std::vector<std::vector<int>>> representatives;
  int top_dimension = -1;
  bool complete = false;
};

/// Orbits of arc families, as subfamilies of the nodes of the flip graph.
/// Throws "catalog-too-large" beyond 12 arcs; a node budget hit leaves complete false.
ArcComplexCatalog enumerate_arc_complex(const SurfaceSignature& sig, int max_triangulations);

}  // namespace dt

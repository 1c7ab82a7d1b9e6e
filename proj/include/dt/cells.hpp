#pragma once

// Convex-hull cells realized as a flip algorithm, and the inverse map from
// simplicial coordinates back to lambda lengths.

#include <string>
#include <utility>
#include <vector>

#include "dt/coordinates.hpp"

namespace dt {

enum class PivotRule { MostNegative, FirstNegative };

struct FlipStep {
  int edge = -1;
  double new_lambda = 0.0;
};

struct CellDescriptor {
  DecoratedStructure ds;
  /// Arcs with positive coordinate, plus the monogon arcs.
  std::vector<bool> alpha;
  /// Simplicial coordinates of ds, with |x| <= tol snapped to 0.
  EdgeVector coordinates;
  std::vector<FlipStep> trace;
};

int default_flip_budget(const QuasiTriangulation& qt);

/// Flips arcs with negative simplicial coordinate until none is left.
/// Throws dt::Error("budget-exhausted") when max_flips is reached.
CellDescriptor delaunay_cell(const DecoratedStructure& ds, int max_flips = -1,
                             PivotRule rule = PivotRule::MostNegative, double tol = 1e-12);

struct SolveOptions {
  /// Lambda lengths of the monogon arcs, whose coordinate is identically zero.
  /// Empty means 1 for every monogon arc.
  std::vector<double> monogon_lambda;
  /// When false, skip the cell membership gate and run Newton as a local
  /// inverse (used for round trips from arbitrary lambda lengths).
  bool require_membership = true;
  int max_iterations = 200;
  double residual_tol = 1e-11;
};

struct SolveReport {
  DecoratedStructure ds;
  int iterations = 0;
  double residual = 0.0;
};

/// Newton on log lambda lengths. Throws dt::Error("not-in-cell") with a witness
/// description when v fails membership_tilde_C, dt::Error("no-convergence")
/// with the final residual otherwise.
SolveReport solve_inverse_coordinates(const QuasiTriangulation& qt, const EdgeVector& v,
                                      const SolveOptions& options = {});

}  // namespace dt

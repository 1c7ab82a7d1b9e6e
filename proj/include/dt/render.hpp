#pragma once

// SVG 1.1 figures: triangulations, boundary strips and flip graphs.

#include <cstdint>
#include <string>

#include "dt/boundary.hpp"

namespace dt {

struct RenderOptions {
  int width = 640;
  bool labels = true;
  /// Rotates the flip graph layout; output is a function of the object and the seed.
  std::uint64_t seed = 0;
};

/// Triangles in a grid with labeled sides (arcs "e<id>", boundary segments
/// "d<i>") and monogons as punctured discs.
std::string render_triangulation_svg(const QuasiTriangulation& qt, const RenderOptions& opt = {});
/// Disk model: lifts gamma^j(t0) for |j| <= 3, the axis, beta, h0, h1, k0, zeta and zeta'.
std::string render_strip_svg(const BoundaryStrip& strip, const RenderOptions& opt = {});
/// Nodes on a circle, one per isomorphism class; self-loops as small circles.
std::string render_flip_graph_svg(const FlipGraph& fg, const RenderOptions& opt = {});

}  // namespace dt

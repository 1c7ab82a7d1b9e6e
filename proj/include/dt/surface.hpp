#pragma once

// Combinatorial bordered surfaces F_{g,r}^s: quasi-triangulations stored as
// edge-side incidence, combinatorial flips, fatgraph duals, complementary
// regions of arc families and canonical codes for isomorphism tests.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dt {

struct SurfaceSignature {
  int g = 0;
  int r = 1;
  int s = 0;

  /// 6g - 7 + 4r + 2s >= 0 and r >= 1.
  bool admissible() const { return r >= 1 && g >= 0 && s >= 0 && 6 * g - 7 + 4 * r + 2 * s >= 0; }
  int arc_count() const { return 6 * g - 6 + 4 * r + 2 * s; }
  int triangle_count() const { return 4 * g - 4 + 3 * r + s; }
  int euler_characteristic() const { return 2 - 2 * g - r - s; }
  /// Top dimension of the arc complex.
  int arc_complex_dimension() const { return 6 * g - 7 + 4 * r + 2 * s; }

  auto operator<=>(const SurfaceSignature&) const = default;
};

std::string to_string(const SurfaceSignature& sig);

/// Throws dt::Error("inadmissible-surface") unless sig.admissible().
void require_admissible(const SurfaceSignature& sig);

enum class EdgeKind : std::uint8_t { Arc, Boundary };

/// One of the two sides of an edge. A boundary segment only has side 0.
struct SideRef {
  int edge = 0;
  int side = 0;

  SideRef twin() const { return {edge, 1 - side}; }
  int dart() const { return 2 * edge + side; }
  static SideRef from_dart(int d) { return {d / 2, d % 2}; }

  auto operator<=>(const SideRef&) const = default;
};

struct Edge {
  EdgeKind kind = EdgeKind::Arc;
  /// Boundary component index for boundary segments, -1 for arcs.
  int component = -1;
};

/// Sides in counterclockwise order; side k runs from corner k to corner k+1.
struct Triangle {
  std::array<SideRef, 3> sides;
};

/// Once-punctured monogon bounded by a single arc side.
struct Monogon {
  SideRef side;
  int puncture = 0;
};

enum class FaceKind : std::uint8_t { None, Triangle, Monogon };

struct FaceSlot {
  FaceKind kind = FaceKind::None;
  int index = -1;
  int pos = -1;
};

/// Ideal quasi-triangulation. Arcs carry ids [0, arc_count), boundary segments
/// ids [arc_count, arc_count + r) in component order.
class QuasiTriangulation {
 public:
  QuasiTriangulation() = default;
  QuasiTriangulation(SurfaceSignature sig, std::vector<Edge> edges, std::vector<Triangle> triangles,
                     std::vector<Monogon> monogons);

  const SurfaceSignature& signature() const { return sig_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Monogon>& monogons() const { return monogons_; }

  int edge_count() const { return static_cast<int>(edges_.size()); }
  int arc_count() const;
  bool is_arc(int e) const { return edges_.at(e).kind == EdgeKind::Arc; }
  bool is_boundary(int e) const { return edges_.at(e).kind == EdgeKind::Boundary; }
  /// Edge id of the boundary segment of component i.
  int boundary_edge(int component) const;
  bool is_monogon_edge(int e) const;
  /// True when both sides of e lie on the same triangle.
  bool is_self_glued(int e) const;

  /// Face holding a side; kind None if the side is unused (outer side of a
  /// boundary segment) or the structure is malformed.
  FaceSlot face_of(SideRef s) const;
  /// Vertex (distinguished boundary point index) at a triangle corner, or -1.
  int corner_vertex(int triangle, int corner) const { return corner_vertex_.at(3 * triangle + corner); }
  int monogon_vertex(int m) const { return monogon_vertex_.at(m); }
  /// Start and end vertices of a side, in the direction its face traverses it.
  std::pair<int, int> side_endpoints(SideRef s) const;
  /// Triangle containing the boundary segment of component i.
  int boundary_triangle(int component) const;

  /// Equality of the cell structure, ignoring triangle order, triangle
  /// rotation and arc orientation.
  bool same_cells(const QuasiTriangulation& other) const;

 private:
  void build_index();

  SurfaceSignature sig_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::vector<Monogon> monogons_;
  std::vector<FaceSlot> side_face_;
  std::vector<int> corner_vertex_;
  std::vector<int> monogon_vertex_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

QuasiTriangulation build_seed_triangulation(const SurfaceSignature& sig);
ValidationReport validate_quasi_triangulation(const QuasiTriangulation& qt);

/// Reason an arc cannot be flipped, or nullopt when it can.
std::optional<std::string> flip_obstruction(const QuasiTriangulation& qt, int e);
bool is_flippable(const QuasiTriangulation& qt, int e);

/// The quadrilateral around a flippable arc: the arc's side-0 triangle has
/// sides (e, x1, x2) and the side-1 triangle (e, y1, y2), counterclockwise.
/// x1/y1 and x2/y2 are opposite sides.
struct Quadrilateral {
  int t1 = -1, t2 = -1;
  SideRef x1, x2, y1, y2;
};
Quadrilateral quadrilateral_of(const QuasiTriangulation& qt, int e);

/// Replaces arc e by the other diagonal of its quadrilateral, keeping the id.
QuasiTriangulation flip_combinatorial(const QuasiTriangulation& qt, int e);
/// For a monogon arc e: the triangle outside it and the monogon form a
/// punctured bigon; moves the loop of e to the other vertex of the bigon.
QuasiTriangulation move_monogon_base(const QuasiTriangulation& qt, int e);

// ---------------------------------------------------------------------------
// Fatgraph dual

struct Fatgraph {
  /// Half-edges (darts = 2*edge + side) around each vertex, counterclockwise.
  /// Vertices [0, T) are triangles, [T, T+s) monogons.
  std::vector<std::vector<int>> vertices;
  /// Darts of each edge; boundary segments are legs with a single dart.
  std::vector<std::vector<int>> edges;
  /// Boundary cycles as edge-id sequences (with multiplicity): first one cycle
  /// per distinguished point d_i, then one per puncture.
  std::vector<std::vector<int>> boundary_cycles;
  /// Distinguished point or puncture label for each cycle.
  std::vector<int> cycle_labels;
  int distinguished_cycle_count = 0;
};

Fatgraph dual_fatgraph(const QuasiTriangulation& qt);

struct BoundaryLengths {
  std::vector<double> lengths;
  bool positive = false;
};
BoundaryLengths fatgraph_boundary_lengths(const Fatgraph& graph, const std::vector<double>& weights);

// ---------------------------------------------------------------------------
// Arc families as sub-collections of a quasi-triangulation

/// Complementary region of an arc family (arcs selected by a mask over edges).
struct Region {
  std::vector<FaceSlot> faces;
  int genus = 0;
  std::vector<int> punctures;
  /// Boundary cycles as dart sequences of family arcs and boundary segments.
  std::vector<std::vector<int>> cycles;
  /// Arcs of the quasi-triangulation interior to the region.
  std::vector<int> interior_arcs;
  bool is_polygon() const { return genus == 0 && cycles.size() == 1 && punctures.size() <= 1; }
};

struct RegionDecomposition {
  std::vector<Region> regions;
  /// Region of each dart on the family (or -1 when the dart is not on it).
  std::vector<int> dart_region;
};

/// mask[e] selects arc e into the family; boundary segments are always kept.
RegionDecomposition complementary_regions(const QuasiTriangulation& qt, const std::vector<bool>& mask);
bool family_quasi_fills(const QuasiTriangulation& qt, const std::vector<bool>& mask);

/// Canonical code of a family up to orientation-preserving homeomorphism that
/// fixes boundary components and punctures by label. dart_order receives the
/// family darts in canonical order.
std::vector<int> family_code(const QuasiTriangulation& qt, const std::vector<bool>& mask,
                             std::vector<int>* dart_order = nullptr);
/// Canonical code of the whole quasi-triangulation.
std::vector<int> canonical_code(const QuasiTriangulation& qt);

// ---------------------------------------------------------------------------
// Flip graph

struct FlipGraph {
  SurfaceSignature signature;
  std::vector<QuasiTriangulation> nodes;
  std::vector<std::vector<int>> codes;
  /// Distinct unordered node pairs (self-loops allowed) joined by a flip or
  /// by moving a monogon loop (move_monogon_base).
  std::vector<std::pair<int, int>> edges;
  bool truncated = false;
};

FlipGraph enumerate_flip_graph(const SurfaceSignature& sig, int max_nodes);

}  // namespace dt

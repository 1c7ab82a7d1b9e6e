#include "dt/surface.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "dt/error.hpp"

namespace dt {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

std::string to_string(const SurfaceSignature& sig) {
  return "F_{" + std::to_string(sig.g) + "," + std::to_string(sig.r) + "}^" + std::to_string(sig.s);
}

void require_admissible(const SurfaceSignature& sig) {
  if (!sig.admissible()) {
    throw Error("inadmissible-surface", "surface excluded by 6g-7+4r+2s >= 0 or r = 0: " + to_string(sig));
  }
}

QuasiTriangulation::QuasiTriangulation(SurfaceSignature sig, std::vector<Edge> edges,
                                       std::vector<Triangle> triangles, std::vector<Monogon> monogons)
    : sig_(sig), edges_(std::move(edges)), triangles_(std::move(triangles)), monogons_(std::move(monogons)) {
  build_index();
}

void QuasiTriangulation::build_index() {
  const int ne = edge_count();
  side_face_.assign(2 * ne, FaceSlot{});
  auto place = [&](SideRef s, FaceSlot slot) {
    if (s.edge < 0 || s.edge >= ne || s.side < 0 || s.side > 1) return;
    auto& cell = side_face_[s.dart()];
    // A side claimed twice is left pointing at its first face; validation reports it.
    if (cell.kind == FaceKind::None) cell = slot;
  };
  for (int t = 0; t < static_cast<int>(triangles_.size()); ++t) {
    for (int k = 0; k < 3; ++k) place(triangles_[t].sides[k], {FaceKind::Triangle, t, k});
  }
  for (int m = 0; m < static_cast<int>(monogons_.size()); ++m) place(monogons_[m].side, {FaceKind::Monogon, m, 0});

  // Corners: 3 per triangle, then 1 per monogon. Glue across shared edges.
  const int nt = static_cast<int>(triangles_.size());
  const int nc = 3 * nt + static_cast<int>(monogons_.size());
  UnionFind uf(nc);
  auto corner = [&](const FaceSlot& f, int k) {
    return f.kind == FaceKind::Triangle ? 3 * f.index + ((k % 3) + 3) % 3 : 3 * nt + f.index;
  };
  std::vector<int> label(nc, -1);
  for (int e = 0; e < ne; ++e) {
    const FaceSlot a = side_face_[2 * e];
    if (a.kind == FaceKind::None) continue;
    if (edges_[e].kind == EdgeKind::Boundary) {
      const int c0 = corner(a, a.pos), c1 = corner(a, a.pos + 1);
      uf.unite(c0, c1);
      label[c0] = edges_[e].component;
      continue;
    }
    const FaceSlot b = side_face_[2 * e + 1];
    if (b.kind == FaceKind::None) continue;
    uf.unite(corner(a, a.pos), corner(b, b.pos + 1));
    uf.unite(corner(a, a.pos + 1), corner(b, b.pos));
  }
  std::vector<int> root_label(nc, -1);
  for (int c = 0; c < nc; ++c) {
    if (label[c] >= 0) root_label[uf.find(c)] = label[c];
  }
  corner_vertex_.assign(3 * nt, -1);
  for (int c = 0; c < 3 * nt; ++c) corner_vertex_[c] = root_label[uf.find(c)];
  monogon_vertex_.assign(monogons_.size(), -1);
  for (int m = 0; m < static_cast<int>(monogons_.size()); ++m) monogon_vertex_[m] = root_label[uf.find(3 * nt + m)];
}

int QuasiTriangulation::arc_count() const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [](const Edge& e) { return e.kind == EdgeKind::Arc; }));
}

int QuasiTriangulation::boundary_edge(int component) const {
  for (int e = 0; e < edge_count(); ++e) {
    if (edges_[e].kind == EdgeKind::Boundary && edges_[e].component == component) return e;
  }
  throw Error("bad-index", "no boundary segment for component " + std::to_string(component));
}

bool QuasiTriangulation::is_monogon_edge(int e) const {
  if (!is_arc(e)) return false;
  return side_face_.at(2 * e).kind == FaceKind::Monogon || side_face_.at(2 * e + 1).kind == FaceKind::Monogon;
}

bool QuasiTriangulation::is_self_glued(int e) const {
  if (!is_arc(e)) return false;
  const FaceSlot a = side_face_.at(2 * e), b = side_face_.at(2 * e + 1);
  return a.kind == FaceKind::Triangle && b.kind == FaceKind::Triangle && a.index == b.index;
}

FaceSlot QuasiTriangulation::face_of(SideRef s) const {
  if (s.edge < 0 || s.edge >= edge_count() || s.side < 0 || s.side > 1) return {};
  return side_face_[s.dart()];
}

std::pair<int, int> QuasiTriangulation::side_endpoints(SideRef s) const {
  const FaceSlot f = face_of(s);
  if (f.kind == FaceKind::Triangle) {
    return {corner_vertex(f.index, f.pos), corner_vertex(f.index, (f.pos + 1) % 3)};
  }
  if (f.kind == FaceKind::Monogon) return {monogon_vertex_[f.index], monogon_vertex_[f.index]};
  return {-1, -1};
}

int QuasiTriangulation::boundary_triangle(int component) const {
  const FaceSlot f = face_of({boundary_edge(component), 0});
  if (f.kind != FaceKind::Triangle) throw Error("invalid-triangulation", "boundary segment not on a triangle");
  return f.index;
}

bool QuasiTriangulation::same_cells(const QuasiTriangulation& other) const {
  if (sig_ != other.sig_ || edge_count() != other.edge_count()) return false;
  for (int e = 0; e < edge_count(); ++e) {
    if (edges_[e].kind != other.edges_[e].kind || edges_[e].component != other.edges_[e].component) return false;
  }
  auto key = [](const QuasiTriangulation& q) {
    std::vector<std::array<int, 3>> tris;
    for (const auto& t : q.triangles_) {
      std::array<int, 3> ids{t.sides[0].edge, t.sides[1].edge, t.sides[2].edge};
      std::array<int, 3> best = ids;
      for (int k = 1; k < 3; ++k) {
        std::array<int, 3> rot{ids[k], ids[(k + 1) % 3], ids[(k + 2) % 3]};
        best = std::min(best, rot);
      }
      tris.push_back(best);
    }
    std::sort(tris.begin(), tris.end());
    std::vector<std::pair<int, int>> mons;
    for (const auto& m : q.monogons_) mons.emplace_back(m.side.edge, m.puncture);
    std::sort(mons.begin(), mons.end());
    return std::make_pair(tris, mons);
  };
  return key(*this) == key(other);
}

// ---------------------------------------------------------------------------

QuasiTriangulation build_seed_triangulation(const SurfaceSignature& sig) {
  require_admissible(sig);
  const int n_arcs = sig.arc_count();
  std::vector<Edge> edges;
  auto new_arc = [&] {
    edges.push_back({EdgeKind::Arc, -1});
    return static_cast<int>(edges.size()) - 1;
  };
  const auto boundary_id = [&](int i) { return n_arcs + i; };

  // Polygon sides, counterclockwise: a1 b1 a1' b1' ... m_1 .. m_s  d_0  (c_i d_i c_i')_{i>=1}.
  std::vector<SideRef> poly;
  std::vector<Monogon> monogons;
  for (int j = 0; j < sig.g; ++j) {
    const int a = new_arc(), b = new_arc();
    poly.insert(poly.end(), {{a, 0}, {b, 0}, {a, 1}, {b, 1}});
  }
  for (int p = 0; p < sig.s; ++p) {
    const int m = new_arc();
    poly.push_back({m, 0});
    monogons.push_back({{m, 1}, p});
  }
  poly.push_back({boundary_id(0), 0});
  for (int i = 1; i < sig.r; ++i) {
    const int c = new_arc();
    poly.insert(poly.end(), {{c, 0}, {boundary_id(i), 0}, {c, 1}});
  }

  // Fan triangulation from polygon vertex 0; diagonal to vertex k runs 0 -> k.
  const int n = static_cast<int>(poly.size());
  std::vector<int> diag(n, -1);
  for (int k = 2; k <= n - 2; ++k) diag[k] = new_arc();
  std::vector<Triangle> triangles;
  for (int k = 1; k <= n - 2; ++k) {
    const SideRef first = (k == 1) ? poly[0] : SideRef{diag[k], 0};
    const SideRef last = (k + 1 == n - 1) ? poly[n - 1] : SideRef{diag[k + 1], 1};
    triangles.push_back({{first, poly[k], last}});
  }
  for (int i = 0; i < sig.r; ++i) edges.push_back({EdgeKind::Boundary, i});
  return QuasiTriangulation(sig, std::move(edges), std::move(triangles), std::move(monogons));
}

ValidationReport validate_quasi_triangulation(const QuasiTriangulation& qt) {
  ValidationReport rep;
  auto fail = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };
  const SurfaceSignature& sig = qt.signature();
  if (!sig.admissible()) fail("signature: inadmissible " + to_string(sig));
  const int ne = qt.edge_count();

  // Side usage counts.
  std::vector<int> uses(2 * ne, 0);
  bool refs_ok = true;
  auto use = [&](SideRef s) {
    if (s.edge < 0 || s.edge >= ne || s.side < 0 || s.side > 1) {
      refs_ok = false;
      return;
    }
    ++uses[s.dart()];
  };
  for (const auto& t : qt.triangles()) {
    for (const auto& s : t.sides) use(s);
  }
  for (const auto& m : qt.monogons()) use(m.side);
  if (!refs_ok) fail("side reference: out of range");

  int arcs = 0;
  std::vector<int> boundary_seen(std::max(sig.r, 0), 0);
  for (int e = 0; e < ne; ++e) {
    const Edge& ed = qt.edges()[e];
    const int total = uses[2 * e] + uses[2 * e + 1];
    if (ed.kind == EdgeKind::Arc) {
      ++arcs;
      if (total != 2 || uses[2 * e] != 1 || uses[2 * e + 1] != 1) {
        fail("side count: arc " + std::to_string(e) + " has " + std::to_string(total) + " sides in use");
      }
    } else {
      if (total != 1 || uses[2 * e] != 1) {
        fail("side count: boundary segment " + std::to_string(e) + " must use exactly side 0");
      }
      if (ed.component < 0 || ed.component >= sig.r) {
        fail("boundary component: edge " + std::to_string(e) + " has bad component");
      } else {
        ++boundary_seen[ed.component];
      }
    }
  }
  for (int i = 0; i < sig.r; ++i) {
    if (boundary_seen[i] != 1) fail("boundary component: " + std::to_string(i) + " needs exactly one segment");
  }
  if (arcs != sig.arc_count()) {
    fail("arc count: " + std::to_string(arcs) + " != " + std::to_string(sig.arc_count()));
  }
  if (static_cast<int>(qt.triangles().size()) != sig.triangle_count()) {
    fail("triangle count: " + std::to_string(qt.triangles().size()) + " != " + std::to_string(sig.triangle_count()));
  }
  if (static_cast<int>(qt.monogons().size()) != sig.s) fail("monogon count");
  std::set<int> punct;
  for (const auto& m : qt.monogons()) {
    if (m.puncture < 0 || m.puncture >= sig.s) fail("monogon puncture label out of range");
    punct.insert(m.puncture);
    if (m.side.edge >= 0 && m.side.edge < ne && qt.is_boundary(m.side.edge)) fail("monogon bounded by boundary segment");
  }
  if (static_cast<int>(punct.size()) != static_cast<int>(qt.monogons().size())) fail("monogon puncture labels repeat");
  if (!rep.ok()) return rep;

  // Vertices: every corner must be a distinguished point; there are exactly r.
  for (int t = 0; t < static_cast<int>(qt.triangles().size()); ++t) {
    for (int k = 0; k < 3; ++k) {
      if (qt.corner_vertex(t, k) < 0) {
        fail("vertex: triangle " + std::to_string(t) + " corner " + std::to_string(k) + " is not a boundary point");
      }
    }
  }
  const int v = sig.r;
  const int euler = v - ne + static_cast<int>(qt.triangles().size());
  if (euler != sig.euler_characteristic()) fail("euler characteristic");
  for (int i = 0; i < sig.r; ++i) {
    const auto [a, b] = qt.side_endpoints({qt.boundary_edge(i), 0});
    if (a != i || b != i) fail("boundary segment " + std::to_string(i) + " is not a loop at its own point");
  }
  // Connectedness of the face adjacency.
  const int nf = static_cast<int>(qt.triangles().size() + qt.monogons().size());
  UnionFind uf(std::max(nf, 1));
  auto fid = [&](FaceSlot f) {
    return f.kind == FaceKind::Triangle ? f.index : static_cast<int>(qt.triangles().size()) + f.index;
  };
  for (int e = 0; e < ne; ++e) {
    if (!qt.is_arc(e)) continue;
    uf.unite(fid(qt.face_of({e, 0})), fid(qt.face_of({e, 1})));
  }
  for (int f = 1; f < nf; ++f) {
    if (uf.find(f) != uf.find(0)) {
      fail("connectivity: faces do not form a connected surface");
      break;
    }
  }
  return rep;
}

}  // namespace dt

namespace dt {

std::optional<std::string> flip_obstruction(const QuasiTriangulation& qt, int e) {
  if (e < 0 || e >= qt.edge_count()) return "unknown edge " + std::to_string(e);
  if (qt.is_boundary(e)) return "boundary segment not flippable";
  if (qt.is_monogon_edge(e)) return "monogon edge not flippable";
  if (qt.is_self_glued(e)) return "unflippable configuration";
  const FaceSlot a = qt.face_of({e, 0}), b = qt.face_of({e, 1});
  if (a.kind != FaceKind::Triangle || b.kind != FaceKind::Triangle) return "unflippable configuration";
  return std::nullopt;
}

bool is_flippable(const QuasiTriangulation& qt, int e) { return !flip_obstruction(qt, e).has_value(); }

Quadrilateral quadrilateral_of(const QuasiTriangulation& qt, int e) {
  if (auto why = flip_obstruction(qt, e)) {
    const std::string code = e < 0 || e >= qt.edge_count() ? "bad-index"
                             : qt.is_boundary(e)            ? "boundary-unflippable"
                             : qt.is_monogon_edge(e)        ? "monogon-unflippable"
                                                            : "unflippable";
    throw Error(code, *why);
  }
  const FaceSlot a = qt.face_of({e, 0}), b = qt.face_of({e, 1});
  const auto& ta = qt.triangles()[a.index].sides;
  const auto& tb = qt.triangles()[b.index].sides;
  Quadrilateral q;
  q.t1 = a.index;
  q.t2 = b.index;
  q.x1 = ta[(a.pos + 1) % 3];
  q.x2 = ta[(a.pos + 2) % 3];
  q.y1 = tb[(b.pos + 1) % 3];
  q.y2 = tb[(b.pos + 2) % 3];
  return q;
}

QuasiTriangulation flip_combinatorial(const QuasiTriangulation& qt, int e) {
  const Quadrilateral q = quadrilateral_of(qt, e);
  // Quadrilateral corners, counterclockwise: Q -x1-> R -x2-> P -y1-> S -y2-> Q.
  // The new diagonal runs S -> R on side 0 and R -> S on side 1.
  std::vector<Triangle> tris = qt.triangles();
  tris[q.t1] = Triangle{{SideRef{e, 0}, q.x2, q.y1}};
  tris[q.t2] = Triangle{{SideRef{e, 1}, q.y2, q.x1}};
  return QuasiTriangulation(qt.signature(), qt.edges(), std::move(tris), qt.monogons());
}

QuasiTriangulation move_monogon_base(const QuasiTriangulation& qt, int e) {
  if (e < 0 || e >= qt.edge_count()) throw Error("bad-index", "unknown edge " + std::to_string(e));
  if (!qt.is_monogon_edge(e)) throw Error("not-a-monogon", "edge " + std::to_string(e) + " does not bound a monogon");
  for (int side = 0; side < 2; ++side) {
    const FaceSlot f = qt.face_of({e, side});
    if (f.kind != FaceKind::Triangle) continue;
    const auto& old = qt.triangles()[f.index].sides;
    const SideRef m = old[f.pos], s1 = old[(f.pos + 1) % 3], s2 = old[(f.pos + 2) % 3];
    if (s1.edge == s2.edge) throw Error("not-flippable", "monogon sits in a folded triangle");
    // The triangle and the monogon form a punctured bigon with sides s1, s2;
    // the loop moves from the start of s1 to its end.
    std::vector<Triangle> tris = qt.triangles();
    tris[f.index] = Triangle{{s1, m, s2}};
    return QuasiTriangulation(qt.signature(), qt.edges(), std::move(tris), qt.monogons());
  }
  throw Error("not-a-monogon", "monogon edge " + std::to_string(e) + " has no triangle side");
}

// ---------------------------------------------------------------------------

namespace {

SideRef next_in_face(const QuasiTriangulation& qt, SideRef s) {
  const FaceSlot f = qt.face_of(s);
  if (f.kind == FaceKind::Triangle) return qt.triangles()[f.index].sides[(f.pos + 1) % 3];
  return s;
}

}  // namespace

Fatgraph dual_fatgraph(const QuasiTriangulation& qt) {
  Fatgraph g;
  const int nt = static_cast<int>(qt.triangles().size());
  for (const auto& t : qt.triangles()) {
    g.vertices.push_back({t.sides[0].dart(), t.sides[1].dart(), t.sides[2].dart()});
  }
  for (const auto& m : qt.monogons()) g.vertices.push_back({m.side.dart()});
  for (int e = 0; e < qt.edge_count(); ++e) {
    if (qt.is_arc(e)) {
      g.edges.push_back({2 * e, 2 * e + 1});
    } else {
      g.edges.push_back({2 * e});
    }
  }
  (void)nt;

  // Face permutation: next(d) = rotation(involution(d)); a leg is its own image
  // under the involution. One orbit per distinguished point.
  std::vector<bool> seen(2 * qt.edge_count(), false);
  std::vector<std::pair<int, std::vector<int>>> cycles;
  for (int e = 0; e < qt.edge_count(); ++e) {
    for (int side = 0; side < (qt.is_arc(e) ? 2 : 1); ++side) {
      const SideRef start{e, side};
      if (seen[start.dart()]) continue;
      std::vector<int> cyc;
      SideRef cur = start;
      int vertex = -1;
      do {
        seen[cur.dart()] = true;
        cyc.push_back(cur.edge);
        const SideRef across = qt.is_arc(cur.edge) ? cur.twin() : cur;
        const SideRef nxt = next_in_face(qt, across);
        if (vertex < 0) vertex = qt.side_endpoints(nxt).first;
        cur = nxt;
      } while (cur != start && static_cast<int>(cyc.size()) <= 4 * qt.edge_count());
      cycles.emplace_back(vertex, std::move(cyc));
    }
  }
  std::stable_sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [label, cyc] : cycles) {
    g.boundary_cycles.push_back(std::move(cyc));
    g.cycle_labels.push_back(label);
  }
  g.distinguished_cycle_count = static_cast<int>(g.boundary_cycles.size());
  for (const auto& m : qt.monogons()) {
    g.boundary_cycles.push_back({m.side.edge});
    g.cycle_labels.push_back(m.puncture);
  }
  return g;
}

BoundaryLengths fatgraph_boundary_lengths(const Fatgraph& graph, const std::vector<double>& weights) {
  if (weights.size() != graph.edges.size()) {
    throw Error("bad-input", "weight vector must cover every fatgraph edge");
  }
  BoundaryLengths out;
  out.positive = true;
  for (const auto& cyc : graph.boundary_cycles) {
    double len = 0.0;
    for (int e : cyc) len += weights[e];
    out.lengths.push_back(len);
    if (!(len > 0.0)) out.positive = false;
  }
  return out;
}

}  // namespace dt

namespace dt {

namespace {

bool on_family(const QuasiTriangulation& qt, const std::vector<bool>& mask, int e) {
  return qt.is_boundary(e) || (e < static_cast<int>(mask.size()) && mask[e]);
}

// Next family dart along the boundary of the complementary region to the left.
SideRef region_next(const QuasiTriangulation& qt, const std::vector<bool>& mask, SideRef s) {
  SideRef c = next_in_face(qt, s);
  int guard = 0;
  while (!on_family(qt, mask, c.edge)) {
    c = next_in_face(qt, c.twin());
    if (++guard > 8 * qt.edge_count() + 8) throw Error("invalid-triangulation", "region walk did not close");
  }
  return c;
}

}  // namespace

RegionDecomposition complementary_regions(const QuasiTriangulation& qt, const std::vector<bool>& mask) {
  const int nt = static_cast<int>(qt.triangles().size());
  const int nf = nt + static_cast<int>(qt.monogons().size());
  auto fid = [&](FaceSlot f) { return f.kind == FaceKind::Triangle ? f.index : nt + f.index; };
  UnionFind faces(nf);
  for (int e = 0; e < qt.edge_count(); ++e) {
    if (on_family(qt, mask, e)) continue;
    faces.unite(fid(qt.face_of({e, 0})), fid(qt.face_of({e, 1})));
  }
  std::map<int, int> region_of_root;
  RegionDecomposition out;
  std::vector<int> face_region(nf);
  for (int f = 0; f < nf; ++f) {
    const int root = faces.find(f);
    auto it = region_of_root.find(root);
    if (it == region_of_root.end()) {
      it = region_of_root.emplace(root, static_cast<int>(out.regions.size())).first;
      out.regions.emplace_back();
    }
    face_region[f] = it->second;
    Region& reg = out.regions[it->second];
    if (f < nt) {
      reg.faces.push_back({FaceKind::Triangle, f, 0});
    } else {
      reg.faces.push_back({FaceKind::Monogon, f - nt, 0});
      reg.punctures.push_back(qt.monogons()[f - nt].puncture);
    }
  }
  for (auto& reg : out.regions) std::sort(reg.punctures.begin(), reg.punctures.end());

  // Boundary cycles.
  out.dart_region.assign(2 * qt.edge_count(), -1);
  std::vector<bool> seen(2 * qt.edge_count(), false);
  std::vector<int> dart_count(out.regions.size(), 0);
  for (int e = 0; e < qt.edge_count(); ++e) {
    if (!on_family(qt, mask, e)) continue;
    for (int side = 0; side < (qt.is_arc(e) ? 2 : 1); ++side) {
      const SideRef start{e, side};
      if (seen[start.dart()]) continue;
      const int reg = face_region[fid(qt.face_of(start))];
      std::vector<int> cyc;
      SideRef cur = start;
      do {
        seen[cur.dart()] = true;
        out.dart_region[cur.dart()] = reg;
        cyc.push_back(cur.dart());
        cur = region_next(qt, mask, cur);
      } while (cur != start);
      dart_count[reg] += static_cast<int>(cyc.size());
      out.regions[reg].cycles.push_back(std::move(cyc));
    }
  }

  // Genus from the Euler characteristic of each region's cell structure.
  const int nc = 3 * nt + static_cast<int>(qt.monogons().size());
  UnionFind corners(nc);
  auto corner = [&](FaceSlot f, int k) {
    return f.kind == FaceKind::Triangle ? 3 * f.index + ((k % 3) + 3) % 3 : 3 * nt + f.index;
  };
  std::vector<int> interior(out.regions.size(), 0);
  for (int e = 0; e < qt.edge_count(); ++e) {
    if (on_family(qt, mask, e)) continue;
    const FaceSlot a = qt.face_of({e, 0}), b = qt.face_of({e, 1});
    corners.unite(corner(a, a.pos), corner(b, b.pos + 1));
    corners.unite(corner(a, a.pos + 1), corner(b, b.pos));
    const int reg = face_region[fid(a)];
    ++interior[reg];
    out.regions[reg].interior_arcs.push_back(e);
  }
  std::vector<std::set<int>> vertex_classes(out.regions.size());
  for (int c = 0; c < nc; ++c) {
    const int f = c < 3 * nt ? c / 3 : nt + (c - 3 * nt);
    vertex_classes[face_region[f]].insert(corners.find(c));
  }
  for (std::size_t r = 0; r < out.regions.size(); ++r) {
    Region& reg = out.regions[r];
    const int chi = static_cast<int>(vertex_classes[r].size()) - (interior[r] + dart_count[r]) +
                    static_cast<int>(reg.faces.size());
    reg.genus = (2 - chi - static_cast<int>(reg.cycles.size())) / 2;
  }
  return out;
}

bool family_quasi_fills(const QuasiTriangulation& qt, const std::vector<bool>& mask) {
  const auto dec = complementary_regions(qt, mask);
  return std::all_of(dec.regions.begin(), dec.regions.end(), [](const Region& r) { return r.is_polygon(); });
}

std::vector<int> family_code(const QuasiTriangulation& qt, const std::vector<bool>& mask, std::vector<int>* dart_order) {
  const RegionDecomposition dec = complementary_regions(qt, mask);
  const int nd = 2 * qt.edge_count();
  std::vector<int> label(nd, -1);
  std::vector<int> order;
  std::vector<int> region_label(dec.regions.size(), -1);
  std::vector<int> code;
  int next_region = 0;
  auto assign = [&](int d) {
    if (label[d] < 0) {
      label[d] = static_cast<int>(order.size());
      order.push_back(d);
    }
    return label[d];
  };
  // Every graph component carries a labeled boundary segment, so starting at
  // the lowest unvisited boundary dart is canonical.
  for (int i = 0; i < qt.signature().r; ++i) {
    const int start = SideRef{qt.boundary_edge(i), 0}.dart();
    if (label[start] >= 0) continue;
    code.push_back(-7);
    std::size_t head = order.size();
    assign(start);
    while (head < order.size()) {
      const int d = order[head++];
      const SideRef s = SideRef::from_dart(d);
      if (qt.is_boundary(s.edge)) {
        code.push_back(-100 - qt.edges()[s.edge].component);
      } else {
        code.push_back(assign(s.twin().dart()));
      }
      code.push_back(assign(region_next(qt, mask, s).dart()));
      const int reg = dec.dart_region[d];
      if (region_label[reg] < 0) {
        region_label[reg] = next_region++;
        const Region& rg = dec.regions[reg];
        code.push_back(-1000 - rg.genus);
        code.push_back(static_cast<int>(rg.cycles.size()));
        code.push_back(static_cast<int>(rg.punctures.size()));
        for (int p : rg.punctures) code.push_back(p);
      }
      code.push_back(region_label[reg]);
    }
  }
  if (dart_order) *dart_order = order;
  return code;
}

std::vector<int> canonical_code(const QuasiTriangulation& qt) {
  return family_code(qt, std::vector<bool>(qt.edge_count(), true));
}

FlipGraph enumerate_flip_graph(const SurfaceSignature& sig, int max_nodes) {
  require_admissible(sig);
  FlipGraph fg;
  fg.signature = sig;
  if (max_nodes < 1) {
    fg.truncated = true;
    return fg;
  }
  std::map<std::vector<int>, int> index;
  std::set<std::pair<int, int>> edges;
  QuasiTriangulation seed = build_seed_triangulation(sig);
  auto code = canonical_code(seed);
  index.emplace(code, 0);
  fg.nodes.push_back(std::move(seed));
  fg.codes.push_back(std::move(code));
  for (std::size_t head = 0; head < fg.nodes.size(); ++head) {
    const QuasiTriangulation cur = fg.nodes[head];
    for (int e = 0; e < cur.edge_count(); ++e) {
      // Arc flips alone never change the order of monogons around a vertex,
      // so moving a monogon loop counts as a move too.
      QuasiTriangulation next;
      if (is_flippable(cur, e)) {
        next = flip_combinatorial(cur, e);
      } else if (cur.is_monogon_edge(e)) {
        try {
          next = move_monogon_base(cur, e);
        } catch (const Error&) {
          continue;
        }
      } else {
        continue;
      }
      auto c = canonical_code(next);
      auto it = index.find(c);
      int target;
      if (it != index.end()) {
        target = it->second;
      } else if (static_cast<int>(fg.nodes.size()) < max_nodes) {
        target = static_cast<int>(fg.nodes.size());
        index.emplace(c, target);
        fg.nodes.push_back(std::move(next));
        fg.codes.push_back(std::move(c));
      } else {
        fg.truncated = true;
        continue;
      }
      edges.insert({std::min<int>(head, target), std::max<int>(head, target)});
    }
  }
  fg.edges.assign(edges.begin(), edges.end());
  return fg;
}

}  // namespace dt

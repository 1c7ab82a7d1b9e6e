#pragma once

// Exhaustive test-side enumeration, independent of the flip-graph search.

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "dt/surface.hpp"

namespace oracle {

using namespace dt;

struct BruteArcComplex {
  std::vector<int> simplices, filling;
};

// Every gluing of arc and boundary sides into triangle and monogon slots,
// kept when valid, deduplicated by canonical code.
inline std::vector<dt::QuasiTriangulation> brute_force_triangulations(const dt::SurfaceSignature& sig) {
  const int arcs = sig.arc_count(), nt = sig.triangle_count();
  std::vector<Edge> edges(arcs);
  for (int i = 0; i < sig.r; ++i) edges.push_back({EdgeKind::Boundary, i});
  std::vector<int> darts;
  for (int e = 0; e < arcs; ++e) darts.insert(darts.end(), {2 * e, 2 * e + 1});
  for (int i = 0; i < sig.r; ++i) darts.push_back(2 * (arcs + i));
  std::sort(darts.begin(), darts.end());
  std::set<std::vector<int>> seen;
  std::vector<QuasiTriangulation> out;
  do {
    std::vector<Triangle> tris(nt);
    for (int t = 0; t < nt; ++t)
      for (int k = 0; k < 3; ++k) tris[t].sides[k] = SideRef::from_dart(darts[3 * t + k]);
    std::vector<Monogon> monos;
    for (int m = 0; m < sig.s; ++m) monos.push_back({SideRef::from_dart(darts[3 * nt + m]), m});
    QuasiTriangulation qt(sig, edges, tris, monos);
    if (!validate_quasi_triangulation(qt).ok()) continue;
    if (seen.insert(canonical_code(qt)).second) out.push_back(qt);
  } while (std::next_permutation(darts.begin(), darts.end()));
  return out;
}

inline BruteArcComplex brute_force_arc_complex(const dt::SurfaceSignature& sig) {
  const int arcs = sig.arc_count();
  std::vector<std::set<std::vector<int>>> orbits(arcs), filling(arcs);
  for (const auto& qt : brute_force_triangulations(sig))
    for (int bits = 1; bits < (1 << arcs); ++bits) {
      std::vector<bool> m(qt.edge_count(), false);
      int n = 0;
      for (int e = 0; e < arcs; ++e)
        if (bits >> e & 1) m[e] = true, ++n;
      orbits[n - 1].insert(family_code(qt, m));
      if (family_quasi_fills(qt, m)) filling[n - 1].insert(family_code(qt, m));
    }
  BruteArcComplex out;
  for (int d = 0; d < arcs; ++d) {
    out.simplices.push_back(static_cast<int>(orbits[d].size()));
    out.filling.push_back(static_cast<int>(filling[d].size()));
  }
  return out;
}

// Unordered pairs of triangulations joined by a flip or a monogon move.
inline std::set<std::pair<int, int>> brute_force_flip_edges(const std::vector<QuasiTriangulation>& nodes) {
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) index[canonical_code(nodes[i])] = i;
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
    for (int e = 0; e < nodes[i].signature().arc_count(); ++e) {
      QuasiTriangulation next;
      if (nodes[i].is_monogon_edge(e))
        next = move_monogon_base(nodes[i], e);
      else if (!flip_obstruction(nodes[i], e))
        next = flip_combinatorial(nodes[i], e);
      else
        continue;
      const int j = index.at(canonical_code(next));
      edges.insert({std::min(i, j), std::max(i, j)});
    }
  return edges;
}

}  // namespace oracle

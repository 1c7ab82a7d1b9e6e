#include "dt/io.hpp"

#include <cmath>
#include <cstdio>

#include "dt/error.hpp"

namespace dt {

namespace {

void dump(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ',';
        dump(j[k], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

[[noreturn]] void bad(const std::string& what) { throw Error("bad-input", what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

double as_double(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

Json side_json(SideRef s) { return {{"edge", s.edge}, {"side", s.side}}; }

SideRef side_from_json(const Json& j) { return {as_int(field(j, "edge"), "edge"), as_int(field(j, "side"), "side")}; }

Json matrix_json(const MoebiusMap& m) { return Json::array({m.a, m.b, m.c, m.d}); }

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump(j, out);
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const SurfaceSignature& sig) { return {{"g", sig.g}, {"r", sig.r}, {"s", sig.s}}; }

SurfaceSignature signature_from_json(const Json& j) {
  return {as_int(field(j, "g"), "g"), as_int(field(j, "r"), "r"), as_int(field(j, "s"), "s")};
}

Json to_json(const QuasiTriangulation& qt) {
  Json arcs = Json::array(), boundary = Json::array(), tris = Json::array(), monos = Json::array();
  for (int e = 0; e < qt.edge_count(); ++e) {
    if (qt.is_arc(e))
      arcs.push_back({{"id", e}});
    else
      boundary.push_back({{"id", e}, {"component", qt.edges()[e].component}});
  }
  for (const auto& t : qt.triangles())
    tris.push_back(Json::array({side_json(t.sides[0]), side_json(t.sides[1]), side_json(t.sides[2])}));
  for (const auto& m : qt.monogons()) monos.push_back({{"side", side_json(m.side)}, {"puncture", m.puncture}});
  return {{"signature", to_json(qt.signature())}, {"arcs", arcs}, {"boundary", boundary}, {"triangles", tris},
          {"monogons", monos}};
}

QuasiTriangulation triangulation_from_json(const Json& j) {
  const SurfaceSignature sig = signature_from_json(field(j, "signature"));
  const Json& arcs = field(j, "arcs");
  const Json& boundary = field(j, "boundary");
  if (!arcs.is_array() || !boundary.is_array()) bad("arcs and boundary must be arrays");
  const int ne = static_cast<int>(arcs.size() + boundary.size());
  std::vector<Edge> edges(ne);
  std::vector<bool> seen(ne, false);
  auto claim = [&](int id) {
    if (id < 0 || id >= ne || seen[id]) bad("edge ids must be distinct and in [0, " + std::to_string(ne) + ")");
    seen[id] = true;
  };
  for (const auto& a : arcs) claim(as_int(field(a, "id"), "arc id"));
  for (const auto& b : boundary) {
    const int id = as_int(field(b, "id"), "boundary id");
    claim(id);
    edges[id] = {EdgeKind::Boundary, as_int(field(b, "component"), "component")};
  }
  std::vector<Triangle> tris;
  for (const auto& t : field(j, "triangles")) {
    if (!t.is_array() || t.size() != 3) bad("a triangle lists three sides");
    tris.push_back(Triangle{{side_from_json(t[0]), side_from_json(t[1]), side_from_json(t[2])}});
  }
  std::vector<Monogon> monos;
  for (const auto& m : field(j, "monogons"))
    monos.push_back({side_from_json(field(m, "side")), as_int(field(m, "puncture"), "puncture")});
  return QuasiTriangulation(sig, std::move(edges), std::move(tris), std::move(monos));
}

Json edge_map(const EdgeVector& v) {
  Json out = Json::object();
  for (std::size_t e = 0; e < v.size(); ++e) out[std::to_string(e)] = v[e];
  return out;
}

EdgeVector edge_vector_from_json(const Json& j, int edge_count) {
  EdgeVector v(edge_count, 0.0);
  std::vector<bool> seen(edge_count, false);
  if (j.is_array()) {
    if (static_cast<int>(j.size()) != edge_count) bad("expected " + std::to_string(edge_count) + " values");
    for (int e = 0; e < edge_count; ++e) v[e] = as_double(j[e], "value");
    return v;
  }
  if (!j.is_object()) bad("edge values must be a map keyed by edge id or an array");
  for (auto it = j.begin(); it != j.end(); ++it) {
    int e = -1;
    try {
      std::size_t used = 0;
      e = std::stoi(it.key(), &used);
      if (used != it.key().size()) e = -1;
    } catch (const std::exception&) {
    }
    if (e < 0 || e >= edge_count) bad("bad edge key \"" + it.key() + "\"");
    v[e] = as_double(it.value(), "value");
    seen[e] = true;
  }
  for (int e = 0; e < edge_count; ++e)
    if (!seen[e]) bad("missing value for edge " + std::to_string(e));
  return v;
}

Json to_json(const DecoratedStructure& ds) { return {{"triangulation", to_json(ds.qt)}, {"lambda", edge_map(ds.lambda)}}; }

DecoratedStructure structure_from_json(const Json& j) {
  DecoratedStructure ds;
  ds.qt = triangulation_from_json(field(j, "triangulation"));
  ds.lambda = edge_vector_from_json(field(j, "lambda"), ds.qt.edge_count());
  return ds;
}

Json to_json(const std::vector<FlipStep>& trace) {
  Json out = Json::array();
  for (const auto& s : trace) out.push_back(Json::array({s.edge, s.new_lambda}));
  return out;
}

Json to_json(const CellDescriptor& cell) {
  Json alpha = Json::array();
  for (std::size_t e = 0; e < cell.alpha.size(); ++e)
    if (cell.alpha[e]) alpha.push_back(e);
  return {{"structure", to_json(cell.ds)},
          {"alpha", alpha},
          {"coordinates", edge_map(cell.coordinates)},
          {"trace", to_json(cell.trace)}};
}

Json to_json(const DevelopedStructure& dev, const DecoratedStructure& ds) {
  Json gens = Json::array(), hol = Json::array(), punct = Json::array(), traces = Json::array(),
       lengths = Json::array();
  for (const auto& g : dev.generators) gens.push_back({{"edge", g.edge}, {"matrix", matrix_json(g.map)}});
  for (const auto& h : dev.boundary_holonomy) hol.push_back(matrix_json(h));
  for (double tr : boundary_traces(ds)) {
    traces.push_back(tr);
    lengths.push_back(tr > 2.0 ? 2.0 * std::acosh(tr / 2.0) : 0.0);
  }
  for (const auto& p : dev.puncture_holonomy) punct.push_back(matrix_json(p));
  return {{"generators", gens},
          {"boundary_holonomy", hol},
          {"puncture_holonomy", punct},
          {"traces", traces},
          {"lengths", lengths}};
}

Json to_json(const BoundaryMarking& m) {
  Json bs = Json::array();
  for (const auto& b : m.boundaries)
    bs.push_back({{"i", b.boundary}, {"len", b.length}, {"xi", b.xi}, {"t", b.t}, {"p", b.p}, {"b", b.b},
                  {"delta", b.delta}});
  return {{"boundaries", bs}, {"fingerprint", m.fingerprint}};
}

Json to_json(const WeightedArcFamily& waf) {
  Json arcs = Json::array(), weights = Json::array();
  for (int e = 0; e < waf.qt.arc_count(); ++e) {
    if (waf.weights[e] <= 0.0) continue;
    arcs.push_back(e);
    weights.push_back(waf.weights[e]);
  }
  return {{"triangulation", to_json(waf.qt)}, {"arcs", arcs}, {"weights", weights}, {"projective", waf.projective}};
}

WeightedArcFamily weighted_family_from_json(const Json& j) {
  const QuasiTriangulation qt = triangulation_from_json(field(j, "triangulation"));
  const Json& arcs = field(j, "arcs");
  const Json& weights = field(j, "weights");
  if (!arcs.is_array() || !weights.is_array() || arcs.size() != weights.size())
    bad("arcs and weights must be arrays of equal length");
  EdgeVector w(qt.edge_count(), 0.0);
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const int e = as_int(arcs[k], "arc id");
    if (e < 0 || e >= qt.edge_count()) bad("arc id out of range");
    w[e] = as_double(weights[k], "weight");
  }
  const bool projective = j.contains("projective") && j.at("projective").is_boolean() && j.at("projective").get<bool>();
  return make_weighted_family(qt, std::move(w), projective);
}

Json to_json(const ModuliPoint& m) {
  return {{"lengths", m.lengths},
          {"fingerprint", m.fingerprint},
          {"structure", to_json(m.structure)},
          {"residual", m.residual}};
}

Json to_json(const ArcComplexCatalog& cat) {
  return {{"signature", to_json(cat.signature)},
          {"triangulations", cat.triangulations},
          {"simplices", cat.simplices},
          {"filling_simplices", cat.filling_simplices},
          {"codes", cat.representatives},
          {"top_dimension", cat.top_dimension},
          {"complete", cat.complete}};
}

Json to_json(const FlipGraph& fg) {
  Json edges = Json::array();
  for (const auto& [a, b] : fg.edges) edges.push_back(Json::array({a, b}));
  return {{"signature", to_json(fg.signature)},
          {"nodes", static_cast<int>(fg.nodes.size())},
          {"edges", edges},
          {"codes", fg.codes},
          {"truncated", fg.truncated}};
}

}  // namespace dt

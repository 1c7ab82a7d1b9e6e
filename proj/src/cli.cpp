#include "dt/cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <random>
#include <sstream>

#include "dt/error.hpp"
#include "dt/io.hpp"
#include "dt/render.hpp"

namespace dt {

namespace {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

Level log_level() {
  const char* env = std::getenv("DT_LOG");
  if (!env) return Level::Warn;
  const std::string s = env;
  if (s == "error") return Level::Error;
  if (s == "info") return Level::Info;
  if (s == "debug") return Level::Debug;
  return Level::Warn;
}

struct Config {
  std::string input;
  std::string output;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  int width = 640;
  bool no_labels = false;
};

class Context {
 public:
  Context(const Config& cfg, std::ostream& out, std::ostream& err) : cfg(cfg), out_(out), err_(err), level_(log_level()) {}

  void log(Level l, const std::string& msg) const {
    static const char* names[] = {"error", "warn", "info", "debug"};
    if (l <= level_) err_ << "dt[" << names[static_cast<int>(l)] << "] " << msg << "\n";
  }

  Json input() const {
    if (cfg.input.empty()) throw CLI::ValidationError("--input", "this subcommand needs --input");
    std::size_t k = 0;
    while (k < cfg.input.size() && std::isspace(static_cast<unsigned char>(cfg.input[k]))) ++k;
    if (k < cfg.input.size() && (cfg.input[k] == '{' || cfg.input[k] == '[')) return parse_json(cfg.input);
    std::stringstream buf;
    if (cfg.input == "-") {
      buf << std::cin.rdbuf();
    } else {
      std::ifstream f(cfg.input);
      if (!f) throw Error("io-error", "cannot read " + cfg.input);
      buf << f.rdbuf();
    }
    log(Level::Debug, "read " + std::to_string(buf.str().size()) + " bytes");
    return parse_json(buf.str());
  }

  void emit(const std::string& text) const {
    if (cfg.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw Error("io-error", "cannot write " + cfg.output);
    f << text;
    log(Level::Info, "wrote " + cfg.output);
  }
  void emit(const Json& j) const { emit(canonical_dump(j) + "\n"); }

  RenderOptions render_options() const { return {cfg.width, !cfg.no_labels, cfg.seed}; }

  const Config& cfg;

 private:
  std::ostream& out_;
  std::ostream& err_;
  Level level_;
};

QuasiTriangulation checked(QuasiTriangulation qt) {
  const ValidationReport rep = validate_quasi_triangulation(qt);
  if (!rep.ok()) throw Error("invalid-triangulation", rep.violations.front());
  return qt;
}

// Accepts a bare triangulation or anything holding one under "triangulation".
QuasiTriangulation triangulation_of(const Json& j) {
  if (j.is_object() && j.contains("triangulation")) return triangulation_from_json(j.at("triangulation"));
  if (j.is_object() && j.contains("structure")) return triangulation_of(j.at("structure"));
  return triangulation_from_json(j);
}

DecoratedStructure structure_of(const Json& j) {
  if (j.is_object() && j.contains("structure")) return structure_of(j.at("structure"));
  DecoratedStructure ds = structure_from_json(j);
  checked(ds.qt);
  require_valid(ds);
  return ds;
}

// Quick invariant suites; each case failure is counted, never thrown.
class Selftest {
 public:
  Selftest(int cases, std::uint64_t seed, double tol) : cases_(cases), gen_(seed), tol_(tol) {}

  Json run() {
    suite("counting-laws", [&](const SurfaceSignature& sig) {
      const QuasiTriangulation qt = random_chart(sig);
      return qt.arc_count() == 6 * sig.g - 6 + 4 * sig.r + 2 * sig.s &&
             static_cast<int>(qt.triangles().size()) == 4 * sig.g - 4 + 3 * sig.r + sig.s &&
             validate_quasi_triangulation(qt).ok();
    });
    suite("ptolemy-involution", [&](const SurfaceSignature& sig) {
      const DecoratedStructure ds = random_structure(sig);
      const int e = uniform_int(0, ds.qt.arc_count() - 1);
      if (!is_flippable(ds.qt, e)) return true;
      const DecoratedStructure back = ptolemy_flip(ptolemy_flip(ds, e), e);
      return back.qt.same_cells(ds.qt) && relative_gap(back.lambda, ds.lambda) <= tol_;
    });
    suite("trace-invariance", [&](const SurfaceSignature& sig) {
      const DecoratedStructure ds = random_structure(sig);
      return relative_gap(boundary_traces(bounded_flip_walk(ds, 50)), boundary_traces(ds)) <= std::max(tol_, 1e-8);
    });
    suite("delaunay", [&](const SurfaceSignature& sig) {
      const CellDescriptor cell = delaunay_cell(random_structure(sig));
      for (int e = 0; e < cell.ds.qt.arc_count(); ++e)
        if (cell.coordinates[e] < -tol_) return false;
      return quasi_fills(cell.ds.qt, cell.alpha);
    });
    suite("solver-round-trip", [&](const SurfaceSignature& sig) {
      const DecoratedStructure ds = random_structure(sig);
      SolveOptions opt;
      for (int e = 0; e < ds.qt.arc_count(); ++e)
        if (ds.qt.is_monogon_edge(e)) opt.monogon_lambda.push_back(ds.lambda[e]);
      opt.require_membership = false;
      const SolveReport rep = solve_inverse_coordinates(ds.qt, simplicial_coordinates(ds), opt);
      return relative_gap(rep.ds.lambda, ds.lambda) <= std::max(tol_, 1e-7);
    });
    suite("psi-range", [&](const SurfaceSignature& sig) {
      const auto ds = random_hat_point(sig);
      if (!ds) return true;
      const BoundaryMarking m = psi_boundary_points(*ds);
      for (const auto& b : m.boundaries)
        if (!(b.t > 0.0 && b.t < b.length)) return false;
      return true;
    });
    suite("twist-composition", [&](const SurfaceSignature& sig) {
      const QuasiTriangulation qt = random_chart(sig);
      EdgeVector w(qt.edge_count(), 0.0);
      for (int e = 0; e < qt.arc_count(); ++e) w[e] = uniform(0.2, 2.0);
      const WeightedArcFamily f = make_weighted_family(qt, w);
      const int i = uniform_int(0, sig.r - 1);
      const double s = uniform(0.0, 0.5), t = uniform(0.0, 0.5);
      const WeightedArcFamily a = circle_action_twist(circle_action_twist(f, i, s), i, t);
      return equivalent(circle_action_twist(f, i, 0.0), f, 1e-9) &&
             equivalent(a, circle_action_twist(f, i, s + t), std::max(tol_, 1e-9)) && quasi_fills(a);
    });
    bool ok = true;
    for (const auto& s : results_) ok = ok && s.at("failures").get<int>() == 0;
    return {{"ok", ok}, {"suites", results_}};
  }

 private:
  void suite(const char* name, const std::function<bool(const SurfaceSignature&)>& check) {
    static const SurfaceSignature sigs[] = {{1, 1, 0}, {0, 3, 0}, {0, 1, 2}, {1, 1, 1}, {0, 2, 1}};
    int failures = 0;
    std::string first;
    for (int n = 0; n < cases_; ++n) {
      const SurfaceSignature& sig = sigs[n % std::size(sigs)];
      try {
        if (check(sig)) continue;
        if (first.empty()) first = to_string(sig) + ": check failed";
      } catch (const Error& e) {
        if (first.empty()) first = to_string(sig) + ": " + e.code() + ": " + e.what();
      }
      ++failures;
    }
    Json r = {{"name", name}, {"cases", cases_}, {"failures", failures}};
    if (!first.empty()) r["first_failure"] = first;
    results_.push_back(r);
  }

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen_); }

  QuasiTriangulation random_chart(const SurfaceSignature& sig) {
    QuasiTriangulation qt = build_seed_triangulation(sig);
    for (int k = 0; k < 10; ++k) {
      const int e = uniform_int(0, qt.arc_count() - 1);
      if (is_flippable(qt, e)) qt = flip_combinatorial(qt, e);
    }
    return qt;
  }

  DecoratedStructure random_structure(const SurfaceSignature& sig) {
    DecoratedStructure ds = uniform_structure(random_chart(sig));
    for (auto& l : ds.lambda) l = uniform(0.5, 2.0);
    return ds;
  }

  // Delaunay structure retracted into the hat, by rejection.
  std::optional<DecoratedStructure> random_hat_point(const SurfaceSignature& sig) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      const CellDescriptor cell = delaunay_cell(random_structure(sig));
      if (!membership_tilde_C(cell.ds.qt, simplicial_coordinates(cell.ds)).member) continue;
      const DecoratedStructure ds = retract_to_hat(cell.ds);
      if (in_hat(ds)) return ds;
    }
    return std::nullopt;
  }

  // Random Ptolemy walk that skips flips sending a lambda length outside
  // [1e-100, 1e100]; unrestricted walks overflow within a few dozen steps.
  DecoratedStructure bounded_flip_walk(DecoratedStructure ds, int steps) {
    for (int k = 0; k < steps; ++k) {
      std::vector<int> options;
      for (int e = 0; e < ds.qt.arc_count(); ++e) {
        if (!is_flippable(ds.qt, e)) continue;
        const double l = ptolemy_flip(ds, e).lambda[e];
        if (l > 1e-100 && l < 1e100) options.push_back(e);
      }
      if (options.empty()) break;
      ds = ptolemy_flip(ds, options[uniform_int(0, static_cast<int>(options.size()) - 1)]);
    }
    return ds;
  }

  static double relative_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(b[k])));
    return worst;
  }

  int cases_;
  std::mt19937_64 gen_;
  double tol_;
  Json results_ = Json::array();
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decorated Teichmueller toolkit for bordered surfaces", "dtcli"};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--input,-i", cfg.input, "JSON file, '-' for stdin, or inline JSON");
    sub->add_option("--output,-o", cfg.output, "Output file (default stdout)");
    sub->add_option("--tolerance", cfg.tolerance, "Numerical tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Seed for randomized steps");
  };
  std::function<void(const Context&)> action;
  auto add = [&](const char* name, const char* help, std::function<void(const Context&)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };

  SurfaceSignature sig{1, 1, 0};
  auto signature_options = [&](CLI::App* sub) {
    sub->add_option("--g", sig.g, "Genus")->check(CLI::NonNegativeNumber);
    sub->add_option("--r", sig.r, "Boundary components")->check(CLI::NonNegativeNumber);
    sub->add_option("--s", sig.s, "Punctures")->check(CLI::NonNegativeNumber);
  };

  double lambda = 0.0;
  int random_flips = 0;
  CLI::App* surface_new = add("surface-new", "Seed quasi-triangulation, optionally decorated", [&](const Context& ctx) {
    require_admissible(sig);
    QuasiTriangulation qt = build_seed_triangulation(sig);
    std::mt19937_64 gen(ctx.cfg.seed);
    for (int k = 0; k < random_flips; ++k) {
      const int e = std::uniform_int_distribution<int>(0, qt.arc_count() - 1)(gen);
      if (is_flippable(qt, e)) qt = flip_combinatorial(qt, e);
    }
    if (lambda <= 0.0) {
      ctx.emit(to_json(qt));
      return;
    }
    ctx.emit(to_json(uniform_structure(qt, lambda)));
  });
  signature_options(surface_new);
  surface_new->add_option("--lambda", lambda, "Decorate with this lambda length on every edge")->check(CLI::PositiveNumber);
  surface_new->add_option("--random-flips", random_flips, "Apply this many seeded random flips")
      ->check(CLI::NonNegativeNumber);

  add("validate", "Check the quasi-triangulation axioms", [&](const Context& ctx) {
    const ValidationReport rep = validate_quasi_triangulation(triangulation_of(ctx.input()));
    ctx.emit(Json{{"ok", rep.ok()}, {"violations", rep.violations}});
    if (!rep.ok()) throw Error("invalid-triangulation", rep.violations.front());
  });

  int edge = -1;
  add("flip", "Flip one arc (Ptolemy on lambda lengths when decorated)", [&](const Context& ctx) {
    const Json in = ctx.input();
    if (in.contains("lambda") || in.contains("structure")) {
      ctx.emit(to_json(ptolemy_flip(structure_of(in), edge)));
      return;
    }
    const QuasiTriangulation qt = checked(triangulation_of(in));
    if (edge >= 0 && edge < qt.arc_count() && qt.is_monogon_edge(edge)) {
      ctx.emit(to_json(move_monogon_base(qt, edge)));
      return;
    }
    ctx.emit(to_json(flip_combinatorial(qt, edge)));
  })->add_option("--edge,-e", edge, "Arc id")->required();

  add("simplicial", "Simplicial coordinates", [&](const Context& ctx) {
    ctx.emit(Json{{"coordinates", edge_map(simplicial_coordinates(structure_of(ctx.input())))}});
  });

  std::string pivot = "most-negative";
  int max_flips = -1;
  CLI::App* delaunay = add("delaunay", "Flip to the convex-hull cell", [&](const Context& ctx) {
    const PivotRule rule = pivot == "first-negative" ? PivotRule::FirstNegative : PivotRule::MostNegative;
    ctx.emit(to_json(delaunay_cell(structure_of(ctx.input()), max_flips, rule, ctx.cfg.tolerance)));
  });
  delaunay->add_option("--pivot", pivot, "Pivot rule")->check(CLI::IsMember({"most-negative", "first-negative"}));
  delaunay->add_option("--max-flips", max_flips, "Flip budget (default from the surface)");

  bool local = false;
  add("solve", "Lambda lengths from simplicial coordinates", [&](const Context& ctx) {
    const Json in = ctx.input();
    const QuasiTriangulation qt = checked(triangulation_of(in));
    if (!in.contains("coordinates")) throw Error("bad-input", "missing field \"coordinates\"");
    SolveOptions opt;
    opt.require_membership = !local;
    opt.residual_tol = std::min(opt.residual_tol, ctx.cfg.tolerance);
    if (in.contains("monogon_lambda")) opt.monogon_lambda = in.at("monogon_lambda").get<std::vector<double>>();
    const SolveReport rep = solve_inverse_coordinates(qt, edge_vector_from_json(in.at("coordinates"), qt.edge_count()), opt);
    ctx.log(Level::Info, "solved in " + std::to_string(rep.iterations) + " iterations");
    ctx.emit(Json{{"structure", to_json(rep.ds)}, {"iterations", rep.iterations}, {"residual", rep.residual}});
  })->add_flag("--local", local, "Skip the cell membership gate");

  add("develop", "Holonomy generators, boundary traces and lengths", [&](const Context& ctx) {
    const DecoratedStructure ds = structure_of(ctx.input());
    ctx.emit(to_json(develop_holonomy(ds), ds));
  });

  add("psi", "Boundary points of the decorated structure", [&](const Context& ctx) {
    ctx.emit(to_json(psi_boundary_points(structure_of(ctx.input()))));
  });

  int boundary = 0;
  double t = 0.0;
  CLI::App* twist = add("twist", "Circle action at one boundary component", [&](const Context& ctx) {
    ctx.emit(to_json(circle_action_twist(weighted_family_from_json(ctx.input()), boundary, t)));
  });
  twist->add_option("--boundary,-b", boundary, "Boundary component")->required();
  twist->add_option("--t", t, "Parameter in [0, 1)")->required();

  add("arc-to-moduli", "Moduli point of a weighted arc family", [&](const Context& ctx) {
    ctx.emit(to_json(arc_to_moduli(weighted_family_from_json(ctx.input()))));
  });

  std::string kind = "both";
  int max_nodes = 5000;
  CLI::App* enumerate = add("enumerate", "Flip graph and arc complex counts", [&](const Context& ctx) {
    require_admissible(sig);
    Json j = Json::object();
    if (kind != "arc-complex") j["flip_graph"] = to_json(enumerate_flip_graph(sig, max_nodes));
    if (kind != "flip-graph") j["arc_complex"] = to_json(enumerate_arc_complex(sig, max_nodes));
    ctx.log(Level::Info, "enumerated " + to_string(sig));
    ctx.emit(j);
  });
  signature_options(enumerate);
  enumerate->add_option("--kind", kind, "What to enumerate")->check(CLI::IsMember({"both", "flip-graph", "arc-complex"}));
  enumerate->add_option("--max-nodes", max_nodes, "Truncate after this many triangulations")->check(CLI::PositiveNumber);

  int cases = 20;
  add("selftest", "Run the quick invariant suites", [&](const Context& ctx) {
    const Json r = Selftest(cases, ctx.cfg.seed, ctx.cfg.tolerance).run();
    ctx.emit(r);
    if (!r.at("ok").get<bool>()) throw Error("selftest-failed", "some invariant suites failed");
  })->add_option("--cases", cases, "Cases per suite")->check(CLI::PositiveNumber);

  std::string object = "triangulation";
  CLI::App* render = add("render", "SVG figure", [&](const Context& ctx) {
    const RenderOptions opt = ctx.render_options();
    if (object == "flip-graph") {
      const Json in = ctx.cfg.input.empty() ? Json(nullptr) : ctx.input();
      const SurfaceSignature s = in.is_object() && in.contains("signature") ? signature_from_json(in.at("signature")) : sig;
      require_admissible(s);
      ctx.emit(render_flip_graph_svg(enumerate_flip_graph(s, max_nodes), opt));
    } else if (object == "strip") {
      ctx.emit(render_strip_svg(develop_boundary_strip(structure_of(ctx.input()), boundary), opt));
    } else if (object == "triangulation") {
      ctx.emit(render_triangulation_svg(checked(triangulation_of(ctx.input())), opt));
    } else {
      throw Error("unsupported-object", "cannot render \"" + object + "\"");
    }
  });
  signature_options(render);
  render->add_option("--object", object, "triangulation, strip or flip-graph");
  render->add_option("--boundary,-b", boundary, "Boundary component of the strip");
  render->add_option("--width", cfg.width, "Figure width in pixels")->check(CLI::Range(64, 8192));
  render->add_flag("--no-labels", cfg.no_labels, "Omit text labels");
  render->add_option("--max-nodes", max_nodes, "Truncate the flip graph")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return code == 0 ? 0 : 2;
  }
  Context ctx(cfg, out, err);
  try {
    action(ctx);
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    ctx.log(Level::Debug, std::string("failed with ") + e.code());
    err << canonical_dump(Json{{"code", e.code()}, {"message", e.what()}}) << "\n";
    return 1;
  } catch (const Json::exception& e) {
    err << canonical_dump(Json{{"code", "bad-input"}, {"message", e.what()}}) << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << canonical_dump(Json{{"code", "internal-error"}, {"message", e.what()}}) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace dt

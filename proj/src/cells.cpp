#include "dt/cells.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "dt/error.hpp"

namespace dt {

int default_flip_budget(const QuasiTriangulation& qt) { return 50 * qt.arc_count() * qt.arc_count(); }

CellDescriptor delaunay_cell(const DecoratedStructure& input, int max_flips, PivotRule rule, double tol) {
  require_valid(input);
  if (max_flips < 0) max_flips = default_flip_budget(input.qt);
  CellDescriptor out;
  out.ds = input;
  for (;;) {
    EdgeVector x = simplicial_coordinates(out.ds);
    int pick = -1;
    for (int e = 0; e < out.ds.qt.arc_count(); ++e) {
      if (!(x[e] < -tol) || !is_flippable(out.ds.qt, e)) continue;
      if (pick < 0 || (rule == PivotRule::MostNegative && x[e] < x[pick])) pick = e;
      if (rule == PivotRule::FirstNegative) break;
    }
    if (pick < 0) {
      for (int e = 0; e < out.ds.qt.arc_count(); ++e) {
        if (x[e] < -tol) throw Error("unflippable", "negative coordinate on unflippable arc " + std::to_string(e));
        if (std::abs(x[e]) <= tol) x[e] = 0.0;
      }
      out.alpha.assign(out.ds.qt.edge_count(), false);
      for (int e = 0; e < out.ds.qt.arc_count(); ++e) out.alpha[e] = x[e] > 0.0 || out.ds.qt.is_monogon_edge(e);
      out.coordinates = std::move(x);
      return out;
    }
    if (static_cast<int>(out.trace.size()) >= max_flips) {
      std::ostringstream msg;
      msg << "termination budget exhausted after " << out.trace.size() << " flips; last:";
      for (std::size_t i = out.trace.size() > 10 ? out.trace.size() - 10 : 0; i < out.trace.size(); ++i)
        msg << ' ' << out.trace[i].edge;
      throw Error("budget-exhausted", msg.str());
    }
    out.ds = ptolemy_flip(out.ds, pick);
    out.trace.push_back({pick, out.ds.lambda[pick]});
  }
}

namespace {

int mod3(int k) { return ((k % 3) + 3) % 3; }

struct System {
  const QuasiTriangulation& qt;
  std::vector<int> unknown;      // edge ids carrying a variable
  std::vector<int> var_of_edge;  // -1 for fixed (monogon) edges
};

// Residual E(lambda) - v on unknown edges and its Jacobian in log lambda.
void evaluate(const System& sys, const EdgeVector& lambda, const EdgeVector& v, Eigen::VectorXd& f,
              Eigen::MatrixXd* jac) {
  const int n = static_cast<int>(sys.unknown.size());
  f.setZero(n);
  if (jac) jac->setZero(n, n);
  for (const Triangle& t : sys.qt.triangles()) {
    for (int k = 0; k < 3; ++k) {
      const int e_id = t.sides[k].edge;
      const int row = sys.var_of_edge[e_id];
      if (row < 0) continue;
      const int a_id = t.sides[mod3(k + 1)].edge, b_id = t.sides[mod3(k + 2)].edge;
      const double e = lambda[e_id], a = lambda[a_id], b = lambda[b_id];
      const double w = sys.qt.is_boundary(e_id) ? 2.0 : 1.0;
      f[row] += w * (a * a + b * b - e * e) / (a * b * e);
      if (!jac) continue;
      const double da = a / (b * e) - b / (a * e) + e / (a * b);
      const double db = b / (a * e) - a / (b * e) + e / (a * b);
      const double de = -(a * a + b * b + e * e) / (a * b * e);
      if (sys.var_of_edge[a_id] >= 0) (*jac)(row, sys.var_of_edge[a_id]) += w * da;
      if (sys.var_of_edge[b_id] >= 0) (*jac)(row, sys.var_of_edge[b_id]) += w * db;
      (*jac)(row, row) += w * de;
    }
  }
  for (int i = 0; i < n; ++i) f[i] -= v[sys.unknown[i]];
}

// Damped Newton from lambda toward coordinates v. Returns the final max residual.
double newton(const System& sys, EdgeVector& lambda, const EdgeVector& v, int max_iter, double tol, int& iterations) {
  const int n = static_cast<int>(sys.unknown.size());
  Eigen::VectorXd f(n), f_try(n);
  Eigen::MatrixXd jac(n, n);
  evaluate(sys, lambda, v, f, &jac);
  for (int it = 0; it < max_iter; ++it) {
    if (f.lpNorm<Eigen::Infinity>() < tol) return f.lpNorm<Eigen::Infinity>();
    ++iterations;
    const Eigen::VectorXd step = jac.fullPivLu().solve(-f);
    if (!step.allFinite()) break;
    double t = 1.0;
    const double norm0 = f.norm();
    EdgeVector trial = lambda;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      const double cap = std::min(1.0, 2.0 / std::max(1e-300, step.lpNorm<Eigen::Infinity>() * t));
      for (int i = 0; i < n; ++i) trial[sys.unknown[i]] = lambda[sys.unknown[i]] * std::exp(t * std::min(1.0, cap) * step[i]);
      evaluate(sys, trial, v, f_try, nullptr);
      if (f_try.allFinite() && f_try.norm() < (1.0 - 1e-4 * t) * norm0) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    lambda = trial;
    evaluate(sys, lambda, v, f, &jac);
  }
  return f.lpNorm<Eigen::Infinity>();
}

}  // namespace

SolveReport solve_inverse_coordinates(const QuasiTriangulation& qt, const EdgeVector& v, const SolveOptions& options) {
  if (static_cast<int>(v.size()) != qt.edge_count()) throw Error("invalid-vector", "coordinate vector has wrong length");
  const Membership m = options.require_membership ? membership_tilde_C(qt, v) : Membership{true, {}};
  if (!m.member) {
    std::ostringstream msg;
    msg << "coordinates outside the cell: " << m.witness->kind << " (" << m.witness->reason << ") edges";
    for (int e : m.witness->edges) msg << ' ' << e;
    throw Error("not-in-cell", msg.str());
  }
  System sys{qt, {}, std::vector<int>(qt.edge_count(), -1)};
  DecoratedStructure ds = uniform_structure(qt);
  int mono = 0;
  for (int e = 0; e < qt.edge_count(); ++e) {
    if (qt.is_arc(e) && qt.is_monogon_edge(e)) {
      if (!options.monogon_lambda.empty()) ds.lambda[e] = options.monogon_lambda.at(mono);
      ++mono;
      continue;
    }
    sys.var_of_edge[e] = static_cast<int>(sys.unknown.size());
    sys.unknown.push_back(e);
  }
  require_valid(ds);
  SolveReport rep;
  double res = newton(sys, ds.lambda, v, options.max_iterations, options.residual_tol, rep.iterations);
  if (!(res < options.residual_tol)) {
    // Continuation along the segment from the coordinates of the current
    // point to v; the cell is convex so the path stays inside it.
    for (int e : sys.unknown) ds.lambda[e] = 1.0;
    const EdgeVector v0 = simplicial_coordinates(ds);
    const int stages = 64;
    for (int k = 1; k <= stages; ++k) {
      const double s = static_cast<double>(k) / stages;
      EdgeVector vs(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) vs[i] = (1 - s) * v0[i] + s * v[i];
      res = newton(sys, ds.lambda, vs, options.max_iterations, k == stages ? options.residual_tol : 1e-8, rep.iterations);
    }
  }
  if (!(res < options.residual_tol)) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "inverse solver did not converge; residual " << res;
    throw Error("no-convergence", msg.str());
  }
  rep.ds = std::move(ds);
  rep.residual = res;
  return rep;
}

}  // namespace dt

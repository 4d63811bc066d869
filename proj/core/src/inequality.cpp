#include "graphcalc/inequality.hpp"

#include "graphcalc/curvature.hpp"

#include <cmath>
#include <random>

namespace graphcalc {

InequalityReport InequalityReport::make(std::string name, double lhs, double rhs,
                                        std::map<std::string, double> inputs) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.holds = r.slack >= -1e-10 * std::max(1.0, std::abs(rhs));
  r.inputs = std::move(inputs);
  return r;
}

InequalityReport check_lambda_bound(double lambda, double m, double xi) {
  if (m <= 1.0) throw PreconditionError("lambda bound requires m > 1");
  if (lambda <= 0.0)
    throw PreconditionError("lambda bound concerns nonzero eigenvalues");
  return InequalityReport::make("lambda-bound", m * xi / (m - 1.0), lambda,
                                {{"lambda", lambda}, {"m", m}, {"xi", xi}});
}

InequalityReport check_integral_inequality(const WeightedGraph& g,
                                           const EigenPair& pair,
                                double m, double xi, bool check_cd) {
  if (m <= 1.0) throw PreconditionError("integral inequality requires m > 1");
  if (pair.lambda == 0.0)
    throw PreconditionError("integral inequality assumes lambda != 0");
  if (pair.lambda <= xi)
    throw PreconditionError("denominator sign: requires lambda > xi, got lambda=" +
                            std::to_string(pair.lambda) +
                            " xi=" + std::to_string(xi));
  const double usq = mu_dot(g, pair.u, pair.u);
  const double lhs =
      2.0 * pair.lambda * pair.lambda / (m * (pair.lambda - xi)) * usq;
  const double rhs = integrate(g, grad_norm_sq(g, pair.u));
  std::map<std::string, double> in{{"lambda", pair.lambda}, {"m", m}, {"xi", xi}};
  if (check_cd) in["cd_holds"] = verify_cd(g, m, xi).holds ? 1.0 : 0.0;
  return InequalityReport::make("integral-inequality", lhs, rhs, std::move(in));
}

double alpha_star(double lambda, double m, double xi) {
  if (m <= 1.0) throw PreconditionError("alpha* requires m > 1");
  if (lambda <= xi) throw PreconditionError("alpha* requires lambda > xi");
  return 2.0 * lambda * lambda / (m * (lambda - xi));
}

double tm_functional(const WeightedGraph& g, const VertexFunction& u,
                     double beta, double p) {
  const double r = p / (p - 1.0);
  double s = 0.0;
  for (int x = 0; x < g.size(); ++x) {
    const double e = beta * std::pow(std::abs(u[x]), r);
    if (e > 700.0)
      throw PreconditionError("magnitude overflow at vertex " + g.label(x) +
                              ": exponent " + std::to_string(e));
    s += g.mu(x) * std::exp(e);
  }
  return s;
}

namespace {

// Retraction onto {mean-zero, unit W^{1,s} seminorm}.
VertexFunction retract(const WeightedGraph& g, const VertexFunction& u, double s) {
  VertexFunction v = project_mean_zero(g, u);
  const double n = norm(g, v, NormKind::sobolev(s));
  if (n < 1e-300) throw PreconditionError("cannot normalize a constant function");
  return v / n;
}

struct AscentResult {
  VertexFunction u;
  double value = -std::numeric_limits<double>::infinity();
  bool converged = false;
};

// Projected gradient ascent on the constraint manifold with backtracking.
// `value` and `grad` are the objective and its mu-gradient density.
template <typename F, typename G>
AscentResult ascend(const WeightedGraph& g, double s, VertexFunction u0,
                    const AscentOptions& opts, F&& value, G&& grad) {
  AscentResult res;
  res.u = retract(g, u0, s);
  res.value = value(res.u);
  double step = opts.step;
  for (int it = 0; it < opts.max_iters; ++it) {
    const VertexFunction dir = grad(res.u);
    bool improved = false;
    while (step > 1e-14) {
      VertexFunction cand = retract(g, res.u + step * dir, s);
      const double v = value(cand);
      if (v > res.value + opts.tol * std::max(1.0, std::abs(res.value))) {
        res.u = std::move(cand);
        res.value = v;
        step = std::min(step * 1.5, 10.0);
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      res.converged = true;
      break;
    }
  }
  return res;
}

template <typename F, typename G>
AscentResult multistart_ascend(const WeightedGraph& g, double s,
                               const AscentOptions& opts, F&& value, G&& grad) {
  AscentResult best;
  const int n = g.size();
  for (int k = 0; k < opts.starts; ++k) {
    std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ull + k + 1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    VertexFunction u0(n);
    if (k == 0 && n >= 2) {
      // deterministic start: first nonconstant eigenfunction
      u0 = spectrum(g)[1].u;
    } else {
      for (int i = 0; i < n; ++i) u0[i] = dist(rng);
      if (project_mean_zero(g, u0).cwiseAbs().maxCoeff() < 1e-12) u0[0] += 1.0;
    }
    AscentResult r = ascend(g, s, u0, opts, value, grad);
    if (r.value > best.value) best = std::move(r);
  }
  return best;
}

}  // namespace

double sobolev_constant(const WeightedGraph& g, double s, double q,
                        const AscentOptions& opts) {
  if (s <= 1.0) throw PreconditionError("embedding requires s > 1");
  if (q < 1.0) throw PreconditionError("embedding requires q >= 1");
  const bool sup_norm = std::isinf(q);
  const auto value = [&](const VertexFunction& u) {
    return sup_norm ? norm(g, u, NormKind::sup()) : norm(g, u, NormKind::lp(q));
  };
  const auto grad = [&](const VertexFunction& u) {
    VertexFunction d = VertexFunction::Zero(g.size());
    if (sup_norm) {
      int imax = 0;
      u.cwiseAbs().maxCoeff(&imax);
      d[imax] = (u[imax] >= 0 ? 1.0 : -1.0) / g.mu(imax);
    } else {
      const double nq = value(u);
      for (int i = 0; i < g.size(); ++i)
        d[i] = std::pow(std::max(nq, 1e-300), 1.0 - q) *
               std::pow(std::abs(u[i]), q - 1.0) * (u[i] >= 0 ? 1.0 : -1.0);
    }
    return d;
  };
  // ||u||_q is scale invariant over the ratio, so maximize it on the unit
  // W^{1,s} sphere.
  return multistart_ascend(g, s, opts, value, grad).value;
}

TMEstimate tm_sup_estimate(const WeightedGraph& g, double beta, double p,
                           const AscentOptions& opts) {
  if (beta <= 1.0 || p <= 2.0)
    throw PreconditionError("stated range is beta > 1, p > 2");
  const double r = p / (p - 1.0);
  // Soft-capped evaluation keeps the ascent monotone even if a trial step
  // wanders past the exp overflow guard; on the unit sphere it never binds.
  const auto value = [&](const VertexFunction& u) {
    double s = 0.0;
    for (int x = 0; x < g.size(); ++x)
      s += g.mu(x) * std::exp(std::min(700.0, beta * std::pow(std::abs(u[x]), r)));
    return s;
  };
  const auto grad = [&](const VertexFunction& u) {
    VertexFunction d(g.size());
    for (int x = 0; x < g.size(); ++x) {
      const double a = std::abs(u[x]);
      const double e = std::exp(std::min(700.0, beta * std::pow(a, r)));
      d[x] = e * beta * r * std::pow(a, r - 1.0) * (u[x] >= 0 ? 1.0 : -1.0);
    }
    return d;
  };
  AscentResult best = multistart_ascend(g, p, opts, value, grad);

  TMEstimate est;
  est.beta = beta;
  est.p = p;
  est.empirical_sup = best.value;
  est.maximizer = best.u;
  est.converged = best.converged;
  est.C0 = sobolev_constant(g, p, r, opts);
  const double mu_min = g.measure().minCoeff();
  est.log_theoretical_bound =
      r * beta * est.C0 / mu_min + std::log(g.total_volume());
  est.theoretical_bound = std::exp(est.log_theoretical_bound);
  return est;
}

NormEquivalence norm_equivalence(const WeightedGraph& g, double alpha) {
  const auto spec = spectrum(g);
  double c1 = std::numeric_limits<double>::infinity();
  double c2 = -std::numeric_limits<double>::infinity();
  for (const auto& p : spec) {
    if (p.lambda < 1e-12) continue;  // constants are excluded
    const double ratio = 1.0 - alpha / (2.0 * p.lambda);
    c1 = std::min(c1, ratio);
    c2 = std::max(c2, ratio);
  }
  if (!std::isfinite(c1))
    throw PreconditionError("graph has no nonzero eigenvalue");
  if (c1 <= 0.0)
    throw PreconditionError(
        "alpha-form indefinite on mean-zero subspace: min ratio " +
        std::to_string(c1));
  return {c1, c2};
}

}  // namespace graphcalc

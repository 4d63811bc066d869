#pragma once

#include "graphcalc/spectral.hpp"

#include <map>

namespace graphcalc {

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;
  std::map<std::string, double> inputs;

  static InequalityReport make(std::string name, double lhs, double rhs,
                               std::map<std::string, double> inputs);
};

/// Spectral gap bound under CD(m, xi): lhs = m*xi/(m-1), rhs = lambda.
/// Requires lambda > 0 (the bound concerns nonzero eigenvalues).
InequalityReport check_lambda_bound(double lambda, double m, double xi);

/// Integral inequality for an eigenpair under CD(m, xi):
///   lhs = (2 lambda^2 / (m (lambda - xi))) * int u^2 dmu,
///   rhs = int |grad u|^2 dmu   (grad-squared convention).
/// Requires lambda != 0 and lambda > xi. The CD certificate is checked and
/// echoed in inputs["cd_holds"].
InequalityReport check_integral_inequality(const WeightedGraph& g,
                                           const EigenPair& pair, double m,
                                           double xi, bool check_cd = true);

/// alpha* = 2 lambda^2 / (m (lambda - xi)), the solvability threshold.
double alpha_star(double lambda, double m, double xi);

/// int exp(beta |u|^{p/(p-1)}) dmu. Exponents above 700 throw
/// PreconditionError("magnitude overflow ...") naming the vertex.
double tm_functional(const WeightedGraph& g, const VertexFunction& u,
                     double beta, double p);

struct AscentOptions {
  int starts = 16;
  double step = 0.5;
  int max_iters = 5000;
  std::uint64_t seed = 0;
  double tol = 1e-12;
};

struct TMEstimate {
  double beta = 0.0;
  double p = 0.0;
  double empirical_sup = 0.0;
  VertexFunction maximizer;  // mean-zero, unit W^{1,p} seminorm
  double C0 = 0.0;           // Sobolev constant used by the bound
  double theoretical_bound = 0.0;      // C * Vol V, C = exp(beta C0/mu_min)^{p/(p-1)}
  double log_theoretical_bound = 0.0;  // natural log, finite even when bound overflows
  bool converged = false;
};

/// Maximizes the exponential functional over {mu-mean zero, unit W^{1,p}
/// seminorm} by multistart projected gradient ascent. Deterministic given
/// opts.seed.
TMEstimate tm_sup_estimate(const WeightedGraph& g, double beta, double p,
                           const AscentOptions& opts = {});

/// Best embedding constant sup ||u||_q / ||u||_{W^{1,s}} over mean-zero
/// u != 0. Pass q = infinity for the sup norm.
double sobolev_constant(const WeightedGraph& g, double s, double q,
                        const AscentOptions& opts = {});

struct NormEquivalence {
  double c1 = 0.0;  // min of ||u||_alpha^2 / ||u||_{W^{1,2}}^2 over eigenmodes
  double c2 = 0.0;  // max
};

/// Exact equivalence constants of the alpha-norm against the W^{1,2}
/// seminorm on the mean-zero subspace, from the spectrum: the ratio on the
/// k-th eigenmode is 1 - alpha/(2 lambda_k). Throws PreconditionError when
/// the form is indefinite (c1 <= 0, i.e. alpha >= 2 lambda_1).
NormEquivalence norm_equivalence(const WeightedGraph& g, double alpha);

}  // namespace graphcalc

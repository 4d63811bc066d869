#pragma once

#include "graphcalc/spectral.hpp"

#include <optional>

namespace graphcalc {

/// Built-in power nonlinearity f(x,t) = a(x) (t+)^{q-1},
/// F(x,t) = a(x) (t+)^q / q with a >= 0 and q > 2.
struct PowerNonlinearity {
  double q = 4.0;
  VertexFunction a;           // nonnegative coefficient field
  double ar_exponent = 3.5;   // q' used for the superquadratic growth check
  double s0 = 1.0;

  static PowerNonlinearity make(const WeightedGraph& g, double q,
                                const VertexFunction& a,
                                std::optional<double> ar_exponent = {});
  static PowerNonlinearity constant_coef(const WeightedGraph& g, double q,
                                         double a = 1.0);

  double f(int x, double t) const {
    return t > 0.0 ? a[x] * std::pow(t, q - 1.0) : 0.0;
  }
  double F(int x, double t) const {
    return t > 0.0 ? a[x] * std::pow(t, q) / q : 0.0;
  }
  /// One-sided derivative; 0 on {t <= 0}.
  double fprime(int x, double t) const {
    return t > 0.0 ? a[x] * (q - 1.0) * std::pow(t, q - 2.0) : 0.0;
  }
};

/// Whole-graph mode (nullopt) or Dirichlet mode on a vertex subset.
using SolveMode = std::optional<VertexSubsetProblem>;

/// Energy functional J(u) = (1/2)(energy - alpha int u^2 dmu) - int F(x,u+) dmu.
/// Dirichlet convention uses E(u) so critical points solve -Du - au = f
/// exactly; GradSq uses the literal int |grad u|^2 dmu = 2E(u) (critical
/// points then solve -2Du - au = f).
double functional_J(const WeightedGraph& g, const VertexFunction& u, double alpha,
                    const PowerNonlinearity& f, const SolveMode& mode,
                    EnergyConvention convention);

/// mu-gradient of J: d/de J(u+ev)|0 = int grad_J * v dmu for admissible v.
/// Zero on boundary/exterior vertices in Dirichlet mode.
VertexFunction gradient_J(const WeightedGraph& g, const VertexFunction& u,
                          double alpha, const PowerNonlinearity& f,
                          const SolveMode& mode, EnergyConvention convention);

enum class HypothesisStatus { Holds, Fails, SpotChecked };

struct HypothesisReport {
  struct Entry {
    std::string name;
    HypothesisStatus status = HypothesisStatus::Holds;
    std::string note;
  };
  std::vector<Entry> entries;  // H1..H5
  bool all_hold() const;
};

/// Diagnostic check of the solvability hypotheses for the power family at
/// growth baseline p: H1/H2 closed form, H3/H4 sampled decay ratios, H5 with
/// the user-supplied superquadraticity exponent (boundary case flagged).
HypothesisReport check_hypotheses(const PowerNonlinearity& f, double p);

struct Endpoint {
  double t = 1.0;
  VertexFunction e;
};

/// Doubles t from 1 until J(t u0) < 0; throws NonConvergenceError
/// ("no descent endpoint") past t = 2^60.
Endpoint find_endpoint(const WeightedGraph& g, const VertexFunction& u0,
                       double alpha, const PowerNonlinearity& f,
                       const SolveMode& mode, EnergyConvention convention);

enum class SignReport { Positive, Nonnegative, SignChanging, Trivial };

std::string to_string(SignReport s);
/// Sign classification with threshold 1e-9; restricted to the interior in
/// Dirichlet mode.
SignReport classify_sign(const WeightedGraph& g, const VertexFunction& u,
                         const SolveMode& mode);

struct TraceEntry {
  int iter = 0;
  double path_max = 0.0;
  double grad_norm = 0.0;
};

struct Solution {
  VertexFunction u;
  double J_value = 0.0;
  double residual = 0.0;  // max_x |-Du - au - f(x,u+)| (convention-scaled)
  SignReport sign = SignReport::Trivial;
  std::vector<TraceEntry> trace;
  bool converged = false;
  std::string status;  // "converged", "not converged", "degenerate critical point ..."
  int newton_iters = 0;
};

struct MountainPassOptions {
  int path_points = 40;        // N; path has N+1 nodes
  int max_steps = 20000;
  double tol = 1e-10;          // residual acceptance
  double grad_tol = 1e-8;      // gradient-norm acceptance
  double switch_threshold = 1e-3;  // hand off to Newton below this
  std::uint64_t seed = 0;
  std::optional<VertexFunction> u0;
  EnergyConvention convention = EnergyConvention::Dirichlet;
};

/// Numerical mountain-pass search: discretize [0, e], flow the path maximizer
/// along -grad J with backtracking and local point redistribution, then polish
/// with damped Newton once the gradient is small.
Solution mountain_pass_solve(const WeightedGraph& g, double alpha,
                             const PowerNonlinearity& f, const SolveMode& mode,
                             const MountainPassOptions& opts = {});

/// Damped Newton on the residual map R(u) = -c Du - au - f(x,u+); falls back
/// to a regularized step near singular Jacobians (degenerate roots converge
/// linearly instead of failing).
Solution newton_refine(const WeightedGraph& g, const VertexFunction& u_init,
                       double alpha, const PowerNonlinearity& f,
                       const SolveMode& mode, EnergyConvention convention,
                       double tol = 1e-10, int max_iters = 200);

struct VerificationReport {
  double residual = 0.0;
  SignReport sign = SignReport::Trivial;
  /// -int u- Du dmu - alpha int (u-)^2 dmu - int u- f(x,u+) dmu; zero for
  /// exact solutions, and with the Gamma(u-,u) bound forces u >= 0.
  double u_minus_test = 0.0;
  double const_lhs = 0.0;  // -alpha int u dmu
  double const_rhs = 0.0;  // int f(x,u+) dmu
  bool const_identity_ok = false;
  /// Whether the constant-function identity is compatible with a nonnegative
  /// nontrivial solution for this sign of alpha.
  bool nonneg_consistent = false;
  std::string note;
};

VerificationReport verify_solution(const WeightedGraph& g, const VertexFunction& u,
                                   double alpha, const PowerNonlinearity& f,
                                   const SolveMode& mode,
                                   EnergyConvention convention = EnergyConvention::Dirichlet);

}  // namespace graphcalc

#pragma once

#include "graphcalc/calculus.hpp"

namespace graphcalc {

/// Eigenpair of -Delta, self-adjoint in the mu-weighted inner product.
/// Eigenfunctions are mu-orthonormal; the sign is fixed so that the first
/// component above 1e-8 in magnitude is positive. Eigenvectors inside a
/// numerically degenerate cluster (gap < 1e-9) share a cluster id and are
/// basis-dependent.
struct EigenPair {
  double lambda = 0.0;
  VertexFunction u;
  double residual = 0.0;
  int cluster = 0;
};

/// Full spectrum of -Delta, ascending. Equivalent generalized symmetric
/// problem L u = lambda M u with L = diag(mu) - W and M = diag(mu).
std::vector<EigenPair> spectrum(const WeightedGraph& g);

enum class EnergyConvention { GradSq, Dirichlet };

/// GradSq: int |grad u|^2 dmu / int u^2 dmu (twice the operator quotient).
/// Dirichlet: E(u) / int u^2 dmu, whose infimum over mean-zero u is lambda_1.
/// Requires u != 0 and mu-mean zero.
double rayleigh_quotient(const WeightedGraph& g, const VertexFunction& u,
                         EnergyConvention convention);

struct DirichletLambda {
  double value = 0.0;
  bool no_boundary = false;
  std::string warning;
};

/// Smallest eigenvalue of -Delta restricted to functions vanishing outside
/// the interior (operator convention, ambient measure). When the interior is
/// the whole vertex set the Dirichlet and Neumann problems coincide and the
/// result is 0 with a warning.
DirichletLambda dirichlet_lambda1(const WeightedGraph& g,
                                  const VertexSubsetProblem& prob);

/// First Dirichlet eigenpair (value and full-length eigenfunction, zero off
/// the interior, mu-normalized). Used by the solver for its default u0.
std::pair<double, VertexFunction> dirichlet_ground_state(
    const WeightedGraph& g, const VertexSubsetProblem& prob);

}  // namespace graphcalc

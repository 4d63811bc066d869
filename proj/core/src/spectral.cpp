#include "graphcalc/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace graphcalc {

namespace {

// L = diag(mu) - W, the unnormalized operator matrix of -Delta pre-multiplied
// by mu.
Eigen::MatrixXd stiffness(const WeightedGraph& g) {
  const int n = g.size();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    L(i, i) = g.mu(i);
    for (const auto& nb : g.neighbors(i)) L(i, nb.v) -= nb.w;
  }
  return L;
}

void fix_sign(VertexFunction& v) {
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > 1e-8) {
      if (v[i] < 0) v = -v;
      return;
    }
}

}  // namespace

std::vector<EigenPair> spectrum(const WeightedGraph& g) {
  const int n = g.size();
  const Eigen::MatrixXd L = stiffness(g);
  const Eigen::MatrixXd M = g.measure().asDiagonal();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(L, M);
  if (es.info() != Eigen::Success)
    throw NonConvergenceError("eigensolver did not converge");

  std::vector<EigenPair> out(n);
  int cluster = 0;
  for (int k = 0; k < n; ++k) {
    EigenPair& p = out[k];
    p.lambda = es.eigenvalues()[k];
    p.u = es.eigenvectors().col(k);
    fix_sign(p.u);
    const VertexFunction r = -laplacian(g, p.u) - p.lambda * p.u;
    p.residual = r.cwiseAbs().maxCoeff();
    if (k > 0 && es.eigenvalues()[k] - es.eigenvalues()[k - 1] >= 1e-9) ++cluster;
    p.cluster = cluster;
  }
  return out;
}

double rayleigh_quotient(const WeightedGraph& g, const VertexFunction& u,
                         EnergyConvention convention) {
  const double usq = mu_dot(g, u, u);
  if (usq == 0.0) throw PreconditionError("rayleigh quotient of zero function");
  const double mean = integrate(g, u);
  if (std::abs(mean) > 1e-9 * g.total_volume() * std::sqrt(usq))
    throw PreconditionError("rayleigh quotient requires mu-mean zero; got mean " +
                            std::to_string(mean / g.total_volume()));
  const double e = dirichlet_energy(g, u);
  return convention == EnergyConvention::Dirichlet ? e / usq : 2.0 * e / usq;
}

static std::pair<double, Eigen::VectorXd> dirichlet_smallest(
    const WeightedGraph& g, const std::vector<int>& interior) {
  const int m = static_cast<int>(interior.size());
  Eigen::MatrixXd L(m, m);
  Eigen::VectorXd mu(m);
  std::unordered_map<int, int> pos;
  for (int i = 0; i < m; ++i) pos[interior[i]] = i;
  L.setZero();
  for (int i = 0; i < m; ++i) {
    const int v = interior[i];
    mu[i] = g.mu(v);
    L(i, i) = g.mu(v);
    for (const auto& nb : g.neighbors(v)) {
      auto it = pos.find(nb.v);
      if (it != pos.end()) L(i, it->second) -= nb.w;
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      L, Eigen::MatrixXd(mu.asDiagonal()));
  if (es.info() != Eigen::Success)
    throw NonConvergenceError("Dirichlet eigensolver did not converge");
  return {es.eigenvalues()[0], es.eigenvectors().col(0)};
}

DirichletLambda dirichlet_lambda1(const WeightedGraph& g,
                                  const VertexSubsetProblem& prob) {
  if (prob.interior.empty()) throw PreconditionError("empty interior");
  if (static_cast<int>(prob.interior.size()) == g.size())
    return {0.0, true, "no boundary; Dirichlet = Neumann"};
  return {dirichlet_smallest(g, prob.interior).first, false, ""};
}

std::pair<double, VertexFunction> dirichlet_ground_state(
    const WeightedGraph& g, const VertexSubsetProblem& prob) {
  if (static_cast<int>(prob.interior.size()) == g.size()) {
    VertexFunction c = VertexFunction::Constant(g.size(), 1.0);
    c /= std::sqrt(mu_dot(g, c, c));
    return {0.0, c};
  }
  auto [lam, v] = dirichlet_smallest(g, prob.interior);
  VertexFunction u = VertexFunction::Zero(g.size());
  for (int i = 0; i < static_cast<int>(prob.interior.size()); ++i)
    u[prob.interior[i]] = v[i];
  fix_sign(u);
  return {lam, u};
}

}  // namespace graphcalc

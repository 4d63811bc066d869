#include "graphcalc/curvature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace graphcalc {

namespace {

std::vector<int> two_ball(const WeightedGraph& g, int x) {
  std::vector<int> ball{x};
  for (const auto& y : g.neighbors(x)) {
    ball.push_back(y.v);
    for (const auto& z : g.neighbors(y.v)) ball.push_back(z.v);
  }
  std::sort(ball.begin(), ball.end());
  ball.erase(std::unique(ball.begin(), ball.end()), ball.end());
  return ball;
}

double delta_at(const WeightedGraph& g, const Eigen::VectorXd& u, int x) {
  double s = 0.0;
  for (const auto& nb : g.neighbors(x)) s += nb.w * (u[nb.v] - u[x]);
  return s / g.mu(x);
}

double gamma_at(const WeightedGraph& g, const Eigen::VectorXd& u, int x) {
  double s = 0.0;
  for (const auto& nb : g.neighbors(x)) {
    const double d = u[nb.v] - u[x];
    s += nb.w * d * d;
  }
  return s / (2.0 * g.mu(x));
}

// Expanded neighbor-sum form of Gamma2(u,u)(x); touches the 2-ball only.
double gamma2_at(const WeightedGraph& g, const Eigen::VectorXd& u, int x) {
  const double dx = g.mu(x);
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;
  for (const auto& y : g.neighbors(x)) {
    double inner = 0.0;
    for (const auto& z : g.neighbors(y.v)) {
      const double d2 = u[x] - 2.0 * u[y.v] + u[z.v];
      inner += z.w * d2 * d2;
    }
    t1 += y.w / g.mu(y.v) * inner;
    const double d1 = u[x] - u[y.v];
    t2 += y.w * d1 * d1;
    t3 += y.w * d1;
  }
  return 0.25 * t1 / dx - 0.5 * t2 / dx + 0.5 * (t3 / dx) * (t3 / dx);
}

// Polarization assembly of the quadratic form phi restricted to `ball`.
template <typename Phi>
Eigen::MatrixXd assemble_form(int n, const std::vector<int>& ball, Phi&& phi) {
  const int b = static_cast<int>(ball.size());
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd diag(b);
  Eigen::MatrixXd Q(b, b);
  for (int i = 0; i < b; ++i) {
    z[ball[i]] = 1.0;
    diag[i] = phi(z);
    z[ball[i]] = 0.0;
    Q(i, i) = diag[i];
  }
  for (int i = 0; i < b; ++i) {
    z[ball[i]] = 1.0;
    for (int j = i + 1; j < b; ++j) {
      z[ball[j]] = 1.0;
      const double both = phi(z);
      z[ball[j]] = 0.0;
      Q(i, j) = Q(j, i) = 0.5 * (both - diag[i] - diag[j]);
    }
    z[ball[i]] = 0.0;
  }
  return Q;
}

struct VertexForms {
  std::vector<int> ball;
  Eigen::MatrixXd A;  // Gamma2 - (1/m)(Delta)^2 part
  Eigen::MatrixXd G;  // Gamma part
};

VertexForms vertex_forms(const WeightedGraph& g, int x, double m) {
  if (m <= 1.0) throw PreconditionError("CD dimension parameter requires m > 1");
  VertexForms f;
  f.ball = two_ball(g, x);
  f.A = assemble_form(g.size(), f.ball, [&](const Eigen::VectorXd& u) {
    const double d = delta_at(g, u, x);
    return gamma2_at(g, u, x) - d * d / m;
  });
  f.G = assemble_form(g.size(), f.ball,
                      [&](const Eigen::VectorXd& u) { return gamma_at(g, u, x); });
  return f;
}

double min_eig(const Eigen::MatrixXd& Q, Eigen::VectorXd* vec = nullptr) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
  if (vec) *vec = es.eigenvectors().col(0);
  return es.eigenvalues()[0];
}

}  // namespace

LocalCDForm local_cd_form(const WeightedGraph& g, int x, double m, double xi) {
  VertexForms f = vertex_forms(g, x, m);
  return {x, f.ball, f.A - xi * f.G};
}

CDCertificate verify_cd(const WeightedGraph& g, double m, double xi,
                        double psd_tol) {
  CDCertificate cert;
  cert.m = m;
  cert.xi = xi;
  cert.holds = true;
  double worst = 0.0;
  for (int x = 0; x < g.size(); ++x) {
    VertexForms f = vertex_forms(g, x, m);
    Eigen::VectorXd vec;
    const double lam = min_eig(f.A - xi * f.G, &vec);
    cert.per_vertex_min_eig[g.label(x)] = lam;
    if (lam < -psd_tol && lam < worst) {
      worst = lam;
      CDWitness w;
      w.vertex = g.label(x);
      w.min_eig = lam;
      for (int i = 0; i < static_cast<int>(f.ball.size()); ++i)
        w.u[g.label(f.ball[i])] = vec[i];
      cert.witness = std::move(w);
      cert.holds = false;
    }
  }
  if (cert.holds) cert.witness.reset();
  return cert;
}

double best_xi(const WeightedGraph& g, double m, double tol) {
  std::vector<VertexForms> forms;
  forms.reserve(g.size());
  for (int x = 0; x < g.size(); ++x) forms.push_back(vertex_forms(g, x, m));

  const auto holds = [&](double xi) {
    for (const auto& f : forms)
      if (min_eig(f.A - xi * f.G) < -1e-10) return false;
    return true;
  };

  // The Lin-Yau point is guaranteed for m >= 2; expand downward otherwise.
  double lo = std::min(2.0 / g.sup_degree_ratio() - 1.0, 0.0);
  int guard = 0;
  while (!holds(lo)) {
    lo -= std::max(1.0, std::abs(lo));
    if (++guard > 200)
      throw NonConvergenceError("best_xi: no lower bracket found");
  }
  double hi = 10.0;
  guard = 0;
  while (holds(hi)) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 200)
      throw NonConvergenceError("best_xi: no upper bracket found");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? lo : hi) = mid;
  }
  return lo;
}

LinYauCertificate lin_yau_certificate(const WeightedGraph& g) {
  const double d = g.sup_degree_ratio();
  return {2.0, 2.0 / d - 1.0, d};
}

}  // namespace graphcalc

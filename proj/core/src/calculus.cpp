#include "graphcalc/calculus.hpp"

#include <cmath>

namespace graphcalc {

namespace {
void check_size(const WeightedGraph& g, const VertexFunction& u) {
  if (u.size() != g.size())
    throw PreconditionError("function length " + std::to_string(u.size()) +
                            " does not match vertex count " +
                            std::to_string(g.size()));
}
}  // namespace

VertexFunction laplacian(const WeightedGraph& g, const VertexFunction& u) {
  check_size(g, u);
  VertexFunction out(g.size());
  for (int x = 0; x < g.size(); ++x) {
    double s = 0.0;
    for (const auto& nb : g.neighbors(x)) s += nb.w * (u[nb.v] - u[x]);
    out[x] = s / g.mu(x);
  }
  return out;
}

VertexFunction gamma(const WeightedGraph& g, const VertexFunction& u,
                     const VertexFunction& v) {
  check_size(g, u);
  check_size(g, v);
  VertexFunction out(g.size());
  for (int x = 0; x < g.size(); ++x) {
    double s = 0.0;
    for (const auto& nb : g.neighbors(x))
      s += nb.w * (u[nb.v] - u[x]) * (v[nb.v] - v[x]);
    out[x] = s / (2.0 * g.mu(x));
  }
  return out;
}

VertexFunction grad_norm_sq(const WeightedGraph& g, const VertexFunction& u) {
  return 2.0 * gamma(g, u, u);
}

VertexFunction gamma2(const WeightedGraph& g, const VertexFunction& u,
                      Gamma2Form form) {
  check_size(g, u);
  if (form == Gamma2Form::Iterated) {
    const VertexFunction du = laplacian(g, u);
    const VertexFunction g_uu = gamma(g, u, u);
    const VertexFunction d_guu = laplacian(g, g_uu);
    const VertexFunction g_udu = gamma(g, u, du);
    return 0.5 * (d_guu - 2.0 * g_udu);
  }
  VertexFunction out(g.size());
  for (int x = 0; x < g.size(); ++x) {
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
    out[x] = 0.25 * t1 / dx - 0.5 * t2 / dx + 0.5 * (t3 / dx) * (t3 / dx);
  }
  return out;
}

double integrate(const WeightedGraph& g, const VertexFunction& u) {
  check_size(g, u);
  return g.measure().dot(u);
}

double mu_dot(const WeightedGraph& g, const VertexFunction& u,
              const VertexFunction& v) {
  check_size(g, u);
  check_size(g, v);
  return (g.measure().array() * u.array() * v.array()).sum();
}

double dirichlet_energy(const WeightedGraph& g, const VertexFunction& u) {
  check_size(g, u);
  double e = 0.0;
  for (const auto& ed : g.edges()) {
    const double d = u[ed.v] - u[ed.u];
    e += ed.w * d * d;
  }
  return e;
}

double norm(const WeightedGraph& g, const VertexFunction& u, NormKind kind) {
  check_size(g, u);
  switch (kind.tag) {
    case NormKind::Tag::Lp: {
      if (kind.p < 1.0) throw PreconditionError("Lp norm requires p >= 1");
      const auto w = g.measure().array() * u.array().abs().pow(kind.p);
      return std::pow(w.sum(), 1.0 / kind.p);
    }
    case NormKind::Tag::SobolevSeminorm: {
      if (kind.p < 1.0) throw PreconditionError("W^{1,p} seminorm requires p >= 1");
      const VertexFunction gsq = grad_norm_sq(g, u);
      const auto w = g.measure().array() * gsq.array().pow(kind.p / 2.0);
      return std::pow(w.sum(), 1.0 / kind.p);
    }
    case NormKind::Tag::AlphaNorm: {
      const double sq = integrate(g, grad_norm_sq(g, u)) -
                        kind.alpha * mu_dot(g, u, u);
      if (sq < 0.0)
        throw PreconditionError("indefinite form: squared alpha-norm = " +
                                std::to_string(sq));
      return std::sqrt(std::max(0.0, sq));
    }
    case NormKind::Tag::Sup:
      return u.size() ? u.cwiseAbs().maxCoeff() : 0.0;
  }
  throw PreconditionError("unknown norm kind");
}

double mu_mean(const WeightedGraph& g, const VertexFunction& u) {
  return integrate(g, u) / g.total_volume();
}

VertexFunction project_mean_zero(const WeightedGraph& g, const VertexFunction& u) {
  return u.array() - mu_mean(g, u);
}

}  // namespace graphcalc

#pragma once

#include "graphcalc/graph.hpp"

namespace graphcalc {

/// One real value per vertex, in the graph's canonical order.
using VertexFunction = Eigen::VectorXd;

/// (Delta u)(x) = (1/mu(x)) sum_{y~x} w_xy (u(y) - u(x)).
VertexFunction laplacian(const WeightedGraph& g, const VertexFunction& u);

/// Gamma(u,v)(x) = (1/(2 mu(x))) sum_{y~x} w_xy (u(y)-u(x)) (v(y)-v(x)).
VertexFunction gamma(const WeightedGraph& g, const VertexFunction& u,
                     const VertexFunction& v);

/// |grad u|^2 (x) = 2 Gamma(u,u)(x).
VertexFunction grad_norm_sq(const WeightedGraph& g, const VertexFunction& u);

enum class Gamma2Form { Iterated, Expanded };

/// Iterated: Gamma2(u,u) = (1/2){Delta Gamma(u,u) - 2 Gamma(u, Delta u)}.
/// Expanded: the explicit three-term neighbor sum; both agree pointwise.
VertexFunction gamma2(const WeightedGraph& g, const VertexFunction& u,
                      Gamma2Form form);

/// integral of u dmu = sum_x mu(x) u(x).
double integrate(const WeightedGraph& g, const VertexFunction& u);

/// mu-weighted inner product: integral of u*v dmu.
double mu_dot(const WeightedGraph& g, const VertexFunction& u,
              const VertexFunction& v);

/// E(u) = integral of Gamma(u,u) dmu = sum over edges of w (u(y)-u(x))^2.
/// Satisfies Green's identity E(u) = integral of u(-Delta u) dmu.
double dirichlet_energy(const WeightedGraph& g, const VertexFunction& u);

struct NormKind {
  enum class Tag { Lp, SobolevSeminorm, AlphaNorm, Sup };
  Tag tag = Tag::Lp;
  double p = 2.0;
  double alpha = 0.0;

  static NormKind lp(double p) { return {Tag::Lp, p, 0.0}; }
  static NormKind sobolev(double p) { return {Tag::SobolevSeminorm, p, 0.0}; }
  static NormKind alpha_norm(double a) { return {Tag::AlphaNorm, 2.0, a}; }
  static NormKind sup() { return {Tag::Sup, 0.0, 0.0}; }
};

/// Lp: (int |u|^p dmu)^{1/p}.  SobolevSeminorm: (int |grad u|^p dmu)^{1/p}.
/// AlphaNorm: (int (|grad u|^2 - alpha u^2) dmu)^{1/2}; throws
/// PreconditionError("indefinite form ...") when the square is negative.
double norm(const WeightedGraph& g, const VertexFunction& u, NormKind kind);

double mu_mean(const WeightedGraph& g, const VertexFunction& u);
/// u minus its mu-mean; on a connected graph the Sobolev seminorm is a norm
/// on this subspace.
VertexFunction project_mean_zero(const WeightedGraph& g, const VertexFunction& u);

}  // namespace graphcalc

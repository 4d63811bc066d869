#pragma once

#include "graphcalc/calculus.hpp"

#include <map>
#include <optional>

namespace graphcalc {

/// Quadratic form of the pointwise CD inequality at one vertex, indexed by
/// the vertices of its 2-ball:
///   u^T Q u = Gamma2(u,u)(x) - (1/m)(Delta u(x))^2 - xi * Gamma(u,u)(x).
/// Values outside the 2-ball do not enter the expression.
struct LocalCDForm {
  int center = 0;
  std::vector<int> ball;  // ascending vertex indices, distance <= 2 from center
  Eigen::MatrixXd Q;
};

LocalCDForm local_cd_form(const WeightedGraph& g, int x, double m, double xi);

struct CDWitness {
  std::string vertex;
  std::map<std::string, double> u;  // minimizing direction on the 2-ball
  double min_eig = 0.0;
};

struct CDCertificate {
  double m = 0.0;
  double xi = 0.0;
  std::map<std::string, double> per_vertex_min_eig;
  bool holds = false;
  std::optional<CDWitness> witness;  // present iff !holds
};

/// CD(m, xi) holds iff the local form is PSD (min eigenvalue >= -psd_tol) at
/// every vertex; the pointwise inequality is quadratic in u, so the "for
/// every u" quantifier is discharged exactly.
CDCertificate verify_cd(const WeightedGraph& g, double m, double xi,
                        double psd_tol = 1e-10);

/// sup{xi : CD(m, xi) holds}, by bisection to absolute tolerance tol.
/// The form is non-increasing in xi on the Gamma-positive cone, so the
/// holding set is a half-line and bisection is valid.
double best_xi(const WeightedGraph& g, double m, double tol = 1e-8);

struct LinYauCertificate {
  double m = 2.0;
  double xi = 0.0;
  double d = 0.0;
};

/// Universal certificate (2, 2/d - 1) with d = sup_degree_ratio; holds on
/// every finite graph.
LinYauCertificate lin_yau_certificate(const WeightedGraph& g);

}  // namespace graphcalc

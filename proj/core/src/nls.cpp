#include "graphcalc/nls.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace graphcalc {

namespace {

constexpr double kSignThreshold = 1e-9;

double convention_factor(EnergyConvention c) {
  return c == EnergyConvention::Dirichlet ? 1.0 : 2.0;
}

std::vector<int> active_set(const WeightedGraph& g, const SolveMode& mode) {
  if (!mode) {
    std::vector<int> all(g.size());
    for (int i = 0; i < g.size(); ++i) all[i] = i;
    return all;
  }
  return mode->interior;
}

void check_admissible(const WeightedGraph& g, const VertexFunction& u,
                      const SolveMode& mode) {
  if (u.size() != g.size())
    throw PreconditionError("function length does not match vertex count");
  if (!mode) return;
  for (int i = 0; i < g.size(); ++i)
    if (!mode->is_interior(i) && std::abs(u[i]) > 1e-12)
      throw PreconditionError("Dirichlet mode requires u = 0 off the interior; "
                              "violated at vertex " + g.label(i));
}

VertexFunction masked(const WeightedGraph& g, VertexFunction u,
                      const SolveMode& mode) {
  if (mode)
    for (int i = 0; i < g.size(); ++i)
      if (!mode->is_interior(i)) u[i] = 0.0;
  return u;
}

// Residual map R(u) = -c Delta u - alpha u - f(x, u+), zeroed off the
// interior in Dirichlet mode. Identical to the mu-gradient of J.
VertexFunction residual_map(const WeightedGraph& g, const VertexFunction& u,
                            double alpha, const PowerNonlinearity& f,
                            const SolveMode& mode, EnergyConvention conv) {
  const double c = convention_factor(conv);
  VertexFunction r = -c * laplacian(g, u) - alpha * u;
  for (int i = 0; i < g.size(); ++i) r[i] -= f.f(i, u[i]);
  return masked(g, std::move(r), mode);
}

double mu_l2(const WeightedGraph& g, const VertexFunction& v) {
  return std::sqrt(mu_dot(g, v, v));
}

}  // namespace

PowerNonlinearity PowerNonlinearity::make(const WeightedGraph& g, double q,
                                          const VertexFunction& a,
                                          std::optional<double> ar_exponent) {
  if (q <= 2.0) throw PreconditionError("power nonlinearity requires q > 2");
  if (a.size() != g.size())
    throw PreconditionError("coefficient field length does not match vertex count");
  if (a.minCoeff() < 0.0)
    throw PreconditionError("coefficient field must be nonnegative");
  PowerNonlinearity f;
  f.q = q;
  f.a = a;
  f.ar_exponent = ar_exponent.value_or(q - 0.5);
  return f;
}

PowerNonlinearity PowerNonlinearity::constant_coef(const WeightedGraph& g,
                                                   double q, double a) {
  return make(g, q, VertexFunction::Constant(g.size(), a));
}

double functional_J(const WeightedGraph& g, const VertexFunction& u, double alpha,
                    const PowerNonlinearity& f, const SolveMode& mode,
                    EnergyConvention convention) {
  check_admissible(g, u, mode);
  const double c = convention_factor(convention);
  double val = 0.5 * (c * dirichlet_energy(g, u) - alpha * mu_dot(g, u, u));
  for (int i = 0; i < g.size(); ++i) val -= g.mu(i) * f.F(i, u[i]);
  return val;
}

VertexFunction gradient_J(const WeightedGraph& g, const VertexFunction& u,
                          double alpha, const PowerNonlinearity& f,
                          const SolveMode& mode, EnergyConvention convention) {
  check_admissible(g, u, mode);
  return residual_map(g, u, alpha, f, mode, convention);
}

bool HypothesisReport::all_hold() const {
  for (const auto& e : entries)
    if (e.status == HypothesisStatus::Fails) return false;
  return true;
}

HypothesisReport check_hypotheses(const PowerNonlinearity& f, double p) {
  if (p <= 2.0) throw PreconditionError("hypothesis check requires p > 2");
  HypothesisReport rep;
  const double amax = f.a.size() ? f.a.maxCoeff() : 0.0;
  const double r = p / (p - 1.0);

  rep.entries.push_back({"H1", HypothesisStatus::Holds,
                         "f(x,t) = a(x)(t+)^{q-1} is continuous in t"});
  rep.entries.push_back({"H2", HypothesisStatus::Holds,
                         "a >= 0 so f >= 0 on t >= 0, and f(x,0) = 0"});

  // H3: log f(t) - beta t^{p/(p-1)} must fall without bound.
  {
    bool ok = true;
    for (double beta : {1.0, 2.0}) {
      double prev = std::numeric_limits<double>::infinity();
      for (double t : {1e1, 1e2, 1e3, 1e4, 1e5, 1e6}) {
        const double lr = (f.q - 1.0) * std::log(t) +
                          (amax > 0 ? std::log(amax) : -700.0) -
                          beta * std::pow(t, r);
        if (lr >= prev) ok = false;
        prev = lr;
      }
      if (prev > -50.0) ok = false;
    }
    rep.entries.push_back({"H3",
                           ok ? HypothesisStatus::SpotChecked
                              : HypothesisStatus::Fails,
                           "sampled log-ratio against exp(beta t^{p/(p-1)}), "
                           "beta in {1,2}, t up to 1e6"});
  }

  // H4: f/t^{p-1} = a t^{q-p} -> 0 iff q > p.
  rep.entries.push_back(
      {"H4", f.q > p ? HypothesisStatus::Holds : HypothesisStatus::Fails,
       f.q > p ? "t^{q-p} -> 0 as t -> 0+ since q > p"
               : "t^{q-p} diverges as t -> 0+ since q <= p"});

  // H5 with the configured superquadraticity exponent q'.
  {
    HypothesisReport::Entry e{"H5", HypothesisStatus::Holds, ""};
    if (amax <= 0.0) {
      e.status = HypothesisStatus::Fails;
      e.note = "f vanishes identically; 0 < q'F fails";
    } else if (f.ar_exponent < f.q) {
      e.note = "q'F(s) = (q'/q) f(s) s < f(s) s strictly since q' = " +
               std::to_string(f.ar_exponent) + " < q = " + std::to_string(f.q);
      if (f.ar_exponent <= p)
        e.note += "; warning: q' <= p weakens the superquadratic decay";
    } else if (f.ar_exponent == f.q) {
      e.status = HypothesisStatus::Fails;
      e.note = "boundary: qF(s) = f(s)s exactly; requires strict inequality q' < q";
    } else {
      e.status = HypothesisStatus::Fails;
      e.note = "q' > q: q'F(s) > f(s)s";
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

Endpoint find_endpoint(const WeightedGraph& g, const VertexFunction& u0,
                       double alpha, const PowerNonlinearity& f,
                       const SolveMode& mode, EnergyConvention convention) {
  check_admissible(g, u0, mode);
  if (u0.minCoeff() < -1e-12 || u0.cwiseAbs().maxCoeff() <= 0.0)
    throw PreconditionError("endpoint search requires u0 >= 0 and u0 != 0");
  double t = 1.0;
  while (t <= std::ldexp(1.0, 60)) {
    if (functional_J(g, t * u0, alpha, f, mode, convention) < 0.0)
      return {t, t * u0};
    t *= 2.0;
  }
  throw NonConvergenceError(
      "no descent endpoint: J(t u0) stayed nonnegative up to t = 2^60");
}

std::string to_string(SignReport s) {
  switch (s) {
    case SignReport::Positive: return "positive";
    case SignReport::Nonnegative: return "nonnegative";
    case SignReport::SignChanging: return "sign_changing";
    case SignReport::Trivial: return "trivial";
  }
  return "unknown";
}

SignReport classify_sign(const WeightedGraph& g, const VertexFunction& u,
                         const SolveMode& mode) {
  bool has_pos = false, has_neg = false, all_pos = true;
  for (int i : active_set(g, mode)) {
    if (u[i] > kSignThreshold) has_pos = true;
    else all_pos = false;
    if (u[i] < -kSignThreshold) has_neg = true;
  }
  if (!has_pos && !has_neg) return SignReport::Trivial;
  if (has_pos && has_neg) return SignReport::SignChanging;
  if (has_neg) return SignReport::SignChanging;  // nonpositive, off the cone
  return all_pos ? SignReport::Positive : SignReport::Nonnegative;
}

Solution newton_refine(const WeightedGraph& g, const VertexFunction& u_init,
                       double alpha, const PowerNonlinearity& f,
                       const SolveMode& mode, EnergyConvention conv,
                       double tol, int max_iters) {
  const double c = convention_factor(conv);
  const std::vector<int> act = active_set(g, mode);
  const int m = static_cast<int>(act.size());
  std::unordered_map<int, int> pos;
  for (int i = 0; i < m; ++i) pos[act[i]] = i;

  VertexFunction u = masked(g, u_init, mode);

  const auto jacobian = [&](const VertexFunction& w) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      const int x = act[i];
      J(i, i) = c - alpha - f.fprime(x, w[x]);
      for (const auto& nb : g.neighbors(x)) {
        auto it = pos.find(nb.v);
        if (it != pos.end()) J(i, it->second) -= c * nb.w / g.mu(x);
      }
    }
    return J;
  };

  Solution sol;
  sol.status = "converged";
  VertexFunction R = residual_map(g, u, alpha, f, mode, conv);
  double r = R.cwiseAbs().maxCoeff();
  int it = 0;
  for (; it < max_iters && r >= 0.01 * tol; ++it) {
    Eigen::VectorXd Ra(m);
    for (int i = 0; i < m; ++i) Ra[i] = R[act[i]];
    const Eigen::MatrixXd J = jacobian(u);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(J);
    Eigen::VectorXd delta = cod.solve(Ra);

    bool accepted = false;
    for (double eta = 1.0; eta >= 1e-10; eta *= 0.5) {
      VertexFunction cand = u;
      for (int i = 0; i < m; ++i) cand[act[i]] -= eta * delta[i];
      VertexFunction Rc = residual_map(g, cand, alpha, f, mode, conv);
      const double rc = Rc.cwiseAbs().maxCoeff();
      if (rc < r) {
        u = std::move(cand);
        R = std::move(Rc);
        r = rc;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Levenberg-Marquardt fallback for near-singular Jacobians.
      bool lm_ok = false;
      const Eigen::MatrixXd JtJ = J.transpose() * J;
      const Eigen::VectorXd JtR = J.transpose() * Ra;
      for (double nu = 1e-12; nu <= 1e4; nu *= 10.0) {
        Eigen::VectorXd d = (JtJ + nu * Eigen::MatrixXd::Identity(m, m))
                                .ldlt()
                                .solve(JtR);
        VertexFunction cand = u;
        for (int i = 0; i < m; ++i) cand[act[i]] -= d[i];
        VertexFunction Rc = residual_map(g, cand, alpha, f, mode, conv);
        const double rc = Rc.cwiseAbs().maxCoeff();
        if (rc < r) {
          u = std::move(cand);
          R = std::move(Rc);
          r = rc;
          lm_ok = true;
          break;
        }
      }
      if (!lm_ok) {
        if (r < tol) break;  // stalled below tolerance: good enough
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
        const double smin = svd.singularValues().minCoeff();
        const double smax = svd.singularValues().maxCoeff();
        sol.status = smin < 1e-12 * std::max(1.0, smax)
                         ? "degenerate critical point: smallest singular value " +
                               std::to_string(smin)
                         : "not converged";
        break;
      }
    }
  }
  if (it == max_iters && r >= tol) sol.status = "not converged";

  sol.u = u;
  sol.residual = r;
  sol.newton_iters = it;
  sol.J_value = functional_J(g, u, alpha, f, mode, conv);
  sol.sign = classify_sign(g, u, mode);
  sol.converged = r < tol && mu_l2(g, R) < 1e-8;
  if (sol.converged) sol.status = "converged";
  return sol;
}

namespace {

VertexFunction default_u0(const WeightedGraph& g, const SolveMode& mode) {
  VertexFunction u0;
  if (!mode) {
    if (g.size() >= 2) {
      u0 = spectrum(g)[1].u.cwiseMax(0.0);
    }
    if (u0.size() == 0 || u0.maxCoeff() <= 0.0)
      u0 = VertexFunction::Constant(g.size(), 1.0);
  } else {
    u0 = dirichlet_ground_state(g, *mode).second.cwiseMax(0.0);
    if (u0.maxCoeff() <= 0.0) {
      u0 = VertexFunction::Zero(g.size());
      u0[mode->interior.front()] = 1.0;
    }
  }
  u0 = u0 / std::sqrt(mu_dot(g, u0, u0));
  return u0;
}

}  // namespace

Solution mountain_pass_solve(const WeightedGraph& g, double alpha,
                             const PowerNonlinearity& f, const SolveMode& mode,
                             const MountainPassOptions& opts) {
  const EnergyConvention conv = opts.convention;
  VertexFunction u0 = opts.u0 ? masked(g, *opts.u0, mode) : default_u0(g, mode);
  const Endpoint ep = find_endpoint(g, u0, alpha, f, mode, conv);

  const int N = std::max(4, opts.path_points);
  const size_t max_nodes = 4096;
  std::vector<VertexFunction> path(N + 1);
  std::vector<double> jval(N + 1);
  for (int i = 0; i <= N; ++i) {
    path[i] = (static_cast<double>(i) / N) * ep.e;
    jval[i] = functional_J(g, path[i], alpha, f, mode, conv);
  }

  const auto argmax_interior = [&] {
    size_t k = 1;
    for (size_t i = 2; i + 1 < path.size(); ++i)
      if (jval[i] > jval[k]) k = i;
    return k;
  };

  std::vector<TraceEntry> trace;
  VertexFunction candidate = path[0];
  bool handed_off = false;
  bool stagnated = false;
  // Reported minimax level: the best (lowest) barrier estimate seen so far.
  // The raw discrete maximum can tick up when a ridge node is reinserted.
  double level = std::numeric_limits<double>::infinity();

  for (int it = 0; it < opts.max_steps; ++it) {
    size_t k = argmax_interior();

    const VertexFunction grad = gradient_J(g, path[k], alpha, f, mode, conv);
    const double gn = mu_l2(g, grad);
    level = std::min(level, jval[k]);
    trace.push_back({it, level, gn});

    // The minimax level must stay above the endpoint values for the saddle
    // characterization to apply; once it collapses the infimizing paths hug
    // u = 0 and the trivial critical point is the honest answer.
    if (jval[k] <= std::max(jval.front(), jval.back()) + 1e-12) {
      candidate = path.front();
      handed_off = true;
      break;
    }

    if (gn < opts.switch_threshold) {
      candidate = path[k];
      handed_off = true;
      break;
    }

    bool accepted = false;
    for (double step = 1.0; step > 1e-16; step *= 0.5) {
      VertexFunction cand = path[k] - step * grad;
      const double jc = functional_J(g, cand, alpha, f, mode, conv);
      if (jc < jval[k] - 1e-4 * step * gn * gn) {
        path[k] = std::move(cand);
        jval[k] = jc;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      candidate = path[k];
      stagnated = true;
      break;
    }

    // Keep the path cohesive: pull a neighbor toward the moved point when
    // that lowers its value.
    for (size_t j : {k - 1, k + 1}) {
      if (j == 0 || j + 1 >= path.size()) continue;
      VertexFunction mid = 0.5 * (path[j] + path[k]);
      const double jm = functional_J(g, mid, alpha, f, mode, conv);
      if (jm <= jval[j]) {
        path[j] = std::move(mid);
        jval[j] = jm;
      }
    }

    // Ridge repair: if a segment midpoint sits above both of its endpoints
    // the discrete path has torn through the barrier between samples;
    // reinsert the midpoint so the minimax keeps seeing the ridge.
    // Right segment first so the left indices stay valid.
    for (size_t left : {k, k - 1}) {
      if (left + 1 >= path.size() || path.size() >= max_nodes) continue;
      VertexFunction mid = 0.5 * (path[left] + path[left + 1]);
      const double jm = functional_J(g, mid, alpha, f, mode, conv);
      if (jm > std::max(jval[left], jval[left + 1]) + 1e-14) {
        path.insert(path.begin() + static_cast<long>(left) + 1, std::move(mid));
        jval.insert(jval.begin() + static_cast<long>(left) + 1, jm);
      }
    }
  }

  if (!handed_off && !stagnated) {
    // step budget exhausted; refine the best candidate anyway
    candidate = path[argmax_interior()];
    stagnated = true;
  }

  Solution sol = newton_refine(g, candidate, alpha, f, mode, conv, opts.tol);
  sol.trace = std::move(trace);
  if (stagnated && !sol.converged) sol.status = "not converged";
  return sol;
}

VerificationReport verify_solution(const WeightedGraph& g, const VertexFunction& u,
                                   double alpha, const PowerNonlinearity& f,
                                   const SolveMode& mode,
                                   EnergyConvention convention) {
  VerificationReport rep;
  const VertexFunction R = residual_map(g, u, alpha, f, mode, convention);
  rep.residual = R.cwiseAbs().maxCoeff();
  rep.sign = classify_sign(g, u, mode);

  const VertexFunction uminus = u.cwiseMin(0.0);
  const VertexFunction du = laplacian(g, u);
  double uf = 0.0;
  for (int i = 0; i < g.size(); ++i) uf += g.mu(i) * uminus[i] * f.f(i, u[i]);
  rep.u_minus_test = -mu_dot(g, uminus, du) - alpha * mu_dot(g, uminus, uminus) - uf;

  rep.const_lhs = -alpha * integrate(g, u);
  double fint = 0.0;
  for (int i = 0; i < g.size(); ++i) fint += g.mu(i) * f.f(i, u[i]);
  rep.const_rhs = fint;
  const double scale = std::max({1.0, std::abs(rep.const_lhs), rep.const_rhs});
  rep.const_identity_ok = std::abs(rep.const_lhs - rep.const_rhs) <= 1e-9 * scale;

  switch (rep.sign) {
    case SignReport::Trivial:
      rep.nonneg_consistent = true;
      rep.note = "trivial candidate; tests pass vacuously";
      break;
    case SignReport::Positive:
    case SignReport::Nonnegative:
      if (alpha > 0.0) {
        rep.nonneg_consistent = false;
        rep.note = "alpha > 0 forces -alpha int u < 0 <= int f(x,u+): no "
                   "nonnegative nontrivial solution can satisfy the identity";
      } else if (alpha == 0.0) {
        rep.nonneg_consistent = rep.const_rhs <= 1e-9;
        rep.note = rep.nonneg_consistent
                       ? "alpha = 0 and int f(x,u+) = 0"
                       : "alpha = 0 requires int f(x,u+) = 0";
      } else {
        rep.nonneg_consistent = rep.const_identity_ok;
        rep.note = rep.const_identity_ok ? "identity consistent"
                                         : "identity violated";
      }
      break;
    case SignReport::SignChanging:
      rep.nonneg_consistent = false;
      rep.note = rep.const_identity_ok
                     ? "candidate changes sign; solves only the u+-modified "
                       "equation off the positive cone"
                     : "candidate changes sign and violates the constant-"
                       "function identity";
      break;
  }
  return rep;
}

}  // namespace graphcalc

// Command-line front door: graph ingestion, subcommand dispatch, JSON report
// emission, corpus runner.
//
// Exit codes: 0 success, 1 validation/user error, 2 numerical non-convergence.

#include "graphcalc/corpus.hpp"
#include "graphcalc/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace graphcalc;
using nlohmann::json;

namespace {

void emit(const json& report, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(output);
    if (!out) throw PreconditionError("cannot open output file: " + output);
    out << report.dump(2) << "\n";
  }
}

VertexFunction parse_coef(const WeightedGraph& g, const std::string& spec) {
  if (spec.rfind("const:", 0) == 0)
    return VertexFunction::Constant(g.size(), std::stod(spec.substr(6)));
  return load_function(g, spec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete graph calculus, curvature-dimension certificates, "
               "spectral/integral inequality checks, and a mountain-pass "
               "solver for -Du - au = f(x,u) on weighted finite graphs"};
  app.require_subcommand(1);

  std::string graph_path, output;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  app.add_option("--output", output, "Report file (default stdout)");
  app.add_option("--seed", seed, "RNG seed for multistart searches");
  app.add_option("--tol", tol, "Residual tolerance override")->check(CLI::PositiveNumber);

  auto add_graph = [&](CLI::App* sub) {
    sub->fallthrough();  // lets --seed/--output/--tol appear after the subcommand
    sub->add_option("--graph", graph_path, "Graph file (.json or edge list)")
        ->required();
  };

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "Eigenvalues and eigenfunctions of -Delta");
  add_graph(sp);

  // curvature
  auto* cv = app.add_subcommand("curvature", "CD(m, xi) certificates");
  add_graph(cv);
  double cv_m = 2.0, cv_xi = 0.0;
  bool cv_best = false, cv_linyau = false;
  cv->add_option("--m", cv_m, "Dimension parameter m > 1");
  auto* xi_opt = cv->add_option("--xi", cv_xi, "Curvature lower bound to verify");
  cv->add_flag("--best-xi", cv_best, "Search the best xi for the given m");
  cv->add_flag("--lin-yau", cv_linyau, "Verify the universal (2, 2/d-1) certificate");

  // check
  auto* ck = app.add_subcommand("check", "Inequality reports");
  add_graph(ck);
  std::string ck_ineq;
  double ck_m = 2.0, ck_xi = 0.0, ck_alpha = 0.0, ck_lambda = 0.0;
  ck->add_option("--ineq", ck_ineq, "lambda-bound | integral | norm-equiv")
      ->required()
      ->check(CLI::IsMember({"lambda-bound", "integral", "norm-equiv"}));
  ck->add_option("--m", ck_m, "Dimension parameter");
  ck->add_option("--xi", ck_xi, "Curvature lower bound");
  ck->add_option("--alpha", ck_alpha, "alpha for norm-equiv");
  auto* lam_opt = ck->add_option("--lambda", ck_lambda,
                                 "Eigenvalue for lambda-bound (default lambda_1)");

  // tm
  auto* tm = app.add_subcommand("tm", "Trudinger-Moser functional supremum estimate");
  add_graph(tm);
  double tm_beta = 2.0, tm_p = 3.0;
  int tm_starts = 16;
  std::string tm_function;
  tm->add_option("--beta", tm_beta, "Exponent coefficient beta > 1");
  tm->add_option("--p", tm_p, "Sobolev exponent p > 2");
  tm->add_option("--starts", tm_starts, "Multistart count");
  tm->add_option("--function", tm_function,
                 "Also evaluate the functional at this vertex function (JSON)");

  // solve
  auto* so = app.add_subcommand("solve", "Mountain-pass solve of -Du - au = f(x,u)");
  add_graph(so);
  double so_alpha = 0.0, so_q = 4.0;
  std::string so_family = "power", so_coef = "const:1", so_mode = "whole";
  std::string so_convention = "dirichlet-energy";
  std::vector<std::string> so_interior;
  so->add_option("--alpha", so_alpha, "Linear parameter alpha")->required();
  so->add_option("--family", so_family, "Nonlinearity family (power)")
      ->check(CLI::IsMember({"power"}));
  so->add_option("--q", so_q, "Power exponent q > 2");
  so->add_option("--coef", so_coef, "Coefficient field: const:<v> or JSON path");
  so->add_option("--mode", so_mode, "whole | dirichlet")
      ->check(CLI::IsMember({"whole", "dirichlet"}));
  so->add_option("--interior", so_interior,
                 "Interior vertex labels (dirichlet mode)")->delimiter(',');
  so->add_option("--convention", so_convention,
                 "dirichlet-energy | grad-sq")
      ->check(CLI::IsMember({"dirichlet-energy", "grad-sq"}));

  // corpus
  auto* co = app.add_subcommand("corpus", "Invariant sweeps over built-in graph families");
  co->fallthrough();
  int co_random = 50, co_maxn = 20;
  std::string co_filter;
  co->add_option("--random-count", co_random, "Number of random graphs");
  co->add_option("--max-n", co_maxn, "Max random graph size");
  co->add_option("--filter", co_filter, "Substring filter on corpus entries");

  CLI11_PARSE(app, argc, argv);

  try {
    json config{{"seed", seed}, {"tol", tol}};
    if (app.got_subcommand(co)) {
      CorpusOptions opts{seed, co_random, co_maxn, co_filter};
      config["subcommand"] = "corpus";
      config["random_count"] = co_random;
      config["max_n"] = co_maxn;
      config["filter"] = co_filter;
      json result = run_corpus_checks(opts);
      json rep{{"tool", kToolName}, {"version", kToolVersion},
               {"config", config}, {"result", result}};
      emit(rep, output);
      return result["all_pass"].get<bool>() ? 0 : 2;
    }

    const WeightedGraph g = WeightedGraph::load(graph_path);
    config["graph"] = graph_path;

    if (app.got_subcommand(sp)) {
      config["subcommand"] = "spectrum";
      emit(report_envelope(g, config, spectrum_to_json(g, spectrum(g))), output);
      return 0;
    }

    if (app.got_subcommand(cv)) {
      config["subcommand"] = "curvature";
      config["m"] = cv_m;
      json result;
      if (cv_linyau) {
        const auto ly = lin_yau_certificate(g);
        config["lin_yau"] = true;
        result = certificate_to_json(g, verify_cd(g, ly.m, ly.xi));
        result["d"] = ly.d;
      } else if (cv_best) {
        const double xi = best_xi(g, cv_m);
        config["best_xi"] = true;
        result = certificate_to_json(g, verify_cd(g, cv_m, xi));
        result["best_xi"] = xi;
      } else if (xi_opt->count()) {
        config["xi"] = cv_xi;
        result = certificate_to_json(g, verify_cd(g, cv_m, cv_xi));
      } else {
        throw PreconditionError("curvature requires --xi, --best-xi, or --lin-yau");
      }
      emit(report_envelope(g, config, std::move(result)), output);
      return 0;
    }

    if (app.got_subcommand(ck)) {
      config["subcommand"] = "check";
      config["ineq"] = ck_ineq;
      json result;
      if (ck_ineq == "lambda-bound") {
        double lam = ck_lambda;
        if (!lam_opt->count()) {
          for (const auto& p : spectrum(g))
            if (p.lambda > 1e-12) { lam = p.lambda; break; }
        }
        config["m"] = ck_m;
        config["xi"] = ck_xi;
        result = inequality_to_json(check_lambda_bound(lam, ck_m, ck_xi));
      } else if (ck_ineq == "integral") {
        config["m"] = ck_m;
        config["xi"] = ck_xi;
        json arr = json::array();
        bool all = true;
        for (const auto& p : spectrum(g)) {
          if (p.lambda < 1e-12) continue;
          const auto rep = check_integral_inequality(g, p, ck_m, ck_xi);
          all = all && rep.holds;
          arr.push_back(inequality_to_json(rep));
        }
        result = {{"reports", arr}, {"all_hold", all},
                  {"alpha_star", alpha_star(spectrum(g)[1].lambda, ck_m, ck_xi)}};
      } else {  // norm-equiv
        config["alpha"] = ck_alpha;
        const auto eq = norm_equivalence(g, ck_alpha);
        result = {{"c1", eq.c1}, {"c2", eq.c2}};
      }
      emit(report_envelope(g, config, std::move(result)), output);
      return 0;
    }

    if (app.got_subcommand(tm)) {
      config["subcommand"] = "tm";
      config["beta"] = tm_beta;
      config["p"] = tm_p;
      config["starts"] = tm_starts;
      AscentOptions opts;
      opts.starts = tm_starts;
      opts.seed = seed;
      const TMEstimate est = tm_sup_estimate(g, tm_beta, tm_p, opts);
      json result = tm_estimate_to_json(g, est);
      if (!tm_function.empty()) {
        const VertexFunction u = load_function(g, tm_function);
        result["functional_at_input"] = tm_functional(g, u, tm_beta, tm_p);
      }
      emit(report_envelope(g, config, result), output);
      return est.converged ? 0 : 2;
    }

    if (app.got_subcommand(so)) {
      config["subcommand"] = "solve";
      config["alpha"] = so_alpha;
      config["family"] = so_family;
      config["q"] = so_q;
      config["coef"] = so_coef;
      config["mode"] = so_mode;
      config["convention"] = so_convention;
      const PowerNonlinearity f =
          PowerNonlinearity::make(g, so_q, parse_coef(g, so_coef));
      SolveMode mode;
      if (so_mode == "dirichlet") {
        if (so_interior.empty())
          throw PreconditionError("dirichlet mode requires --interior");
        config["interior"] = so_interior;
        mode = VertexSubsetProblem::make(g, so_interior);
      }
      MountainPassOptions opts;
      opts.seed = seed;
      opts.tol = tol;
      opts.convention = so_convention == "grad-sq" ? EnergyConvention::GradSq
                                                   : EnergyConvention::Dirichlet;
      const Solution sol = mountain_pass_solve(g, so_alpha, f, mode, opts);
      json result = solution_to_json(g, sol);
      result["verification"] = verification_to_json(
          verify_solution(g, sol.u, so_alpha, f, mode, opts.convention));
      emit(report_envelope(g, config, result), output);
      return sol.converged ? 0 : 2;
    }
  } catch (const NonConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include "graphcalc/corpus.hpp"
#include "graphcalc/curvature.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <random>

using namespace graphcalc;

namespace {

WeightedGraph k2() { return WeightedGraph::build({"a", "b"}, {{"a", "b", 1}}); }

// Direct pointwise evaluation of the CD expression, independent of the form
// assembly path.
double cd_expression(const WeightedGraph& g, const VertexFunction& u, int x,
                     double m, double xi) {
  const VertexFunction g2 = gamma2(g, u, Gamma2Form::Iterated);
  const VertexFunction du = laplacian(g, u);
  const VertexFunction guu = gamma(g, u, u);
  return g2[x] - du[x] * du[x] / m - xi * guu[x];
}

}  // namespace

TEST_CASE("local form matches direct evaluation and kills constants") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<int> nd(2, 10);
    const auto g = random_connected_graph(nd(rng), rng);
    std::uniform_int_distribution<int> xd(0, g.size() - 1);
    const int x = xd(rng);
    const auto form = local_cd_form(g, x, 2.5, 0.3);

    // constant direction is annihilated
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(form.ball.size());
    CHECK((form.Q * ones).cwiseAbs().maxCoeff() < 1e-10);

    for (int k = 0; k < 50; ++k) {
      const VertexFunction u = random_function(g.size(), rng);
      Eigen::VectorXd ub(form.ball.size());
      VertexFunction u_supported = VertexFunction::Zero(g.size());
      for (size_t i = 0; i < form.ball.size(); ++i) {
        ub[i] = u[form.ball[i]];
        u_supported[form.ball[i]] = u[form.ball[i]];
      }
      const double via_form = ub.dot(form.Q * ub);
      const double direct = cd_expression(g, u_supported, x, 2.5, 0.3);
      CHECK(std::abs(via_form - direct) <
            1e-10 * std::max({1.0, std::abs(via_form), std::abs(direct)}));
    }
  }
}

TEST_CASE("locality: values beyond the 2-ball do not enter") {
  const auto g = path_graph(6);
  const auto form = local_cd_form(g, 0, 2.0, 0.0);
  // 2-ball of v0 on a path is {v0, v1, v2}
  CHECK(form.ball == std::vector<int>{0, 1, 2});
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    VertexFunction u = random_function(g.size(), rng);
    VertexFunction v = u;
    v[3] += 10.0;  // distance 3 from v0
    v[5] -= 4.0;
    CHECK(cd_expression(g, u, 0, 2.0, 0.0) ==
          doctest::Approx(cd_expression(g, v, 0, 2.0, 0.0)).epsilon(1e-12));
  }
}

TEST_CASE("K2 satisfies CD(2,1)") {
  const auto g = k2();
  const auto cert = verify_cd(g, 2.0, 1.0);
  CHECK(cert.holds);
  CHECK_FALSE(cert.witness.has_value());
  const auto form = local_cd_form(g, 0, 2.0, 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(form.Q);
  CHECK(es.eigenvalues()[0] > -1e-10);
}

TEST_CASE("failed certificate carries a witness") {
  const auto cert = verify_cd(k2(), 2.0, 1.5);
  CHECK_FALSE(cert.holds);
  REQUIRE(cert.witness.has_value());
  CHECK(cert.witness->min_eig < -1e-10);
}

TEST_CASE("m <= 1 rejected") {
  CHECK_THROWS_AS(verify_cd(k2(), 1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(local_cd_form(k2(), 0, 0.5, 0.0), PreconditionError);
}

TEST_CASE("lin-yau certificate values") {
  const auto c2 = lin_yau_certificate(k2());
  CHECK(c2.m == 2.0);
  CHECK(c2.xi == doctest::Approx(1.0));

  const auto tri = lin_yau_certificate(cycle_graph(3));
  CHECK(tri.xi == doctest::Approx(0.0));

  // mu(x)/w = 4 somewhere -> xi = -0.5
  const auto g = WeightedGraph::build(
      {"a", "b", "c", "d", "e"},
      {{"a", "b", 1}, {"a", "c", 1}, {"a", "d", 1}, {"a", "e", 1}});
  CHECK(g.sup_degree_ratio() == doctest::Approx(4.0));
  CHECK(lin_yau_certificate(g).xi == doctest::Approx(-0.5));
}

TEST_CASE("lin-yau holds across graph families") {
  std::mt19937_64 rng(303);
  std::vector<WeightedGraph> gs{path_graph(7), cycle_graph(6), complete_graph(5),
                                star_graph(6)};
  for (int i = 0; i < 10; ++i) {
    std::uniform_int_distribution<int> nd(2, 12);
    gs.push_back(random_connected_graph(nd(rng), rng));
  }
  for (const auto& g : gs) {
    const auto ly = lin_yau_certificate(g);
    CHECK(verify_cd(g, ly.m, ly.xi).holds);
  }
}

TEST_CASE("monotonicity in xi and m") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 8; ++trial) {
    std::uniform_int_distribution<int> nd(3, 9);
    const auto g = random_connected_graph(nd(rng), rng);
    const double xi = best_xi(g, 2.0);
    CHECK(verify_cd(g, 2.0, xi - 1e-6).holds);
    CHECK_FALSE(verify_cd(g, 2.0, xi + 1e-6).holds);
    // xi-monotonicity below the optimum
    CHECK(verify_cd(g, 2.0, xi - 1.0).holds);
    // m-monotonicity: CD(2, xi') implies CD(3, xi')
    CHECK(verify_cd(g, 3.0, xi - 1e-6).holds);
  }
}

TEST_CASE("best xi dominates the lin-yau bound") {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 8; ++trial) {
    std::uniform_int_distribution<int> nd(2, 10);
    const auto g = random_connected_graph(nd(rng), rng);
    const auto ly = lin_yau_certificate(g);
    CHECK(best_xi(g, 2.0) >= ly.xi - 1e-8);
  }
  CHECK(best_xi(k2(), 2.0) >= 1.0 - 1e-8);
}

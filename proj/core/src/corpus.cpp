#include "graphcalc/corpus.hpp"

#include <algorithm>

namespace graphcalc {

namespace {
std::vector<std::string> labels(int n) {
  std::vector<std::string> v(n);
  for (int i = 0; i < n; ++i) v[i] = "v" + std::to_string(i);
  return v;
}
}  // namespace

WeightedGraph path_graph(int n, double w) {
  std::vector<std::tuple<std::string, std::string, double>> es;
  for (int i = 0; i + 1 < n; ++i)
    es.emplace_back("v" + std::to_string(i), "v" + std::to_string(i + 1), w);
  return WeightedGraph::build(labels(n), es);
}

WeightedGraph cycle_graph(int n, double w) {
  std::vector<std::tuple<std::string, std::string, double>> es;
  for (int i = 0; i < n; ++i)
    es.emplace_back("v" + std::to_string(i), "v" + std::to_string((i + 1) % n), w);
  return WeightedGraph::build(labels(n), es);
}

WeightedGraph complete_graph(int n, double w) {
  std::vector<std::tuple<std::string, std::string, double>> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      es.emplace_back("v" + std::to_string(i), "v" + std::to_string(j), w);
  return WeightedGraph::build(labels(n), es);
}

WeightedGraph star_graph(int n, double w) {
  std::vector<std::tuple<std::string, std::string, double>> es;
  for (int i = 1; i < n; ++i)
    es.emplace_back("v0", "v" + std::to_string(i), w);
  return WeightedGraph::build(labels(n), es);
}

WeightedGraph random_connected_graph(int n, std::mt19937_64& rng, double w_min,
                                     double w_max, double extra_edge_prob) {
  std::uniform_real_distribution<double> wdist(w_min, w_max);
  std::uniform_real_distribution<double> p01(0.0, 1.0);
  std::vector<std::tuple<std::string, std::string, double>> es;
  std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
  // random spanning tree: attach each new vertex to a uniformly chosen earlier one
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    const int j = pick(rng);
    used[i][j] = used[j][i] = 1;
    es.emplace_back("v" + std::to_string(j), "v" + std::to_string(i), wdist(rng));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!used[i][j] && p01(rng) < extra_edge_prob)
        es.emplace_back("v" + std::to_string(i), "v" + std::to_string(j),
                        wdist(rng));
  return WeightedGraph::build(labels(n), es);
}

std::vector<CorpusEntry> standard_corpus(std::uint64_t seed, int random_count,
                                         int max_random_n) {
  std::vector<CorpusEntry> out;
  for (int n = 2; n <= 10; ++n)
    out.push_back({"path-" + std::to_string(n), path_graph(n)});
  for (int n = 3; n <= 10; ++n)
    out.push_back({"cycle-" + std::to_string(n), cycle_graph(n)});
  for (int n = 2; n <= 8; ++n)
    out.push_back({"complete-" + std::to_string(n), complete_graph(n)});
  for (int n = 3; n <= 10; ++n)
    out.push_back({"star-" + std::to_string(n), star_graph(n)});
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 17);
  std::uniform_int_distribution<int> ndist(2, std::max(2, max_random_n));
  for (int k = 0; k < random_count; ++k) {
    const int n = ndist(rng);
    out.push_back({"random-" + std::to_string(k) + "-n" + std::to_string(n),
                   random_connected_graph(n, rng)});
  }
  return out;
}

Eigen::VectorXd random_function(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = dist(rng);
  return u;
}

}  // namespace graphcalc

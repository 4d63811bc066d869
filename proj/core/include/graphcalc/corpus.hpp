#pragma once

#include "graphcalc/graph.hpp"

#include <random>

namespace graphcalc {

WeightedGraph path_graph(int n, double w = 1.0);
WeightedGraph cycle_graph(int n, double w = 1.0);
WeightedGraph complete_graph(int n, double w = 1.0);
/// Star with one hub and n-1 leaves; n >= 3 gives at least two leaves.
WeightedGraph star_graph(int n, double w = 1.0);

/// Connected graph on n vertices: a random spanning tree plus random extra
/// edges, weights uniform in [w_min, w_max]. Deterministic given the engine
/// state.
WeightedGraph random_connected_graph(int n, std::mt19937_64& rng,
                                     double w_min = 0.1, double w_max = 10.0,
                                     double extra_edge_prob = 0.3);

struct CorpusEntry {
  std::string name;
  WeightedGraph graph;
};

/// The standard sweep corpus: paths n=2..10, cycles n=3..10, complete
/// n=2..8, stars n=3..10, and `random_count` random connected weighted
/// graphs with n <= max_random_n.
std::vector<CorpusEntry> standard_corpus(std::uint64_t seed = 0,
                                         int random_count = 50,
                                         int max_random_n = 20);

/// Uniform[-1,1] vertex function, deterministic given the engine state.
Eigen::VectorXd random_function(int n, std::mt19937_64& rng);

}  // namespace graphcalc

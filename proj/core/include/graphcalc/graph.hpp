#pragma once

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace graphcalc {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid graph input (duplicate edge, self-loop, disconnected, ...).
struct GraphError : Error {
  using Error::Error;
};

/// An operation was called outside its domain.
struct PreconditionError : Error {
  using Error::Error;
};

/// An iterative routine failed to reach its tolerance.
struct NonConvergenceError : Error {
  using Error::Error;
};

/// A connected finite graph with symmetric positive edge weights and the
/// degree measure mu(x) = sum of incident weights. Immutable once built.
class WeightedGraph {
 public:
  struct Neighbor {
    int v;
    double w;
  };
  struct Edge {
    int u;
    int v;
    double w;
  };

  /// Builds and fully validates a graph. Vertex order is input order and is
  /// the canonical order for all VertexFunction values.
  static WeightedGraph build(
      std::vector<std::string> vertices,
      const std::vector<std::tuple<std::string, std::string, double>>& edges);

  static WeightedGraph from_json(const nlohmann::json& j);
  /// Plain-text edge list: one "x y w" triple per line, vertices in order of
  /// first appearance. Lines starting with '#' are ignored.
  static WeightedGraph from_edge_list_text(const std::string& text);
  /// Dispatches on extension: .json -> JSON format, anything else -> edge list.
  static WeightedGraph load(const std::string& path);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }
  /// Throws GraphError for unknown labels.
  int index_of(const std::string& label) const;

  double mu(int i) const { return mu_[i]; }
  const Eigen::VectorXd& measure() const { return mu_; }
  const std::vector<Neighbor>& neighbors(int i) const { return adj_[i]; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// d = max over vertices x and neighbors y of mu(x)/w_xy.
  double sup_degree_ratio() const;
  /// Vol V = sum_x mu(x).
  double total_volume() const { return mu_.sum(); }

  nlohmann::json to_json() const;
  /// FNV-1a hash of the canonical serialization, as a hex string.
  std::string canonical_hash() const;

 private:
  WeightedGraph() = default;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<Edge> edges_;
  Eigen::VectorXd mu_;
};

/// A Dirichlet problem domain: interior vertex set plus the computed boundary
/// (vertices adjacent to the interior but not in it).
struct VertexSubsetProblem {
  std::vector<int> interior;  // ascending
  std::vector<int> boundary;  // ascending

  static VertexSubsetProblem make(const WeightedGraph& g,
                                  const std::vector<std::string>& interior_labels);
  static VertexSubsetProblem make_indices(const WeightedGraph& g,
                                          std::vector<int> interior);

  bool is_interior(int v) const;
};

}  // namespace graphcalc

#include "graphcalc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

namespace graphcalc {

WeightedGraph WeightedGraph::build(
    std::vector<std::string> vertices,
    const std::vector<std::tuple<std::string, std::string, double>>& edges) {
  WeightedGraph g;
  g.labels_ = std::move(vertices);
  for (int i = 0; i < static_cast<int>(g.labels_.size()); ++i) {
    if (!g.index_.emplace(g.labels_[i], i).second)
      throw GraphError("duplicate vertex: " + g.labels_[i]);
  }
  const int n = g.size();
  if (n == 0) throw GraphError("empty vertex list");
  g.adj_.resize(n);

  std::unordered_map<long long, bool> seen;
  for (const auto& [a, b, w] : edges) {
    const int ia = g.index_of(a);
    const int ib = g.index_of(b);
    if (ia == ib) throw GraphError("self-loop: " + a);
    if (w <= 0.0)
      throw GraphError("nonpositive weight: " + a + "-" + b + " (" +
                       std::to_string(w) + ")");
    const long long key =
        static_cast<long long>(std::min(ia, ib)) * n + std::max(ia, ib);
    if (!seen.emplace(key, true).second)
      throw GraphError("duplicate edge: " + a + "-" + b);
    g.adj_[ia].push_back({ib, w});
    g.adj_[ib].push_back({ia, w});
    g.edges_.push_back({std::min(ia, ib), std::max(ia, ib), w});
  }

  g.mu_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (g.adj_[i].empty()) throw GraphError("isolated vertex: " + g.labels_[i]);
    double m = 0.0;
    for (const auto& nb : g.adj_[i]) m += nb.w;
    g.mu_[i] = m;
  }

  // connectivity (BFS from vertex 0)
  std::vector<char> reached(n, 0);
  std::queue<int> q;
  q.push(0);
  reached[0] = 1;
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (const auto& nb : g.adj_[x])
      if (!reached[nb.v]) {
        reached[nb.v] = 1;
        q.push(nb.v);
      }
  }
  for (int i = 0; i < n; ++i)
    if (!reached[i])
      throw GraphError("disconnected graph: vertex " + g.labels_[i] +
                       " unreachable from " + g.labels_[0]);
  return g;
}

int WeightedGraph::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw GraphError("unknown vertex: " + label);
  return it->second;
}

double WeightedGraph::sup_degree_ratio() const {
  double d = 0.0;
  for (int i = 0; i < size(); ++i)
    for (const auto& nb : adj_[i]) d = std::max(d, mu_[i] / nb.w);
  return d;
}

WeightedGraph WeightedGraph::from_json(const nlohmann::json& j) {
  if (!j.contains("vertices") || !j.contains("edges"))
    throw GraphError("graph JSON must contain \"vertices\" and \"edges\"");
  std::vector<std::string> vs = j.at("vertices").get<std::vector<std::string>>();
  std::vector<std::tuple<std::string, std::string, double>> es;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw GraphError("edge entry must be [a, b, w]: " + e.dump());
    es.emplace_back(e[0].get<std::string>(), e[1].get<std::string>(),
                    e[2].get<double>());
  }
  return build(std::move(vs), es);
}

WeightedGraph WeightedGraph::from_edge_list_text(const std::string& text) {
  std::vector<std::string> vs;
  std::unordered_map<std::string, bool> seen;
  std::vector<std::tuple<std::string, std::string, double>> es;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string a, b;
    double w;
    if (!(ls >> a >> b >> w)) throw GraphError("malformed edge line: " + line);
    for (const auto& v : {a, b})
      if (seen.emplace(v, true).second) vs.push_back(v);
    es.emplace_back(a, b, w);
  }
  return build(std::move(vs), es);
}

WeightedGraph WeightedGraph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return from_json(nlohmann::json::parse(buf.str()));
  return from_edge_list_text(buf.str());
}

nlohmann::json WeightedGraph::to_json() const {
  nlohmann::json j;
  j["vertices"] = labels_;
  auto& je = j["edges"] = nlohmann::json::array();
  for (const auto& e : edges_)
    je.push_back({labels_[e.u], labels_[e.v], e.w});
  return j;
}

std::string WeightedGraph::canonical_hash() const {
  const std::string s = to_json().dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

VertexSubsetProblem VertexSubsetProblem::make(
    const WeightedGraph& g, const std::vector<std::string>& interior_labels) {
  std::vector<int> interior;
  for (const auto& l : interior_labels) interior.push_back(g.index_of(l));
  return make_indices(g, std::move(interior));
}

VertexSubsetProblem VertexSubsetProblem::make_indices(const WeightedGraph& g,
                                                      std::vector<int> interior) {
  if (interior.empty()) throw PreconditionError("empty interior");
  std::sort(interior.begin(), interior.end());
  interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
  std::vector<char> in(g.size(), 0);
  for (int v : interior) in[v] = 1;
  std::vector<int> boundary;
  for (int v : interior)
    for (const auto& nb : g.neighbors(v))
      if (!in[nb.v]) {
        in[nb.v] = 2;
        boundary.push_back(nb.v);
      }
  std::sort(boundary.begin(), boundary.end());
  return {std::move(interior), std::move(boundary)};
}

bool VertexSubsetProblem::is_interior(int v) const {
  return std::binary_search(interior.begin(), interior.end(), v);
}

}  // namespace graphcalc

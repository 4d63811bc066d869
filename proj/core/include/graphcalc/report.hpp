#pragma once

#include "graphcalc/curvature.hpp"
#include "graphcalc/inequality.hpp"
#include "graphcalc/nls.hpp"

#include <nlohmann/json.hpp>

namespace graphcalc {

inline constexpr const char* kToolName = "graphcalc";
inline constexpr const char* kToolVersion = "0.1.0";

/// Report envelope: tool version, graph hash, and the fully resolved config.
/// Reports are deterministic byte-for-byte given the same config and seed.
nlohmann::json report_envelope(const WeightedGraph& g, nlohmann::json config,
                               nlohmann::json result);

nlohmann::json function_to_json(const WeightedGraph& g, const VertexFunction& u);
VertexFunction function_from_json(const WeightedGraph& g, const nlohmann::json& j);
VertexFunction load_function(const WeightedGraph& g, const std::string& path);

nlohmann::json spectrum_to_json(const WeightedGraph& g,
                                const std::vector<EigenPair>& spec,
                                bool include_functions = true);
nlohmann::json certificate_to_json(const WeightedGraph& g, const CDCertificate& c);
nlohmann::json inequality_to_json(const InequalityReport& r);
nlohmann::json tm_estimate_to_json(const WeightedGraph& g, const TMEstimate& e);
nlohmann::json solution_to_json(const WeightedGraph& g, const Solution& s,
                                bool include_trace = true);
nlohmann::json verification_to_json(const VerificationReport& r);
nlohmann::json hypotheses_to_json(const HypothesisReport& r);

struct CorpusOptions {
  std::uint64_t seed = 0;
  int random_count = 50;
  int max_random_n = 20;
  std::string filter;  // substring filter on entry names; empty = all
};

/// Runs the invariant sweeps over the built-in graph families: Lin-Yau
/// certificates, dual-formula Gamma2 agreement, divergence/Green identities,
/// and the integral inequality with the certified best xi. Returns the
/// pass/fail matrix.
nlohmann::json run_corpus_checks(const CorpusOptions& opts);

}  // namespace graphcalc

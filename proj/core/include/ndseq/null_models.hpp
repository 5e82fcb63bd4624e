#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ndseq/graph.hpp"
#include "ndseq/report.hpp"

namespace ndseq {

struct RewireConfig {
    std::uint32_t swaps_per_edge = 10;
    /// Attempts are capped at max_attempts_factor * swaps_per_edge * m.
    std::uint32_t max_attempts_factor = 100;
    std::uint64_t seed = 0;
};

struct RewireResult {
    Graph graph;
    std::uint64_t swaps = 0;
    std::uint64_t attempts = 0;
    bool quota_met = false;
};

/// Degree-preserving double edge swaps: pick two distinct edges uniformly,
/// (a,b),(c,d) -> (a,d),(c,b) with a random orientation of the second edge,
/// rejecting swaps that create a self-loop or an existing edge. Stops after
/// swaps_per_edge * m successful swaps or when the attempt cap is hit, in
/// which case the best-effort graph is returned with quota_met = false.
RewireResult rewire(const Graph& g, const RewireConfig& cfg);

/// Per-realization seed derived from a base seed (splitmix64 of both).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

struct ErdosRenyi {
    std::size_t n;
    double p;
};
struct RandomGeometric {
    std::size_t n;
    double radius;
    std::size_t dim = 2;  ///< unit hypercube [0,1]^dim, Euclidean distance
};
struct WattsStrogatz {
    std::size_t n;
    std::size_t k;  ///< even; ring neighbours per node
    double beta;
};
struct BarabasiAlbert {
    std::size_t n;
    std::size_t m0;        ///< seed clique order
    std::size_t m_attach;  ///< edges added per new node, <= m0
};
using ModelSpec = std::variant<ErdosRenyi, RandomGeometric, WattsStrogatz, BarabasiAlbert>;

/// Throws ValidationError on out-of-range parameters.
Graph generate(const ModelSpec& model, std::uint64_t seed);

struct IndexSummary {
    std::optional<double> mean;
    std::optional<double> sd;  ///< sample standard deviation; 0 for one value
    std::size_t defined = 0;
};

struct NullEnsemble {
    std::vector<IndexReport> reports;
    std::vector<RewireResult> rewiring;  ///< graphs dropped, counters kept
    std::map<std::string, IndexSummary> summary;
    std::size_t realizations = 0;
};

/// `count` rewired realizations with seeds derive_seed(cfg.seed, i), scored
/// with `analysis` and processed on `threads` workers. Reports are stored in
/// realization order.
NullEnsemble ensemble(const Graph& g, std::size_t count, const RewireConfig& cfg,
                      const AnalysisOptions& analysis, unsigned threads = 1);

IndexSummary summarise(const std::vector<std::optional<double>>& values);

}  // namespace ndseq

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ndseq/nds.hpp"

namespace ndseq {

enum class VarianceMode { population, sample };

/// Divisor of the node heterogeneity sum: every node (as defined) or only the
/// nodes of degree > 1 that contribute a term.
enum class HeterogeneityDivisor { all_nodes, contributing_nodes };

/// Overall scale of hierarchical complexity. `per_node` divides the class
/// average by n and is the convention that reproduces published reference
/// values; `as_written` omits that factor.
enum class ComplexityScale { per_node, as_written };

struct NdsOptions {
    VarianceMode variance = VarianceMode::sample;
    HeterogeneityDivisor divisor = HeterogeneityDivisor::all_nodes;
    ComplexityScale complexity_scale = ComplexityScale::per_node;
    double multi_order_threshold = 0.5;
};

struct Heterogeneity {
    double value = 0.0;
    std::size_t contributors = 0;  ///< nodes with degree > 1; 0 means "no support"
};

/// Mean variance of the neighbourhood degree sequences of nodes with k > 1.
Heterogeneity node_heterogeneity(const NdsTable& t, VarianceMode mode,
                                 HeterogeneityDivisor divisor = HeterogeneityDivisor::all_nodes);

/// Node heterogeneity divided by var(k) under the same variance convention.
/// Undefined when var(k) = 0.
std::optional<double> relative_node_heterogeneity(
    const NdsTable& t, VarianceMode mode,
    HeterogeneityDivisor divisor = HeterogeneityDivisor::all_nodes);

/// Fraction of nodes whose sequence equals that of at least one *other* node.
std::optional<double> neighbourhood_similarity(const NdsTable& t);

/// 1 - mean of omega_p over degrees p >= 1 held by at least two nodes.
/// Undefined when no such degree exists.
std::optional<double> neighbourhood_organisation(std::span<const DegreeClassSummary> summaries);

/// Mean over shared degrees of the average element-wise variance of the
/// class's sequences. Undefined when no degree is shared.
std::optional<double> hierarchical_complexity(const NdsTable& t,
                                              std::span<const DegreeClassSummary> summaries,
                                              ComplexityScale scale = ComplexityScale::per_node);
std::optional<double> hierarchical_complexity(const NdsTable& t,
                                              ComplexityScale scale = ComplexityScale::per_node);

/// Hierarchical complexity with each class term weighted by its omega_p.
std::optional<double> hierarchical_complexity_corrected(
    const NdsTable& t, std::span<const DegreeClassSummary> summaries,
    ComplexityScale scale = ComplexityScale::per_node);

/// Degrees p with 1 < |sigma_p| <= ratio_threshold * q_p.
std::vector<Degree> multi_ordered_degrees(std::span<const DegreeClassSummary> summaries,
                                          double ratio_threshold = 0.5);

/// Degrees held by at least two nodes, excluding degree 0.
std::vector<Degree> shared_degrees(std::span<const DegreeClassSummary> summaries);

struct NdsIndexSet {
    double V_n = 0.0;
    std::optional<double> V_n_hat;
    std::optional<double> S;
    std::optional<double> Omega;
    std::optional<double> R;
    std::optional<double> R_Omega;
    std::vector<DegreeClassSummary> per_degree;
    std::vector<Degree> multi_ordered;
    std::vector<std::string> warnings;
};

NdsIndexSet compute_nds_indices(const NdsTable& t, const NdsOptions& options = {});
NdsIndexSet compute_nds_indices(const Graph& g, const NdsOptions& options = {});

}  // namespace ndseq

#include "ndseq/indices.hpp"

#include <string>

namespace ndseq {
namespace {

template <class Range>
double variance(const Range& xs, VarianceMode mode) {
    const auto k = static_cast<double>(std::size(xs));
    double mean = 0.0;
    for (auto x : xs) mean += static_cast<double>(x);
    mean /= k;
    double ss = 0.0;
    for (auto x : xs) {
        const double d = static_cast<double>(x) - mean;
        ss += d * d;
    }
    return ss / (mode == VarianceMode::sample ? k - 1.0 : k);
}

bool in_shared_degree(const DegreeClassSummary& c) { return c.p >= 1 && c.q >= 2; }

// Sum over j and members of (s_i(j) - mu(j))^2 for one degree class.
double class_scatter(const NdsTable& t, const DegreeClassSummary& c) {
    std::vector<double> mean(c.p, 0.0);
    for (NodeId i : c.members) {
        auto s = t.sequence(i);
        for (Degree j = 0; j < c.p; ++j) mean[j] += static_cast<double>(s[j]);
    }
    for (auto& m : mean) m /= static_cast<double>(c.q);
    double ss = 0.0;
    for (NodeId i : c.members) {
        auto s = t.sequence(i);
        for (Degree j = 0; j < c.p; ++j) {
            const double d = static_cast<double>(s[j]) - mean[j];
            ss += d * d;
        }
    }
    return ss;
}

std::optional<double> complexity(const NdsTable& t, std::span<const DegreeClassSummary> summaries,
                                 ComplexityScale scale, bool weight_by_omega) {
    std::size_t shared = 0;
    double total = 0.0;
    for (const auto& c : summaries) {
        if (!in_shared_degree(c)) continue;
        ++shared;
        double term = class_scatter(t, c) /
                      (static_cast<double>(c.p) * static_cast<double>(c.q - 1));
        if (weight_by_omega) term *= *c.omega;
        total += term;
    }
    if (shared == 0) return std::nullopt;
    double r = total / static_cast<double>(shared);
    if (scale == ComplexityScale::per_node) r /= static_cast<double>(t.size());
    return r;
}

}  // namespace

Heterogeneity node_heterogeneity(const NdsTable& t, VarianceMode mode,
                                 HeterogeneityDivisor divisor) {
    Heterogeneity h;
    double sum = 0.0;
    for (NodeId i = 0; i < t.size(); ++i) {
        if (t.length(i) <= 1) continue;
        sum += variance(t.sequence(i), mode);
        ++h.contributors;
    }
    if (h.contributors == 0) return h;
    const auto denom = divisor == HeterogeneityDivisor::all_nodes ? t.size() : h.contributors;
    h.value = sum / static_cast<double>(denom);
    return h;
}

std::optional<double> relative_node_heterogeneity(const NdsTable& t, VarianceMode mode,
                                                  HeterogeneityDivisor divisor) {
    if (t.size() < 2) return std::nullopt;
    std::vector<Degree> k(t.size());
    for (NodeId i = 0; i < t.size(); ++i) k[i] = t.length(i);
    const double var_k = variance(k, mode);
    if (var_k <= 0.0) return std::nullopt;
    return node_heterogeneity(t, mode, divisor).value / var_k;
}

std::optional<double> neighbourhood_similarity(const NdsTable& t) {
    if (t.size() == 0) return std::nullopt;
    std::size_t matched = 0;
    for (NodeId i = 0; i < t.size(); ++i) {
        if (t.multiplicity(i) >= 2) ++matched;
    }
    return static_cast<double>(matched) / static_cast<double>(t.size());
}

std::optional<double> neighbourhood_organisation(std::span<const DegreeClassSummary> summaries) {
    std::size_t shared = 0;
    double sum = 0.0;
    for (const auto& c : summaries) {
        if (!in_shared_degree(c)) continue;
        ++shared;
        sum += *c.omega;
    }
    if (shared == 0) return std::nullopt;
    return 1.0 - sum / static_cast<double>(shared);
}

std::optional<double> hierarchical_complexity(const NdsTable& t,
                                              std::span<const DegreeClassSummary> summaries,
                                              ComplexityScale scale) {
    return complexity(t, summaries, scale, false);
}

std::optional<double> hierarchical_complexity(const NdsTable& t, ComplexityScale scale) {
    auto summaries = degree_class_summaries(t);
    return complexity(t, summaries, scale, false);
}

std::optional<double> hierarchical_complexity_corrected(
    const NdsTable& t, std::span<const DegreeClassSummary> summaries, ComplexityScale scale) {
    return complexity(t, summaries, scale, true);
}

std::vector<Degree> multi_ordered_degrees(std::span<const DegreeClassSummary> summaries,
                                          double ratio_threshold) {
    std::vector<Degree> out;
    for (const auto& c : summaries) {
        const auto distinct = c.sigma.size();
        if (distinct > 1 &&
            static_cast<double>(distinct) <= ratio_threshold * static_cast<double>(c.q)) {
            out.push_back(c.p);
        }
    }
    return out;
}

std::vector<Degree> shared_degrees(std::span<const DegreeClassSummary> summaries) {
    std::vector<Degree> out;
    for (const auto& c : summaries) {
        if (in_shared_degree(c)) out.push_back(c.p);
    }
    return out;
}

NdsIndexSet compute_nds_indices(const NdsTable& t, const NdsOptions& options) {
    NdsIndexSet r;
    r.per_degree = degree_class_summaries(t);

    auto h = node_heterogeneity(t, options.variance, options.divisor);
    r.V_n = h.value;
    if (h.contributors == 0) {
        r.warnings.emplace_back("no node has degree > 1; node heterogeneity set to 0");
    }
    r.V_n_hat = relative_node_heterogeneity(t, options.variance, options.divisor);
    r.S = neighbourhood_similarity(t);
    r.Omega = neighbourhood_organisation(r.per_degree);
    r.R = hierarchical_complexity(t, r.per_degree, options.complexity_scale);
    r.R_Omega = hierarchical_complexity_corrected(t, r.per_degree, options.complexity_scale);
    r.multi_ordered = multi_ordered_degrees(r.per_degree, options.multi_order_threshold);

    if (!r.V_n_hat) r.warnings.emplace_back("degree variance is zero; V_n_hat undefined");
    if (!r.Omega) {
        r.warnings.emplace_back("no degree is shared by two nodes; Omega, R, R_Omega undefined");
    }
    return r;
}

NdsIndexSet compute_nds_indices(const Graph& g, const NdsOptions& options) {
    return compute_nds_indices(NdsTable(g), options);
}

}  // namespace ndseq

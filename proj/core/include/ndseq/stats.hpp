#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ndseq/report.hpp"

namespace ndseq {

/// 1-based ranks with ties replaced by their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation: Pearson correlation of average ranks. Pairs where
/// either side is undefined are dropped first. Undefined when fewer than
/// three pairs remain or either ranked side is constant. Throws
/// std::invalid_argument on length mismatch.
std::optional<double> spearman(std::span<const std::optional<double>> x,
                               std::span<const std::optional<double>> y);
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

struct PairedTestResult {
    double p_value = 1.0;       ///< two-sided
    double effect_size = 0.0;   ///< matched-pairs rank-biserial (W+ - W-)/(W+ + W-)
    double z_over_sqrt_n = 0.0; ///< normal-approximation z / sqrt(n_pairs)
    double statistic = 0.0;     ///< W+, the sum of ranks of positive differences
    double w_minus = 0.0;
    std::size_t n_pairs = 0;    ///< after dropping zero differences
    std::size_t zero_differences = 0;
    bool exact = false;
};

/// Wilcoxon signed-rank test on differences real - null. Zero differences
/// are dropped before ranking; tied magnitudes get average ranks. Uses the
/// exact permutation distribution of the observed ranks when n_pairs <=
/// exact_limit, otherwise the tie-corrected normal approximation with a 0.5
/// continuity correction. Undefined when every difference is zero.
std::optional<PairedTestResult> wilcoxon_signed_rank(std::span<const double> real,
                                                     std::span<const double> null_means,
                                                     std::size_t exact_limit = 25);

struct CorrelationMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<std::optional<double>>> rho;  ///< symmetric, unit diagonal
    std::size_t n_samples = 0;
};

/// Pairwise Spearman over named columns of equal length.
CorrelationMatrix correlation_matrix(std::vector<std::string> labels,
                                     const std::vector<std::vector<std::optional<double>>>& columns);

/// Columns are index_names(); requires at least three reports.
CorrelationMatrix index_correlation_matrix(const std::vector<IndexReport>& reports);

/// CSV with a leading label column; `absolute` writes |rho| (Fig-style).
std::string correlation_matrix_csv(const CorrelationMatrix& m, bool absolute = false);

}  // namespace ndseq

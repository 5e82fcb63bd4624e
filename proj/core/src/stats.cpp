#include "ndseq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ndseq/errors.hpp"

namespace ndseq {
namespace {

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        // positions i..j (0-based) share the mean of ranks i+1..j+1
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> spearman(std::span<const std::optional<double>> x,
                               std::span<const std::optional<double>> y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] && y[i] && std::isfinite(*x[i]) && std::isfinite(*y[i])) {
            xs.push_back(*x[i]);
            ys.push_back(*y[i]);
        }
    }
    if (xs.size() < 3) return std::nullopt;
    return pearson(average_ranks(xs), average_ranks(ys));
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
    std::vector<std::optional<double>> xo(x.begin(), x.end());
    std::vector<std::optional<double>> yo(y.begin(), y.end());
    return spearman(xo, yo);
}

std::optional<PairedTestResult> wilcoxon_signed_rank(std::span<const double> real,
                                                     std::span<const double> null_means,
                                                     std::size_t exact_limit) {
    if (real.size() != null_means.size()) {
        throw std::invalid_argument("wilcoxon_signed_rank: length mismatch");
    }
    PairedTestResult r;
    std::vector<double> diff;
    for (std::size_t i = 0; i < real.size(); ++i) {
        const double d = real[i] - null_means[i];
        if (d == 0.0) {
            ++r.zero_differences;
        } else {
            diff.push_back(d);
        }
    }
    if (diff.empty()) return std::nullopt;

    std::vector<double> magnitude(diff.size());
    std::transform(diff.begin(), diff.end(), magnitude.begin(), [](double d) { return std::abs(d); });
    const auto ranks = average_ranks(magnitude);
    const std::size_t n = diff.size();
    r.n_pairs = n;
    for (std::size_t i = 0; i < n; ++i) {
        (diff[i] > 0 ? r.statistic : r.w_minus) += ranks[i];
    }
    r.effect_size = (r.statistic - r.w_minus) / (r.statistic + r.w_minus);

    const double nd = static_cast<double>(n);
    const double mean = nd * (nd + 1.0) / 4.0;
    double tie_term = 0.0;
    {
        auto sorted = magnitude;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < n;) {
            std::size_t j = i;
            while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }
    const double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0;
    const double dev = r.statistic - mean;
    double z = 0.0;
    if (var > 0.0) {
        z = std::max(0.0, std::abs(dev) - 0.5) / std::sqrt(var);
        if (dev < 0 && z > 0.0) z = -z;
    }
    r.z_over_sqrt_n = z / std::sqrt(nd);

    if (n <= exact_limit) {
        // Doubled ranks are integers even with ties; count sign assignments by
        // the sum of positive doubled ranks.
        std::vector<int> doubled(n);
        int total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            doubled[i] = static_cast<int>(std::lround(2.0 * ranks[i]));
            total += doubled[i];
        }
        std::vector<double> count(static_cast<std::size_t>(total) + 1, 0.0);
        count[0] = 1.0;
        int reach = 0;
        for (int d : doubled) {
            for (int s = reach; s >= 0; --s) {
                if (count[static_cast<std::size_t>(s)] != 0.0) {
                    count[static_cast<std::size_t>(s + d)] += count[static_cast<std::size_t>(s)];
                }
            }
            reach += d;
        }
        const int w = static_cast<int>(std::lround(2.0 * r.statistic));
        const double all = std::ldexp(1.0, static_cast<int>(n));
        double lower = 0.0, upper = 0.0;
        for (int s = 0; s <= total; ++s) {
            if (s <= w) lower += count[static_cast<std::size_t>(s)];
            if (s >= w) upper += count[static_cast<std::size_t>(s)];
        }
        r.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / all);
        r.exact = true;
    } else {
        r.p_value = var > 0.0 ? std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0))) : 1.0;
    }
    return r;
}

CorrelationMatrix correlation_matrix(
    std::vector<std::string> labels, const std::vector<std::vector<std::optional<double>>>& columns) {
    if (labels.size() != columns.size()) {
        throw std::invalid_argument("correlation_matrix: label/column count mismatch");
    }
    CorrelationMatrix m;
    m.labels = std::move(labels);
    m.n_samples = columns.empty() ? 0 : columns.front().size();
    const auto k = columns.size();
    m.rho.assign(k, std::vector<std::optional<double>>(k));
    for (std::size_t a = 0; a < k; ++a) {
        m.rho[a][a] = 1.0;
        for (std::size_t b = a + 1; b < k; ++b) {
            auto rho = spearman(columns[a], columns[b]);
            m.rho[a][b] = rho;
            m.rho[b][a] = rho;
        }
    }
    return m;
}

CorrelationMatrix index_correlation_matrix(const std::vector<IndexReport>& reports) {
    if (reports.size() < 3) {
        throw ValidationError("correlation needs at least 3 reports, got " +
                              std::to_string(reports.size()));
    }
    const auto& names = index_names();
    std::vector<std::vector<std::optional<double>>> columns(names.size());
    for (std::size_t c = 0; c < names.size(); ++c) {
        for (const auto& r : reports) columns[c].push_back(index_value(r, names[c]));
    }
    return correlation_matrix(names, columns);
}

std::string correlation_matrix_csv(const CorrelationMatrix& m, bool absolute) {
    std::ostringstream out;
    out << "index";
    for (const auto& l : m.labels) out << ',' << l;
    out << '\n';
    for (std::size_t a = 0; a < m.labels.size(); ++a) {
        out << m.labels[a];
        for (std::size_t b = 0; b < m.labels.size(); ++b) {
            auto v = m.rho[a][b];
            if (v && absolute) v = std::abs(*v);
            out << ',' << format_csv_value(v);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace ndseq

#include "ndseq/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ndseq/parallel.hpp"

namespace ndseq {
namespace {

double population_variance(const std::vector<Degree>& k) {
    if (k.empty()) return 0.0;
    double mean = 0.0;
    for (auto d : k) mean += d;
    mean /= static_cast<double>(k.size());
    double ss = 0.0;
    for (auto d : k) ss += (d - mean) * (d - mean);
    return ss / static_cast<double>(k.size());
}

}  // namespace

std::optional<double> transitivity(const Graph& g) {
    std::uint64_t triangles = 0;
    std::uint64_t triples = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        const std::uint64_t k = g.degree(u);
        triples += k * (k - (k > 0 ? 1 : 0)) / 2;
        auto nu = g.neighbours(u);
        for (NodeId v : nu) {
            if (v <= u) continue;
            // Count common neighbours w > v so each triangle is seen once.
            auto nv = g.neighbours(v);
            auto a = std::upper_bound(nu.begin(), nu.end(), v);
            auto b = std::upper_bound(nv.begin(), nv.end(), v);
            while (a != nu.end() && b != nv.end()) {
                if (*a < *b) {
                    ++a;
                } else if (*b < *a) {
                    ++b;
                } else {
                    ++triangles;
                    ++a;
                    ++b;
                }
            }
        }
    }
    if (triples == 0) return std::nullopt;
    return 3.0 * static_cast<double>(triangles) / static_cast<double>(triples);
}

std::vector<Degree> quasi_complete_degrees(std::size_t n, std::size_t m) {
    std::vector<Degree> deg(n, 0);
    if (n == 0) return deg;
    // Largest clique order c with c(c-1)/2 <= m.
    std::size_t c = 0;
    while (c < n && (c + 1) * c / 2 <= m) ++c;
    const std::size_t t = m - c * (c - 1) / 2;
    for (std::size_t i = 0; i < c; ++i) deg[i] = static_cast<Degree>(c - 1);
    if (t > 0) {
        // One extra node (index c < n) joined to t clique members.
        for (std::size_t i = 0; i < t; ++i) ++deg[i];
        deg[c] = static_cast<Degree>(t);
    }
    return deg;
}

std::vector<Degree> quasi_star_degrees(std::size_t n, std::size_t m) {
    const std::size_t total = n * (n - (n > 0 ? 1 : 0)) / 2;
    auto deg = quasi_complete_degrees(n, total - std::min(m, total));
    for (auto& d : deg) d = static_cast<Degree>(n - 1) - d;
    return deg;
}

DegreeVariance degree_variance(const Graph& g) {
    DegreeVariance v;
    const auto n = g.num_nodes();
    const auto m = g.num_edges();
    v.raw = population_variance(degrees(g));
    v.maximum = std::max(population_variance(quasi_star_degrees(n, m)),
                         population_variance(quasi_complete_degrees(n, m)));
    v.normalised = v.maximum > 0.0 ? v.raw / v.maximum : 0.0;
    return v;
}

double degree_variance_normalised(const Graph& g) { return degree_variance(g).normalised; }

PathLength characteristic_path_length(const Graph& g, unsigned threads) {
    const auto n = g.num_nodes();
    struct SourceTotals {
        std::uint64_t distance_sum = 0;
        std::uint64_t reached = 0;
    };
    std::vector<SourceTotals> per_source(n);

    parallel_for(n, threads, [&](std::size_t s) {
        std::vector<std::uint32_t> dist(n, std::numeric_limits<std::uint32_t>::max());
        std::vector<NodeId> queue;
        queue.reserve(n);
        dist[s] = 0;
        queue.push_back(static_cast<NodeId>(s));
        for (std::size_t head = 0; head < queue.size(); ++head) {
            NodeId u = queue[head];
            for (NodeId w : g.neighbours(u)) {
                if (dist[w] == std::numeric_limits<std::uint32_t>::max()) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        SourceTotals totals;
        for (NodeId v : queue) {
            if (v > s) {
                totals.distance_sum += dist[v];
                ++totals.reached;
            }
        }
        per_source[s] = totals;
    });

    PathLength out;
    std::uint64_t sum = 0;
    for (const auto& t : per_source) {
        sum += t.distance_sum;
        out.finite_pairs += t.reached;
    }
    const std::uint64_t all_pairs = static_cast<std::uint64_t>(n) * (n - (n > 0 ? 1 : 0)) / 2;
    out.excluded_pairs = all_pairs - out.finite_pairs;
    if (out.finite_pairs > 0) {
        out.mean = static_cast<double>(sum) / static_cast<double>(out.finite_pairs);
    }
    return out;
}

std::optional<double> assortativity(const Graph& g) {
    if (g.num_edges() < 2) return std::nullopt;
    // Each edge contributes (k_u, k_v) and (k_v, k_u), so both marginals are
    // identical and the Pearson coefficient reduces to the symmetric form.
    double sum = 0.0;
    double sum_sq = 0.0;
    double sum_prod = 0.0;
    for (const auto& e : g.edges()) {
        const double a = g.degree(e.u);
        const double b = g.degree(e.v);
        sum += a + b;
        sum_sq += a * a + b * b;
        sum_prod += 2.0 * a * b;
    }
    const double count = 2.0 * static_cast<double>(g.num_edges());
    const double mean = sum / count;
    const double var = sum_sq / count - mean * mean;
    if (!(var > 1e-12 * std::max(1.0, mean * mean))) return std::nullopt;
    const double r = (sum_prod / count - mean * mean) / var;
    return std::clamp(r, -1.0, 1.0);
}

ClassicalIndexSet compute_classical_indices(const Graph& g, std::uint64_t seed,
                                            unsigned threads) {
    ClassicalIndexSet c;
    c.C = transitivity(g);
    auto dv = degree_variance(g);
    c.var_k = dv.raw;
    c.v_hat = dv.normalised;
    auto pl = characteristic_path_length(g, threads);
    c.L = pl.mean;
    c.L_excluded_pairs = pl.excluded_pairs;
    c.r = assortativity(g);
    if (g.num_edges() > 0) c.Q = modularity(g, seed).Q;
    return c;
}

}  // namespace ndseq

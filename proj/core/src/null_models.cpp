#include "ndseq/null_models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_set>

#include "ndseq/errors.hpp"
#include "ndseq/parallel.hpp"

namespace ndseq {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t edge_key(NodeId u, NodeId v) noexcept {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

Graph generate_er(const ErdosRenyi& p, std::mt19937_64& rng) {
    if (!(p.p >= 0.0 && p.p <= 1.0)) throw ValidationError("erdos-renyi: p must lie in [0, 1]");
    std::bernoulli_distribution coin(p.p);
    std::vector<Edge> edges;
    for (NodeId u = 0; u < p.n; ++u) {
        for (NodeId v = u + 1; v < p.n; ++v) {
            if (coin(rng)) edges.push_back({u, v});
        }
    }
    return Graph::from_edges(p.n, edges);
}

Graph generate_rgg(const RandomGeometric& p, std::mt19937_64& rng) {
    if (p.dim == 0) throw ValidationError("random-geometric: dim must be >= 1");
    if (!(p.radius >= 0.0)) throw ValidationError("random-geometric: radius must be >= 0");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> pos(p.n * p.dim);
    for (auto& x : pos) x = unit(rng);
    const double r2 = p.radius * p.radius;
    std::vector<Edge> edges;
    for (NodeId u = 0; u < p.n; ++u) {
        for (NodeId v = u + 1; v < p.n; ++v) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < p.dim; ++k) {
                const double d = pos[u * p.dim + k] - pos[v * p.dim + k];
                d2 += d * d;
            }
            if (d2 <= r2) edges.push_back({u, v});
        }
    }
    return Graph::from_edges(p.n, edges);
}

Graph generate_ws(const WattsStrogatz& p, std::mt19937_64& rng) {
    if (p.k % 2 != 0) throw ValidationError("watts-strogatz: k must be even");
    if (p.k >= p.n) throw ValidationError("watts-strogatz: k must be smaller than n");
    if (!(p.beta >= 0.0 && p.beta <= 1.0)) {
        throw ValidationError("watts-strogatz: beta must lie in [0, 1]");
    }
    const auto n = p.n;
    std::vector<std::set<NodeId>> adj(n);
    for (NodeId u = 0; u < n; ++u) {
        for (std::size_t j = 1; j <= p.k / 2; ++j) {
            auto v = static_cast<NodeId>((u + j) % n);
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    std::bernoulli_distribution coin(p.beta);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    for (std::size_t j = 1; j <= p.k / 2; ++j) {
        for (NodeId u = 0; u < n; ++u) {
            auto v = static_cast<NodeId>((u + j) % n);
            if (!coin(rng)) continue;
            if (!adj[u].contains(v) || adj[u].size() >= n - 1) continue;
            NodeId w = pick(rng);
            while (w == u || adj[u].contains(w)) w = pick(rng);
            adj[u].erase(v);
            adj[v].erase(u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : adj[u]) {
            if (u < v) edges.push_back({u, v});
        }
    }
    return Graph::from_edges(n, edges);
}

Graph generate_ba(const BarabasiAlbert& p, std::mt19937_64& rng) {
    if (p.m0 == 0) throw ValidationError("barabasi-albert: m0 must be >= 1");
    if (p.m_attach == 0 || p.m_attach > p.m0) {
        throw ValidationError("barabasi-albert: m_attach must lie in [1, m0]");
    }
    if (p.n < p.m0) throw ValidationError("barabasi-albert: n must be >= m0");

    std::vector<Edge> edges;
    std::vector<NodeId> ends;  // each node repeated once per incident edge
    for (NodeId u = 0; u < p.m0; ++u) {
        for (NodeId v = u + 1; v < p.m0; ++v) {
            edges.push_back({u, v});
            ends.push_back(u);
            ends.push_back(v);
        }
    }
    std::set<NodeId> targets;
    for (auto u = static_cast<NodeId>(p.m0); u < p.n; ++u) {
        targets.clear();
        while (targets.size() < std::min<std::size_t>(p.m_attach, u)) {
            if (ends.empty()) {
                targets.insert(std::uniform_int_distribution<NodeId>(0, u - 1)(rng));
            } else {
                std::uniform_int_distribution<std::size_t> pick(0, ends.size() - 1);
                targets.insert(ends[pick(rng)]);
            }
        }
        for (NodeId t : targets) {
            edges.push_back({t, u});
            ends.push_back(t);
            ends.push_back(u);
        }
    }
    return Graph::from_edges(p.n, edges);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(base) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

RewireResult rewire(const Graph& g, const RewireConfig& cfg) {
    const auto m = g.num_edges();
    if (m < 2) throw ValidationError("rewire needs at least two edges");
    if (cfg.swaps_per_edge == 0) throw ValidationError("swaps_per_edge must be >= 1");

    std::vector<Edge> edges = g.edges();
    std::unordered_set<std::uint64_t> present;
    present.reserve(2 * m);
    for (const auto& e : edges) present.insert(edge_key(e.u, e.v));

    const std::uint64_t quota = static_cast<std::uint64_t>(cfg.swaps_per_edge) * m;
    const std::uint64_t max_attempts = quota * std::max<std::uint32_t>(cfg.max_attempts_factor, 1);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::bernoulli_distribution flip(0.5);

    RewireResult out;
    while (out.swaps < quota && out.attempts < max_attempts) {
        ++out.attempts;
        const std::size_t i = pick(rng);
        const std::size_t j = pick(rng);
        if (i == j) continue;
        NodeId a = edges[i].u, b = edges[i].v;
        NodeId c = edges[j].u, d = edges[j].v;
        if (flip(rng)) std::swap(c, d);
        // (a,b),(c,d) -> (a,d),(c,b)
        if (a == c || a == d || b == c || b == d) continue;
        if (present.contains(edge_key(a, d)) || present.contains(edge_key(c, b))) continue;

        present.erase(edge_key(a, b));
        present.erase(edge_key(c, d));
        present.insert(edge_key(a, d));
        present.insert(edge_key(c, b));
        edges[i] = {std::min(a, d), std::max(a, d)};
        edges[j] = {std::min(c, b), std::max(c, b)};
        ++out.swaps;
    }
    out.quota_met = out.swaps >= quota;
    out.graph = Graph::from_edges(g.num_nodes(), edges, g.labels());
    return out;
}

Graph generate(const ModelSpec& model, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return std::visit(
        [&](const auto& p) -> Graph {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ErdosRenyi>) return generate_er(p, rng);
            if constexpr (std::is_same_v<T, RandomGeometric>) return generate_rgg(p, rng);
            if constexpr (std::is_same_v<T, WattsStrogatz>) return generate_ws(p, rng);
            if constexpr (std::is_same_v<T, BarabasiAlbert>) return generate_ba(p, rng);
        },
        model);
}

IndexSummary summarise(const std::vector<std::optional<double>>& values) {
    IndexSummary s;
    double sum = 0.0;
    for (const auto& v : values) {
        if (!v) continue;
        sum += *v;
        ++s.defined;
    }
    if (s.defined == 0) return s;
    const double mean = sum / static_cast<double>(s.defined);
    double ss = 0.0;
    for (const auto& v : values) {
        if (v) ss += (*v - mean) * (*v - mean);
    }
    s.mean = mean;
    s.sd = s.defined > 1 ? std::sqrt(ss / static_cast<double>(s.defined - 1)) : 0.0;
    return s;
}

NullEnsemble ensemble(const Graph& g, std::size_t count, const RewireConfig& cfg,
                      const AnalysisOptions& analysis, unsigned threads) {
    if (count == 0) throw ValidationError("ensemble count must be >= 1");

    NullEnsemble out;
    out.realizations = count;
    out.reports.resize(count);
    out.rewiring.resize(count);

    parallel_for(count, threads, [&](std::size_t i) {
        RewireConfig local = cfg;
        local.seed = derive_seed(cfg.seed, i);
        auto result = rewire(g, local);
        AnalysisOptions opts = analysis;
        opts.threads = 1;
        opts.seed = local.seed;
        out.reports[i] = analyze(result.graph, opts, "realization-" + std::to_string(i));
        if (!result.quota_met) {
            out.reports[i].warnings.push_back("swap quota not reached: " +
                                              std::to_string(result.swaps) + " swaps in " +
                                              std::to_string(result.attempts) + " attempts");
        }
        result.graph = Graph{};
        out.rewiring[i] = std::move(result);
    });

    const auto& names = analysis.classical ? index_names() : nds_index_names();
    for (const auto& name : names) {
        std::vector<std::optional<double>> values;
        values.reserve(count);
        for (const auto& r : out.reports) values.push_back(index_value(r, name));
        out.summary[name] = summarise(values);
    }
    return out;
}

}  // namespace ndseq

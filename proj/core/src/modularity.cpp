#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <tuple>

#include "ndseq/classical.hpp"

namespace ndseq {
namespace {

// Clauset-Newman-Moore agglomeration. Community adjacency holds edge counts;
// the merge gain of (i, j) is w_ij / m - 2 a_i a_j with a_i = deg_i / 2m.
std::vector<std::uint32_t> greedy_agglomerate(const Graph& g) {
    const auto n = g.num_nodes();
    const double m = static_cast<double>(g.num_edges());

    std::vector<std::map<std::uint32_t, double>> links(n);
    std::vector<double> a(n);
    std::vector<std::uint32_t> parent(n);
    std::vector<std::uint32_t> stamp(n, 0);
    std::vector<bool> alive(n, true);
    std::iota(parent.begin(), parent.end(), 0u);

    for (NodeId v = 0; v < n; ++v) {
        a[v] = g.degree(v) / (2.0 * m);
        for (NodeId w : g.neighbours(v)) links[v][w] += 1.0;
    }

    struct Candidate {
        double gain;
        std::uint32_t i, j;
        std::uint32_t stamp_i, stamp_j;
    };
    // Max-heap on gain; ties resolve to the lexicographically smallest pair.
    auto worse = [](const Candidate& x, const Candidate& y) {
        if (x.gain != y.gain) return x.gain < y.gain;
        return std::tie(x.i, x.j) > std::tie(y.i, y.j);
    };
    std::priority_queue<Candidate, std::vector<Candidate>, decltype(worse)> heap(worse);

    auto push = [&](std::uint32_t i, std::uint32_t j, double w) {
        if (i > j) std::swap(i, j);
        heap.push({w / m - 2.0 * a[i] * a[j], i, j, stamp[i], stamp[j]});
    };
    for (std::uint32_t i = 0; i < n; ++i) {
        for (const auto& [j, w] : links[i]) {
            if (i < j) push(i, j, w);
        }
    }

    while (!heap.empty()) {
        Candidate c = heap.top();
        heap.pop();
        if (!alive[c.i] || !alive[c.j] || stamp[c.i] != c.stamp_i || stamp[c.j] != c.stamp_j) {
            continue;
        }
        if (c.gain <= 1e-15) break;

        // Fold the smaller adjacency into the larger one.
        std::uint32_t keep = c.i, gone = c.j;
        if (links[keep].size() < links[gone].size()) std::swap(keep, gone);

        links[keep].erase(gone);
        links[gone].erase(keep);
        for (const auto& [k, w] : links[gone]) {
            links[keep][k] += w;
            links[k].erase(gone);
            links[k][keep] += w;
        }
        links[gone].clear();
        a[keep] += a[gone];
        a[gone] = 0.0;
        alive[gone] = false;
        parent[gone] = keep;
        ++stamp[keep];
        ++stamp[gone];
        for (const auto& [k, w] : links[keep]) push(keep, k, w);
    }

    std::vector<std::uint32_t> community(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        std::uint32_t r = v;
        while (parent[r] != r) r = parent[r];
        community[v] = r;
    }
    return community;
}

// Louvain-style single-level node moves until no strictly positive gain
// remains (or a pass cap is hit).
void refine(const Graph& g, std::vector<std::uint32_t>& community, std::uint64_t seed) {
    const auto n = g.num_nodes();
    const double m = static_cast<double>(g.num_edges());
    std::vector<double> total(n, 0.0);
    for (NodeId v = 0; v < n; ++v) total[community[v]] += g.degree(v);

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::map<std::uint32_t, double> to_comm;
    constexpr int kMaxPasses = 100;
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        bool moved = false;
        for (NodeId v : order) {
            const double kv = g.degree(v);
            if (kv == 0) continue;
            const std::uint32_t home = community[v];
            to_comm.clear();
            to_comm[home] += 0.0;
            for (NodeId w : g.neighbours(v)) to_comm[community[w]] += 1.0;

            total[home] -= kv;
            auto gain = [&](std::uint32_t c, double links) {
                return links / m - kv * total[c] / (2.0 * m * m);
            };
            const double stay = gain(home, to_comm[home]);
            std::uint32_t best = home;
            double best_gain = stay;
            for (const auto& [c, links] : to_comm) {
                const double gc = gain(c, links);
                if (gc > best_gain + 1e-12) {
                    best_gain = gc;
                    best = c;
                }
            }
            community[v] = best;
            total[best] += kv;
            if (best != home) moved = true;
        }
        if (!moved) break;
    }
}

std::vector<std::uint32_t> relabel(const std::vector<std::uint32_t>& community) {
    std::map<std::uint32_t, std::uint32_t> ids;
    std::vector<std::uint32_t> out(community.size());
    for (std::size_t v = 0; v < community.size(); ++v) {
        auto [it, inserted] = ids.try_emplace(community[v], static_cast<std::uint32_t>(ids.size()));
        out[v] = it->second;
    }
    return out;
}

}  // namespace

double modularity_of(const Graph& g, const std::vector<std::uint32_t>& community) {
    const double m = static_cast<double>(g.num_edges());
    if (m == 0) return 0.0;
    std::map<std::uint32_t, std::pair<double, double>> per;  // internal edges, degree sum
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        auto& [inner, deg] = per[community[v]];
        deg += g.degree(v);
        for (NodeId w : g.neighbours(v)) {
            if (v < w && community[w] == community[v]) inner += 1.0;
        }
    }
    double q = 0.0;
    for (const auto& [c, stats] : per) {
        const double share = stats.second / (2.0 * m);
        q += stats.first / m - share * share;
    }
    return q;
}

ModularityResult modularity(const Graph& g, std::uint64_t seed) {
    ModularityResult r;
    if (g.num_edges() == 0) {
        r.community.assign(g.num_nodes(), 0);
        std::iota(r.community.begin(), r.community.end(), 0u);
        return r;
    }
    auto community = greedy_agglomerate(g);
    refine(g, community, seed);
    r.community = relabel(community);
    r.Q = modularity_of(g, r.community);
    return r;
}

}  // namespace ndseq

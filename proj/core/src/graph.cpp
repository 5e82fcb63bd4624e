#include "ndseq/graph.hpp"

#include <algorithm>
#include <numeric>

#include "ndseq/errors.hpp"

namespace ndseq {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != n) {
        throw ValidationError("label count " + std::to_string(labels.size()) +
                              " does not match node count " + std::to_string(n));
    }

    Graph g;
    g.n_ = n;
    g.labels_ = std::move(labels);
    g.offsets_.assign(n + 1, 0);

    for (const auto& e : edges) {
        if (e.u >= n || e.v >= n) {
            throw ValidationError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") out of range for n = " + std::to_string(n));
        }
        if (e.u == e.v) {
            throw ValidationError("self-loop on node " + std::to_string(e.u));
        }
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());

    g.targets_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : edges) {
        g.targets_[fill[e.u]++] = e.v;
        g.targets_[fill[e.v]++] = e.u;
    }

    for (std::size_t v = 0; v < n; ++v) {
        auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        std::sort(first, last);
        if (auto dup = std::adjacent_find(first, last); dup != last) {
            throw ValidationError("duplicate edge (" + std::to_string(v) + ", " +
                                  std::to_string(*dup) + ")");
        }
    }
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
    if (u >= n_ || v >= n_) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbours(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (NodeId u = 0; u < n_; ++u) {
        for (NodeId v : neighbours(u)) {
            if (u < v) out.push_back({u, v});
        }
    }
    return out;
}

double Graph::density() const noexcept {
    if (n_ < 2) return 0.0;
    return 2.0 * static_cast<double>(num_edges()) /
           (static_cast<double>(n_) * static_cast<double>(n_ - 1));
}

std::string Graph::label(NodeId v) const {
    if (v < labels_.size()) return labels_[v];
    return std::to_string(v);
}

std::vector<Degree> degrees(const Graph& g) {
    std::vector<Degree> k(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) k[v] = g.degree(v);
    return k;
}

std::size_t connected_components(const Graph& g) {
    const auto n = g.num_nodes();
    std::vector<bool> seen(n, false);
    std::vector<NodeId> stack;
    std::size_t components = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++components;
        seen[s] = true;
        stack.push_back(s);
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (NodeId w : g.neighbours(u)) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
    }
    return components;
}

}  // namespace ndseq

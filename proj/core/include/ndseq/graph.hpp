#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ndseq {

using NodeId = std::uint32_t;
using Degree = std::uint32_t;

struct Edge {
    NodeId u;
    NodeId v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable undirected simple graph in compressed sparse row form.
//
// Invariants (enforced by from_edges): no self-loops, no duplicate edges,
// symmetric adjacency, each neighbour list sorted ascending.
class Graph {
public:
    Graph() = default;

    /// Builds a graph on nodes 0..n-1. Each undirected edge must appear once
    /// (in either orientation). Throws ValidationError on self-loops,
    /// duplicate edges or out-of-range endpoints.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                            std::vector<std::string> labels = {});

    std::size_t num_nodes() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return targets_.size() / 2; }

    std::span<const NodeId> neighbours(NodeId v) const noexcept {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    Degree degree(NodeId v) const noexcept {
        return static_cast<Degree>(offsets_[v + 1] - offsets_[v]);
    }
    bool has_edge(NodeId u, NodeId v) const noexcept;

    /// Edges with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    /// 2m / (n(n-1)); 0 for n < 2.
    double density() const noexcept;

    /// External identifier of node v; falls back to the decimal index.
    std::string label(NodeId v) const;
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    std::span<const std::size_t> offsets() const noexcept { return offsets_; }
    std::span<const NodeId> targets() const noexcept { return targets_; }

    /// Structural equality: same n and adjacency. Labels are ignored.
    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> targets_;
    std::vector<std::string> labels_;
};

std::vector<Degree> degrees(const Graph& g);

/// Number of connected components (isolated nodes count as components).
std::size_t connected_components(const Graph& g);

}  // namespace ndseq

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ndseq/graph.hpp"

namespace ndseq {

/// How a height-1 node counts its branches in the unfolded tree.
enum class Unfolding {
    include_back_edge,  ///< WL-style: the edge back to the root is unfolded too
    exclude_back_edge,  ///< branch count = degree - 1
};

/// Shape of the height-2 unfolding of a node in an unlabeled graph.
struct SubtreePattern {
    Degree root_degree = 0;
    std::vector<Degree> child_degrees;  ///< branch count of each height-1 node, ascending

    friend bool operator==(const SubtreePattern&, const SubtreePattern&) = default;
    friend auto operator<=>(const SubtreePattern&, const SubtreePattern&) = default;
};

/// Unfolds the tree rooted at `node` to the requested height and reads off
/// its shape. Only height 2 is supported; other heights throw
/// std::domain_error.
SubtreePattern subtree_pattern(const Graph& g, NodeId node, int height = 2,
                               Unfolding unfolding = Unfolding::include_back_edge);

struct EquivalenceCheck {
    bool holds = true;
    /// First pair (u, v) on which pattern equality and sequence equality differ.
    std::optional<std::pair<NodeId, NodeId>> counterexample;
};

/// Checks that for every node pair, equal height-2 subtree patterns coincide
/// with equal neighbourhood degree sequences.
EquivalenceCheck verify_equivalence(const Graph& g,
                                    Unfolding unfolding = Unfolding::include_back_edge);

}  // namespace ndseq

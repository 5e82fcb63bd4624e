#include "ndseq/wl.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ndseq/nds.hpp"

namespace ndseq {
namespace {

// Explicit unfolded tree: node 0 is the root, children are listed per vertex.
struct Tree {
    std::vector<std::vector<std::size_t>> children;
};

Tree unfold(const Graph& g, NodeId root, int height, Unfolding unfolding) {
    Tree t;
    struct Frame {
        NodeId vertex;
        NodeId parent_vertex;
        bool has_parent;
        int depth;
    };
    std::vector<Frame> frames{{root, root, false, 0}};
    t.children.emplace_back();
    for (std::size_t idx = 0; idx < frames.size(); ++idx) {
        const Frame f = frames[idx];
        if (f.depth == height) continue;
        for (NodeId w : g.neighbours(f.vertex)) {
            if (f.has_parent && w == f.parent_vertex &&
                unfolding == Unfolding::exclude_back_edge) {
                continue;
            }
            t.children[idx].push_back(frames.size());
            frames.push_back({w, f.vertex, true, f.depth + 1});
            t.children.emplace_back();
        }
    }
    return t;
}

}  // namespace

SubtreePattern subtree_pattern(const Graph& g, NodeId node, int height, Unfolding unfolding) {
    if (height != 2) {
        throw std::domain_error("subtree_pattern: only height 2 is supported, got " +
                                std::to_string(height));
    }
    const Tree t = unfold(g, node, height, unfolding);
    SubtreePattern p;
    p.root_degree = static_cast<Degree>(t.children[0].size());
    for (std::size_t child : t.children[0]) {
        p.child_degrees.push_back(static_cast<Degree>(t.children[child].size()));
    }
    std::sort(p.child_degrees.begin(), p.child_degrees.end());
    return p;
}

EquivalenceCheck verify_equivalence(const Graph& g, Unfolding unfolding) {
    const auto n = g.num_nodes();
    const NdsTable table(g);

    // Give each distinct pattern a dense id, then require the relation
    // pattern id <-> sequence id to be a bijection.
    std::map<SubtreePattern, std::uint32_t> pattern_ids;
    std::vector<std::uint32_t> pattern_of(n);
    for (NodeId v = 0; v < n; ++v) {
        auto [it, inserted] = pattern_ids.try_emplace(subtree_pattern(g, v, 2, unfolding),
                                                      static_cast<std::uint32_t>(pattern_ids.size()));
        pattern_of[v] = it->second;
    }

    EquivalenceCheck result;
    std::map<std::uint32_t, NodeId> first_by_pattern;
    std::map<std::uint32_t, NodeId> first_by_sequence;
    for (NodeId v = 0; v < n; ++v) {
        auto [pit, pnew] = first_by_pattern.try_emplace(pattern_of[v], v);
        auto [sit, snew] = first_by_sequence.try_emplace(table.sequence_id(v), v);
        if (!pnew && table.sequence_id(pit->second) != table.sequence_id(v)) {
            result.holds = false;
            result.counterexample = std::pair{pit->second, v};
            return result;
        }
        if (!snew && pattern_of[sit->second] != pattern_of[v]) {
            result.holds = false;
            result.counterexample = std::pair{sit->second, v};
            return result;
        }
    }
    return result;
}

}  // namespace ndseq

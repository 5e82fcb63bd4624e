#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ndseq/graph.hpp"

namespace ndseq {

// Per-node neighbourhood degree sequences: s_i is the ascending multiset of
// the degrees of i's neighbours, so |s_i| = k_i.
//
// Sequences are grouped by exact comparison. The 64-bit fingerprint only
// short-circuits unequal comparisons; it never decides equality on its own.
class NdsTable {
public:
    NdsTable() = default;
    explicit NdsTable(const Graph& g);

    std::size_t size() const noexcept { return hashes_.size(); }

    std::span<const Degree> sequence(NodeId i) const noexcept {
        return {entries_.data() + offsets_[i], entries_.data() + offsets_[i + 1]};
    }
    Degree length(NodeId i) const noexcept {
        return static_cast<Degree>(offsets_[i + 1] - offsets_[i]);
    }
    std::uint64_t fingerprint(NodeId i) const noexcept { return hashes_[i]; }

    bool same_sequence(NodeId i, NodeId j) const noexcept;

    /// Dense id of i's sequence; equal ids iff equal sequences. Ids follow
    /// (length, lexicographic) order of the sequences.
    std::uint32_t sequence_id(NodeId i) const noexcept { return seq_id_[i]; }
    std::size_t distinct_sequences() const noexcept { return class_size_.size(); }
    /// Number of nodes (including i) whose sequence equals s_i.
    std::size_t multiplicity(NodeId i) const noexcept { return class_size_[seq_id_[i]]; }

    /// Node ids ordered by (length, sequence); equal sequences are adjacent.
    std::span<const NodeId> sorted_nodes() const noexcept { return order_; }

private:
    std::vector<std::size_t> offsets_{0};
    std::vector<Degree> entries_;
    std::vector<std::uint64_t> hashes_;
    std::vector<std::uint32_t> seq_id_;
    std::vector<std::size_t> class_size_;
    std::vector<NodeId> order_;
};

NdsTable nds_table(const Graph& g);

/// Everything known about the nodes of one degree p.
struct DegreeClassSummary {
    Degree p = 0;
    std::size_t q = 0;                           ///< nodes of degree p
    std::vector<std::vector<Degree>> sigma;      ///< distinct sequences, lexicographic
    std::vector<std::size_t> multiplicity;       ///< c_pj, aligned with sigma
    std::vector<NodeId> members;                 ///< V_p, ascending
    std::optional<double> omega;                 ///< multi-orderedness; q >= 2 only
};

/// Multi-orderedness of a class with the given sequence multiplicities:
/// |sigma| * sum_j (q - c_j) / (q^2 (q - 1)), with q = sum_j c_j.
/// Undefined for q < 2.
std::optional<double> multi_orderedness(std::span<const std::size_t> multiplicities);

/// One summary per degree present in the graph, ascending in p. Degree 0
/// yields a class whose sigma is the single empty sequence.
std::vector<DegreeClassSummary> degree_class_summaries(const NdsTable& t);

}  // namespace ndseq

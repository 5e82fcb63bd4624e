#include "ndseq/nds.hpp"

#include <algorithm>
#include <numeric>

namespace ndseq {
namespace {

constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

NdsTable::NdsTable(const Graph& g) {
    const auto n = g.num_nodes();
    offsets_.assign(g.offsets().begin(), g.offsets().end());
    entries_.resize(g.targets().size());
    hashes_.resize(n);

    for (NodeId i = 0; i < n; ++i) {
        auto nb = g.neighbours(i);
        auto out = entries_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
        std::transform(nb.begin(), nb.end(), out, [&](NodeId j) { return g.degree(j); });
        std::sort(out, out + static_cast<std::ptrdiff_t>(nb.size()));

        std::uint64_t h = mix64(nb.size());
        for (Degree d : sequence(i)) h = mix64(h ^ d);
        hashes_[i] = h;
    }

    order_.resize(n);
    std::iota(order_.begin(), order_.end(), NodeId{0});
    std::sort(order_.begin(), order_.end(), [&](NodeId a, NodeId b) {
        auto sa = sequence(a);
        auto sb = sequence(b);
        if (sa.size() != sb.size()) return sa.size() < sb.size();
        if (hashes_[a] == hashes_[b] && std::equal(sa.begin(), sa.end(), sb.begin())) {
            return a < b;
        }
        auto lex = std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
        if (lex) return true;
        if (std::lexicographical_compare(sb.begin(), sb.end(), sa.begin(), sa.end())) return false;
        return a < b;
    });

    seq_id_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == 0 || !same_sequence(order_[k - 1], order_[k])) class_size_.push_back(0);
        seq_id_[order_[k]] = static_cast<std::uint32_t>(class_size_.size() - 1);
        ++class_size_.back();
    }
}

bool NdsTable::same_sequence(NodeId i, NodeId j) const noexcept {
    if (hashes_[i] != hashes_[j]) return false;
    auto si = sequence(i);
    auto sj = sequence(j);
    return si.size() == sj.size() && std::equal(si.begin(), si.end(), sj.begin());
}

NdsTable nds_table(const Graph& g) { return NdsTable(g); }

std::optional<double> multi_orderedness(std::span<const std::size_t> multiplicities) {
    const std::size_t q = std::accumulate(multiplicities.begin(), multiplicities.end(),
                                          std::size_t{0});
    if (q < 2) return std::nullopt;
    const auto distinct = static_cast<double>(multiplicities.size());
    double offset = 0.0;
    for (std::size_t c : multiplicities) offset += static_cast<double>(q - c);
    const auto qd = static_cast<double>(q);
    return distinct * offset / (qd * qd * (qd - 1.0));
}

std::vector<DegreeClassSummary> degree_class_summaries(const NdsTable& t) {
    std::vector<DegreeClassSummary> out;
    // sorted_nodes() groups by length first, then by sequence, so a single
    // sweep yields classes in ascending p with sigma in lexicographic order.
    auto order = t.sorted_nodes();
    for (std::size_t k = 0; k < order.size(); ++k) {
        NodeId v = order[k];
        Degree p = t.length(v);
        if (out.empty() || out.back().p != p) {
            out.push_back({});
            out.back().p = p;
        }
        auto& cls = out.back();
        ++cls.q;
        cls.members.push_back(v);
        if (k == 0 || !t.same_sequence(order[k - 1], v) || t.length(order[k - 1]) != p) {
            auto s = t.sequence(v);
            cls.sigma.emplace_back(s.begin(), s.end());
            cls.multiplicity.push_back(0);
        }
        ++cls.multiplicity.back();
    }
    for (auto& cls : out) {
        std::sort(cls.members.begin(), cls.members.end());
        cls.omega = multi_orderedness(cls.multiplicity);
    }
    return out;
}

}  // namespace ndseq

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ndseq/graph.hpp"

namespace ndseq {

/// Global clustering coefficient: 3 * triangles / connected triples.
/// Undefined when the graph has no path of length two.
std::optional<double> transitivity(const Graph& g);

/// Degree sequences of the extremal graphs with n nodes and m edges.
/// Quasi-complete: a clique plus one node joined to part of it. Quasi-star:
/// the complement of the quasi-complete graph with n(n-1)/2 - m edges.
std::vector<Degree> quasi_complete_degrees(std::size_t n, std::size_t m);
std::vector<Degree> quasi_star_degrees(std::size_t n, std::size_t m);

struct DegreeVariance {
    double raw = 0.0;         ///< population variance of the degrees
    double maximum = 0.0;     ///< max over quasi-star / quasi-complete at the same (n, m)
    double normalised = 0.0;  ///< raw / maximum, 0 when maximum is 0
};
DegreeVariance degree_variance(const Graph& g);
double degree_variance_normalised(const Graph& g);

struct PathLength {
    std::optional<double> mean;  ///< over unordered pairs at finite distance
    std::uint64_t finite_pairs = 0;
    std::uint64_t excluded_pairs = 0;  ///< disconnected unordered pairs
};
/// BFS from every source; sources are processed on `threads` workers and
/// reduced in source order.
PathLength characteristic_path_length(const Graph& g, unsigned threads = 1);

/// Pearson correlation of endpoint degrees over all edges in both
/// orientations. Undefined for m < 2 or zero endpoint-degree variance.
std::optional<double> assortativity(const Graph& g);

struct ModularityResult {
    double Q = 0.0;
    std::vector<std::uint32_t> community;  ///< dense ids, first-appearance order
};

/// Greedy agglomerative merging (largest modularity gain first) followed by
/// local node moves visited in a seeded random order. Deterministic for a
/// given seed; the value is a lower bound on the optimum.
ModularityResult modularity(const Graph& g, std::uint64_t seed);

/// Modularity of a given partition. `community[v]` may be any integer label.
double modularity_of(const Graph& g, const std::vector<std::uint32_t>& community);

struct ClassicalIndexSet {
    std::optional<double> C;
    std::optional<double> v_hat;
    double var_k = 0.0;
    std::optional<double> L;
    std::uint64_t L_excluded_pairs = 0;
    std::optional<double> r;
    std::optional<double> Q;
};

ClassicalIndexSet compute_classical_indices(const Graph& g, std::uint64_t seed,
                                            unsigned threads = 1);

}  // namespace ndseq

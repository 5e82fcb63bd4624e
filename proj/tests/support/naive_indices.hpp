#pragma once

// Brute-force evaluations of the neighbourhood indices straight from the
// definitions. Only the edge list of the graph is used: sequences are rebuilt
// from an adjacency matrix, equality is decided by pairwise comparison and
// classes are found by scanning every node for every degree.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "ndseq/graph.hpp"

namespace naive {

struct Indices {
    double V_n = 0.0;
    std::optional<double> V_n_hat;
    std::optional<double> S;
    std::optional<double> Omega;
    std::optional<double> R;
    std::optional<double> R_Omega;
};

inline std::vector<std::vector<int>> sequences(const ndseq::Graph& g) {
    const auto n = g.num_nodes();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto e : g.edges()) {
        adj[e.u][e.v] = 1;
        adj[e.v][e.u] = 1;
    }
    std::vector<int> k(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) k[i] += adj[i][j];
    std::vector<std::vector<int>> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (adj[i][j]) s[i].push_back(k[j]);
        std::sort(s[i].begin(), s[i].end());
    }
    return s;
}

inline double variance(const std::vector<int>& xs, bool sample) {
    double mean = 0.0;
    for (int x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (int x : xs) ss += (x - mean) * (x - mean);
    return ss / (static_cast<double>(xs.size()) - (sample ? 1.0 : 0.0));
}

inline Indices compute(const ndseq::Graph& g, bool sample = true, bool per_node = true) {
    const auto s = sequences(g);
    const auto n = s.size();
    Indices out;

    double het = 0.0;
    std::vector<int> k;
    for (const auto& seq : s) {
        k.push_back(static_cast<int>(seq.size()));
        if (seq.size() > 1) het += variance(seq, sample);
    }
    out.V_n = het / static_cast<double>(n);
    if (n >= 2) {
        const double vk = variance(k, sample);
        if (vk > 0) out.V_n_hat = out.V_n / vk;
    }

    std::size_t matched = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && s[i] == s[j]) {
                ++matched;
                break;
            }
        }
    }
    if (n > 0) out.S = static_cast<double>(matched) / static_cast<double>(n);

    const int kmax = k.empty() ? 0 : *std::max_element(k.begin(), k.end());
    double omega_sum = 0.0, r_sum = 0.0, r_omega_sum = 0.0;
    std::size_t classes = 0;
    for (int p = 1; p <= kmax; ++p) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i)
            if (k[i] == p) members.push_back(i);
        const auto q = members.size();
        if (q < 2) continue;
        ++classes;

        // distinct sequences and their multiplicities by pairwise comparison
        std::vector<std::size_t> reps, counts;
        for (auto i : members) {
            bool found = false;
            for (std::size_t r = 0; r < reps.size(); ++r) {
                if (s[reps[r]] == s[i]) {
                    ++counts[r];
                    found = true;
                    break;
                }
            }
            if (!found) {
                reps.push_back(i);
                counts.push_back(1);
            }
        }
        double inner = 0.0;
        for (auto c : counts) inner += static_cast<double>(q - c);
        const double qd = static_cast<double>(q);
        const double omega = static_cast<double>(reps.size()) * inner / (qd * qd * (qd - 1.0));
        omega_sum += omega;

        double scatter = 0.0;
        for (int j = 0; j < p; ++j) {
            double mu = 0.0;
            for (auto i : members) mu += s[i][j];
            mu /= qd;
            for (auto i : members) scatter += (s[i][j] - mu) * (s[i][j] - mu);
        }
        const double term = scatter / (p * (qd - 1.0));
        r_sum += term;
        r_omega_sum += omega * term;
    }
    if (classes > 0) {
        const double c = static_cast<double>(classes);
        const double scale = per_node ? static_cast<double>(n) : 1.0;
        out.Omega = 1.0 - omega_sum / c;
        out.R = r_sum / c / scale;
        out.R_Omega = r_omega_sum / c / scale;
    }
    return out;
}

}  // namespace naive

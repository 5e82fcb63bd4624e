#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "families.hpp"
#include "ndseq/classical.hpp"

using namespace ndseq;

namespace {

std::vector<std::vector<char>> matrix(const Graph& g) {
    std::vector<std::vector<char>> a(g.num_nodes(), std::vector<char>(g.num_nodes(), 0));
    for (auto e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
    return a;
}

std::optional<double> brute_transitivity(const Graph& g) {
    auto a = matrix(g);
    const auto n = g.num_nodes();
    double closed = 0, triples = 0;
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x + 1; y < n; ++y)
                if (a[c][x] && a[c][y]) {
                    ++triples;
                    closed += a[x][y];
                }
    if (triples == 0) return std::nullopt;
    return closed / triples;
}

std::optional<double> brute_path_length(const Graph& g) {
    const auto n = g.num_nodes();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (auto e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    double sum = 0, count = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (d[i][j] < inf) {
                sum += d[i][j];
                ++count;
            }
    if (count == 0) return std::nullopt;
    return sum / count;
}

std::optional<double> brute_assortativity(const Graph& g) {
    std::vector<double> x, y;
    for (auto e : g.edges()) {
        x.push_back(g.degree(e.u));
        y.push_back(g.degree(e.v));
        x.push_back(g.degree(e.v));
        y.push_back(g.degree(e.u));
    }
    if (g.num_edges() < 2) return std::nullopt;
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i] / n;
        my += y[i] / n;
    }
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

double brute_modularity(const Graph& g, const std::vector<std::uint32_t>& c) {
    auto a = matrix(g);
    const double m2 = 2.0 * static_cast<double>(g.num_edges());
    double q = 0;
    for (std::size_t i = 0; i < g.num_nodes(); ++i)
        for (std::size_t j = 0; j < g.num_nodes(); ++j)
            if (c[i] == c[j]) q += a[i][j] - g.degree(i) * static_cast<double>(g.degree(j)) / m2;
    return q / m2;
}

// Every set partition in restricted-growth form.
double best_partition_modularity(const Graph& g) {
    const auto n = g.num_nodes();
    std::vector<std::uint32_t> c(n, 0), top(n, 0);
    double best = -1;
    for (;;) {
        best = std::max(best, brute_modularity(g, c));
        std::size_t i = n - 1;
        while (i > 0 && c[i] == top[i - 1] + 1) --i;
        if (i == 0) break;
        ++c[i];
        for (std::size_t j = i; j < n; ++j) {
            if (j > i) c[j] = 0;
            top[j] = std::max(top[j - 1], c[j]);
        }
    }
    return best;
}

double population_variance(const std::vector<Degree>& k) {
    double mean = 0, ss = 0;
    for (auto d : k) mean += d;
    mean /= static_cast<double>(k.size());
    for (auto d : k) ss += (d - mean) * (d - mean);
    return ss / static_cast<double>(k.size());
}

}  // namespace

TEST(Transitivity, SimpleCases) {
    EXPECT_DOUBLE_EQ(*transitivity(families::complete(4)), 1.0);
    EXPECT_DOUBLE_EQ(*transitivity(families::star(6)), 0.0);
    std::vector<Edge> one{{0, 1}};
    EXPECT_FALSE(transitivity(Graph::from_edges(2, one)));
}

TEST(Transitivity, MatchesTripleScan) {
    for (std::size_t i = 0; i < 50; ++i) {
        Graph g = families::mixed(i, 40);
        auto got = transitivity(g);
        auto want = brute_transitivity(g);
        ASSERT_EQ(got.has_value(), want.has_value());
        if (got) EXPECT_NEAR(*got, *want, 1e-12) << i;
    }
}

TEST(DegreeVariance, ExtremalSequences) {
    EXPECT_EQ(quasi_complete_degrees(5, 7), (std::vector<Degree>{4, 3, 3, 3, 1}));
    auto qs = quasi_star_degrees(5, 3);
    std::sort(qs.begin(), qs.end());
    EXPECT_EQ(qs, (std::vector<Degree>{0, 1, 1, 1, 3}));
    EXPECT_EQ(quasi_complete_degrees(4, 6), (std::vector<Degree>{3, 3, 3, 3}));
}

TEST(DegreeVariance, NormaliserIsTheExhaustiveMaximum) {
    // For every (n, m) with n <= 6, the largest degree variance over all
    // labelled graphs equals the normaliser.
    for (std::size_t n = 3; n <= 6; ++n) {
        std::vector<std::pair<NodeId, NodeId>> pairs;
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v) pairs.push_back({u, v});
        std::vector<double> best(pairs.size() + 1, 0.0);
        for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
            std::vector<Degree> k(n, 0);
            std::size_t m = 0;
            for (std::size_t b = 0; b < pairs.size(); ++b) {
                if (mask >> b & 1u) {
                    ++k[pairs[b].first];
                    ++k[pairs[b].second];
                    ++m;
                }
            }
            best[m] = std::max(best[m], population_variance(k));
        }
        for (std::size_t m = 1; m <= pairs.size(); ++m) {
            const double normaliser = std::max(population_variance(quasi_star_degrees(n, m)),
                                               population_variance(quasi_complete_degrees(n, m)));
            EXPECT_NEAR(normaliser, best[m], 1e-12) << "n=" << n << " m=" << m;
        }
    }
}

TEST(DegreeVariance, RegularExtremalAndIntermediate) {
    EXPECT_DOUBLE_EQ(degree_variance_normalised(families::cycle(8)), 0.0);
    EXPECT_NEAR(degree_variance_normalised(families::star(7)), 1.0, 1e-12);
    Graph g = families::path(6);
    const double v = degree_variance_normalised(g);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
    for (std::size_t i = 0; i < 60; ++i) {
        const double x = degree_variance_normalised(families::mixed(i, 60));
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0 + 1e-12);
    }
}

TEST(PathLength, SimpleCases) {
    EXPECT_DOUBLE_EQ(*characteristic_path_length(families::complete(6)).mean, 1.0);
    EXPECT_DOUBLE_EQ(*characteristic_path_length(families::path(3)).mean, 4.0 / 3.0);
    std::vector<Edge> two{{0, 1}, {2, 3}};
    auto pl = characteristic_path_length(Graph::from_edges(4, two));
    EXPECT_DOUBLE_EQ(*pl.mean, 1.0);
    EXPECT_EQ(pl.finite_pairs, 2u);
    EXPECT_EQ(pl.excluded_pairs, 4u);
}

TEST(PathLength, MatchesFloydWarshallAtAnyThreadCount) {
    for (std::size_t i = 0; i < 30; ++i) {
        Graph g = families::mixed(i, 50);
        auto want = brute_path_length(g);
        auto one = characteristic_path_length(g, 1);
        auto four = characteristic_path_length(g, 4);
        ASSERT_TRUE(one.mean && want);
        EXPECT_NEAR(*one.mean, *want, 1e-12);
        EXPECT_EQ(*one.mean, *four.mean);
    }
}

TEST(Assortativity, CasesAndOracle) {
    EXPECT_FALSE(assortativity(families::cycle(6)));
    EXPECT_NEAR(*assortativity(families::star(5)), -1.0, 1e-12);
    for (std::size_t i = 0; i < 50; ++i) {
        Graph g = families::mixed(i, 60);
        auto got = assortativity(g);
        auto want = brute_assortativity(g);
        ASSERT_EQ(got.has_value(), want.has_value());
        if (got) {
            EXPECT_NEAR(*got, *want, 1e-10);
            EXPECT_GE(*got, -1.0);
            EXPECT_LE(*got, 1.0);
        }
    }
}

TEST(Modularity, CompleteGraphIsZero) {
    for (std::size_t n = 3; n <= 8; ++n) EXPECT_NEAR(modularity(families::complete(n), 1).Q, 0.0, 1e-12);
}

TEST(Modularity, TwoCliquesAgainstExhaustivePartitions) {
    Graph g = families::disjoint_union(families::complete(5), families::complete(5));
    auto es = g.edges();
    es.push_back({0, 5});
    Graph joined = Graph::from_edges(10, es);
    const double exact = best_partition_modularity(joined);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        EXPECT_NEAR(modularity(joined, seed).Q, exact, 0.02);
    }
}

TEST(Modularity, EqualCliquesApproachClosedForm) {
    for (std::size_t c = 2; c <= 6; ++c) {
        Graph g = families::complete(5);
        for (std::size_t k = 1; k < c; ++k) g = families::disjoint_union(g, families::complete(5));
        EXPECT_NEAR(modularity(g, 3).Q, 1.0 - 1.0 / static_cast<double>(c), 1e-12);
    }
}

TEST(Modularity, ReportedPartitionScoresItsValue) {
    for (std::size_t i = 0; i < 40; ++i) {
        Graph g = families::mixed(i, 80);
        auto r = modularity(g, i);
        EXPECT_NEAR(r.Q, modularity_of(g, r.community), 1e-12);
        EXPECT_NEAR(r.Q, brute_modularity(g, r.community), 1e-12);
        EXPECT_GE(r.Q, -0.5);
        EXPECT_EQ(r.Q, modularity(g, i).Q);
    }
}

TEST(Modularity, NeverBelowExhaustiveOptimumByMuchOnSmallGraphs) {
    for (std::size_t i = 0; i < 12; ++i) {
        Graph g = families::gnp(9, 0.35, 900 + i);
        if (g.num_edges() == 0) continue;
        const double exact = best_partition_modularity(g);
        EXPECT_LE(modularity(g, 0).Q, exact + 1e-12);
        EXPECT_GE(modularity(g, 0).Q, exact - 0.05) << i;
    }
}

TEST(ClassicalSet, AgreesWithIndividualIndices) {
    for (std::size_t i = 0; i < 20; ++i) {
        Graph g = families::mixed(i, 60);
        auto set = compute_classical_indices(g, 7, 2);
        EXPECT_EQ(set.C, transitivity(g));
        EXPECT_EQ(set.v_hat, degree_variance_normalised(g));
        EXPECT_EQ(set.var_k, degree_variance(g).raw);
        EXPECT_EQ(set.L, characteristic_path_length(g).mean);
        EXPECT_EQ(set.r, assortativity(g));
        EXPECT_EQ(set.Q, modularity(g, 7).Q);
    }
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ndseq/classical.hpp"
#include "ndseq/graph.hpp"
#include "ndseq/indices.hpp"
#include "ndseq/io.hpp"

namespace ndseq {

struct Provenance {
    std::string path;
    std::string format;
    LoadOptions options;
    std::optional<std::uint64_t> seed;
};

struct AnalysisOptions {
    NdsOptions nds;
    bool classical = true;       ///< C, v_hat, L, r, Q (L and Q dominate runtime)
    std::uint64_t seed = 0;      ///< modularity refinement order
    unsigned threads = 1;        ///< BFS sources for L
};

// One network's full index vector. Undefined indices stay empty and are
// written as null.
struct IndexReport {
    std::string network_id;
    std::size_t n = 0;
    std::size_t m = 0;
    double density = 0.0;
    std::size_t components = 0;
    NdsIndexSet nds;
    std::optional<ClassicalIndexSet> classical;
    std::vector<std::string> warnings;
    Provenance provenance;
};

IndexReport analyze(const Graph& g, const AnalysisOptions& options = {},
                    std::string network_id = {});

/// Column names of every scalar index, in report order:
/// S, V_n, V_n_hat, Omega, R, R_Omega, C, v_hat, L, r, Q.
const std::vector<std::string>& index_names();
/// The NDS subset: S, V_n, V_n_hat, Omega, R, R_Omega.
const std::vector<std::string>& nds_index_names();
std::optional<double> index_value(const IndexReport& r, std::string_view name);

std::string report_to_json(const IndexReport& r, int indent = 2);

/// Flat CSV with 6 significant digits; undefined values are empty cells.
std::string csv_header();
std::string csv_row(const IndexReport& r);
/// "%.6g", or "" for an undefined value.
std::string format_csv_value(std::optional<double> v);

}  // namespace ndseq

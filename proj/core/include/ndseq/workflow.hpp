#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ndseq/io.hpp"
#include "ndseq/null_models.hpp"
#include "ndseq/report.hpp"
#include "ndseq/stats.hpp"

namespace ndseq {

// ---------------------------------------------------------------------------
// Single network

/// Loads a graph and scores it, filling in provenance.
IndexReport analyze_file(const std::filesystem::path& path, InputFormat format,
                         const LoadOptions& load, const AnalysisOptions& analysis);

struct NullComparison {
    IndexReport real;
    NullEnsemble null;
    std::map<std::string, std::optional<double>> delta;  ///< real - null mean
};

NullComparison null_compare(const Graph& g, std::size_t count, const RewireConfig& cfg,
                            const AnalysisOptions& analysis, unsigned threads = 1);

std::string null_comparison_json(const NullComparison& c, int indent = 2);
/// "S 0.324 (0.062)" style, one NDS index per line.
std::string null_comparison_table(const NullComparison& c);

// ---------------------------------------------------------------------------
// Batch

struct ManifestEntry {
    std::filesystem::path path;
    InputFormat format = InputFormat::edge_list;
    std::string id;  ///< path as written in the manifest
};

/// One entry per non-comment line: `path [edge-list|matrix-market]`.
/// Relative paths resolve against `base_dir`. When the format is omitted it
/// is inferred from the extension.
std::vector<ManifestEntry> parse_manifest(std::istream& in, const std::filesystem::path& base_dir);

struct BatchOptions {
    AnalysisOptions analysis;
    LoadOptions load;
    unsigned parallelism = 1;
    bool keep_going = false;
    /// When > 0 each network is also rewired this many times and the null
    /// means of the NDS indices are appended as `<index>_null_mean` columns.
    std::size_t null_count = 0;
    RewireConfig rewire;
};

struct BatchRow {
    std::string id;
    std::optional<IndexReport> report;
    std::map<std::string, IndexSummary> null_summary;
    std::string error;
};

/// Rows follow manifest order regardless of parallelism. Without keep_going
/// the first failing entry (in manifest order) is rethrown.
std::vector<BatchRow> run_batch(const std::vector<ManifestEntry>& entries,
                                const BatchOptions& options);

std::string batch_csv(const std::vector<BatchRow>& rows);
std::string batch_json(const std::vector<BatchRow>& rows, int indent = 2);

/// Reads a batch CSV back as named numeric columns; error rows are skipped.
/// By default every index column present is read; otherwise exactly the
/// requested columns, which must all exist.
struct IndexTable {
    std::vector<std::string> labels;
    std::vector<std::vector<std::optional<double>>> columns;
    std::size_t rows = 0;
};
IndexTable read_batch_csv(std::istream& in, const std::vector<std::string>& wanted = {});

struct PairedIndexTest {
    std::string index;
    std::optional<PairedTestResult> result;
};

/// Wilcoxon signed-rank test of each NDS index against its null mean, using
/// the `<index>` and `<index>_null_mean` columns of a batch table. Rows where
/// either value is undefined are dropped for that index.
std::vector<PairedIndexTest> paired_null_tests(const IndexTable& table);
std::string paired_tests_csv(const std::vector<PairedIndexTest>& tests);

// ---------------------------------------------------------------------------
// Temporal

struct TemporalOptions {
    AnalysisOptions analysis;  ///< classical indices are never computed here
    LoadOptions load;
    RewireConfig rewire;
    std::size_t count = 10;
    unsigned parallelism = 1;
    bool keep_going = false;
    std::vector<std::string> indices{"Omega"};
};

struct TemporalTrack {
    std::vector<std::optional<double>> real;
    std::vector<std::optional<double>> null_mean;
    std::vector<std::optional<double>> null_sd;
};

struct TemporalSeries {
    std::vector<std::string> timestamps;  ///< strictly increasing
    std::map<std::string, TemporalTrack> tracks;
    std::vector<std::string> indices;     ///< track order for output
    std::vector<std::string> warnings;
};

/// Every regular, non-hidden file in `dir` is one timestamp; files are
/// ordered lexicographically by name and labelled by their stem.
TemporalSeries run_temporal(const std::filesystem::path& dir, const TemporalOptions& options);

/// timestamp,<index>_real,<index>_null_mean,<index>_null_sd,...
std::string temporal_csv(const TemporalSeries& s);

}  // namespace ndseq

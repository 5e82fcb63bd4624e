#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "ndseq/graph.hpp"

namespace ndseq {

enum class InputFormat { edge_list, matrix_market };

std::string_view to_string(InputFormat f) noexcept;
/// Accepts "edge-list" / "edges" and "matrix-market" / "mtx".
std::optional<InputFormat> parse_input_format(std::string_view name) noexcept;
/// `.mtx` selects MatrixMarket, everything else an edge list.
InputFormat format_for_path(const std::filesystem::path& path);

struct LoadOptions {
    /// Treat records as directed arcs and take the union of both orientations.
    /// Required for MatrixMarket `general` matrices.
    bool symmetrise = false;
    bool drop_self_loops = false;
    /// Merge repeated edges instead of rejecting the input as a multigraph.
    bool collapse_multi_edges = false;
    /// Keep only the ceil(d * n(n-1)/2) heaviest edges, ties broken by the
    /// lexicographic order of the remapped (u, v) pair with u < v.
    std::optional<double> weight_threshold_density;
};

// Edge list: one edge per line as two whitespace separated node ids and an
// optional numeric weight. Blank lines and lines starting with '#' or '%' are
// skipped. Node ids are arbitrary tokens; if every id is a non-negative
// integer they are ordered numerically, otherwise by first appearance.
//
// MatrixMarket: `%%MatrixMarket matrix coordinate {pattern|real|integer}
// {symmetric|general}`, square, 1-based indices.
//
// Throws ParseError (with line number) on malformed input and ValidationError
// on self-loops, multi-edges, asymmetric input without `symmetrise`, or a graph
// with no edges.
Graph load_graph(std::istream& in, InputFormat format, const LoadOptions& options = {});
Graph load_graph_file(const std::filesystem::path& path, InputFormat format,
                      const LoadOptions& options = {});

/// Writes "u v" lines using node labels, preceded by a comment header.
void write_edge_list(const Graph& g, std::ostream& out);
/// Writes a `pattern symmetric` coordinate matrix (lower triangle).
void write_matrix_market(const Graph& g, std::ostream& out);

}  // namespace ndseq

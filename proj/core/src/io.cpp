#include "ndseq/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "ndseq/errors.hpp"

namespace ndseq {
namespace {

struct RawRecord {
    std::size_t u;
    std::size_t v;
    double weight;
    std::size_t line;
};

struct RawInput {
    std::size_t n = 0;
    std::vector<RawRecord> records;
    std::vector<std::string> labels;
    bool directed = false;  // records are arcs that must be symmetrised
};

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string_view trim_left(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

std::optional<std::uint64_t> parse_uint(std::string_view tok) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
    return value;
}

double parse_weight(std::string_view tok, std::size_t line) {
    // std::from_chars for double is not available in every libstdc++ we target.
    std::string s(tok);
    char* end = nullptr;
    double w = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(w)) {
        throw ParseError("invalid weight '" + s + "'", line);
    }
    return w;
}

RawInput read_edge_list(std::istream& in, const LoadOptions& options) {
    std::vector<std::pair<std::string, std::string>> ends;
    std::vector<double> weights;
    std::vector<std::size_t> line_of;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto body = trim_left(line);
        if (body.empty() || body.front() == '#' || body.front() == '%') continue;
        auto tokens = split_ws(body);
        if (tokens.size() < 2 || tokens.size() > 3) {
            throw ParseError("expected 2 or 3 fields, found " + std::to_string(tokens.size()),
                             lineno);
        }
        ends.emplace_back(std::string(tokens[0]), std::string(tokens[1]));
        weights.push_back(tokens.size() == 3 ? parse_weight(tokens[2], lineno) : 1.0);
        line_of.push_back(lineno);
    }
    if (in.bad()) throw ParseError("read error", lineno);

    // Node id remapping: numeric ids sort numerically, anything else keeps
    // first-appearance order.
    bool all_numeric = true;
    for (const auto& [a, b] : ends) {
        if (!parse_uint(a) || !parse_uint(b)) {
            all_numeric = false;
            break;
        }
    }

    RawInput raw;
    raw.directed = options.symmetrise;
    std::unordered_map<std::string, std::size_t> index;
    if (all_numeric) {
        std::map<std::uint64_t, std::string> ordered;
        for (const auto& [a, b] : ends) {
            ordered.emplace(*parse_uint(a), a);
            ordered.emplace(*parse_uint(b), b);
        }
        for (const auto& [num, text] : ordered) {
            index.emplace(std::to_string(num), raw.labels.size());
            raw.labels.push_back(std::to_string(num));
        }
        for (std::size_t i = 0; i < ends.size(); ++i) {
            raw.records.push_back({index.at(std::to_string(*parse_uint(ends[i].first))),
                                   index.at(std::to_string(*parse_uint(ends[i].second))),
                                   weights[i], line_of[i]});
        }
    } else {
        auto id_of = [&](const std::string& s) {
            auto [it, inserted] = index.try_emplace(s, raw.labels.size());
            if (inserted) raw.labels.push_back(s);
            return it->second;
        };
        for (std::size_t i = 0; i < ends.size(); ++i) {
            auto u = id_of(ends[i].first);
            auto v = id_of(ends[i].second);
            raw.records.push_back({u, v, weights[i], line_of[i]});
        }
    }
    raw.n = raw.labels.size();
    return raw;
}

RawInput read_matrix_market(std::istream& in, const LoadOptions& options) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError("missing MatrixMarket header", 1);
    ++lineno;

    auto header = split_ws(line);
    std::vector<std::string> h;
    for (auto t : header) {
        std::string s(t);
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        h.push_back(std::move(s));
    }
    if (h.size() != 5 || h[0] != "%%matrixmarket" || h[1] != "matrix" || h[2] != "coordinate") {
        throw ParseError("expected '%%MatrixMarket matrix coordinate <field> <symmetry>'", lineno);
    }
    const std::string& field = h[3];
    const std::string& symmetry = h[4];
    if (field != "pattern" && field != "real" && field != "integer") {
        throw ParseError("unsupported MatrixMarket field '" + field + "'", lineno);
    }
    if (symmetry != "symmetric" && symmetry != "general") {
        throw ParseError("unsupported MatrixMarket symmetry '" + symmetry + "'", lineno);
    }
    if (symmetry == "general" && !options.symmetrise) {
        throw ValidationError(
            "MatrixMarket 'general' matrix is asymmetric input; enable symmetrise");
    }
    const bool has_value = field != "pattern";

    std::optional<std::uint64_t> rows, cols, nnz;
    while (std::getline(in, line)) {
        ++lineno;
        auto body = trim_left(line);
        if (body.empty() || body.front() == '%') continue;
        auto tok = split_ws(body);
        if (tok.size() != 3) throw ParseError("expected size line 'rows cols entries'", lineno);
        rows = parse_uint(tok[0]);
        cols = parse_uint(tok[1]);
        nnz = parse_uint(tok[2]);
        if (!rows || !cols || !nnz) throw ParseError("invalid size line", lineno);
        break;
    }
    if (!rows) throw ParseError("missing size line", lineno);
    if (*rows != *cols) {
        throw ValidationError("adjacency matrix must be square, got " + std::to_string(*rows) +
                              "x" + std::to_string(*cols));
    }

    RawInput raw;
    raw.n = *rows;
    raw.directed = symmetry == "general";
    raw.labels.reserve(raw.n);
    for (std::size_t i = 1; i <= raw.n; ++i) raw.labels.push_back(std::to_string(i));

    std::uint64_t seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto body = trim_left(line);
        if (body.empty() || body.front() == '%') continue;
        auto tok = split_ws(body);
        if (tok.size() != (has_value ? 3u : 2u)) {
            throw ParseError(std::string("expected ") + (has_value ? "'i j value'" : "'i j'"),
                             lineno);
        }
        auto i = parse_uint(tok[0]);
        auto j = parse_uint(tok[1]);
        if (!i || !j || *i == 0 || *j == 0 || *i > raw.n || *j > raw.n) {
            throw ParseError("entry index out of range", lineno);
        }
        double w = has_value ? parse_weight(tok[2], lineno) : 1.0;
        if (++seen > *nnz) throw ParseError("more entries than declared", lineno);
        raw.records.push_back({*i - 1, *j - 1, w, lineno});
    }
    if (seen != *nnz) {
        throw ParseError("declared " + std::to_string(*nnz) + " entries, found " +
                             std::to_string(seen),
                         lineno);
    }
    return raw;
}

struct WeightedEdge {
    Edge e;
    double w;
};

Graph finish(RawInput raw, const LoadOptions& options) {
    // Canonical undirected key -> weight. For directed input, an arc and its
    // reverse denote the same undirected edge; a repeated identical arc is a
    // multi-edge.
    std::map<std::pair<std::size_t, std::size_t>, double> undirected;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> arcs;

    for (const auto& r : raw.records) {
        if (r.u == r.v) {
            if (options.drop_self_loops) continue;
            throw ValidationError("line " + std::to_string(r.line) + ": self-loop on node '" +
                                  raw.labels[r.u] + "'");
        }
        auto key = std::minmax(r.u, r.v);
        bool duplicate = false;
        if (raw.directed) {
            duplicate = !arcs.try_emplace({r.u, r.v}, r.line).second;
        } else {
            duplicate = undirected.contains(key);
        }
        if (duplicate && !options.collapse_multi_edges) {
            std::string hint = raw.directed ? "" : " (directed input needs symmetrise)";
            throw ValidationError("line " + std::to_string(r.line) + ": duplicate edge ('" +
                                  raw.labels[r.u] + "', '" + raw.labels[r.v] + "')" + hint);
        }
        auto [it, inserted] = undirected.try_emplace(key, r.weight);
        if (!inserted) it->second = std::max(it->second, r.weight);
    }

    std::vector<WeightedEdge> edges;
    edges.reserve(undirected.size());
    for (const auto& [key, w] : undirected) {
        edges.push_back({{static_cast<NodeId>(key.first), static_cast<NodeId>(key.second)}, w});
    }

    if (options.weight_threshold_density) {
        double d = *options.weight_threshold_density;
        if (!(d > 0.0 && d <= 1.0)) {
            throw ValidationError("density threshold must lie in (0, 1]");
        }
        const double pairs = static_cast<double>(raw.n) * static_cast<double>(raw.n - 1) / 2.0;
        // Guard against d * pairs landing a few ulps above an integer.
        auto keep = static_cast<std::size_t>(std::ceil(d * pairs * (1.0 - 1e-12)));
        std::stable_sort(edges.begin(), edges.end(),
                         [](const WeightedEdge& a, const WeightedEdge& b) { return a.w > b.w; });
        if (keep < edges.size()) edges.resize(keep);
        std::sort(edges.begin(), edges.end(),
                  [](const WeightedEdge& a, const WeightedEdge& b) { return a.e < b.e; });
    }

    if (edges.empty()) throw ValidationError("graph has no edges");

    std::vector<Edge> plain;
    plain.reserve(edges.size());
    for (const auto& we : edges) plain.push_back(we.e);
    return Graph::from_edges(raw.n, plain, std::move(raw.labels));
}

}  // namespace

std::string_view to_string(InputFormat f) noexcept {
    switch (f) {
        case InputFormat::edge_list: return "edge-list";
        case InputFormat::matrix_market: return "matrix-market";
    }
    return "unknown";
}

std::optional<InputFormat> parse_input_format(std::string_view name) noexcept {
    if (name == "edge-list" || name == "edges") return InputFormat::edge_list;
    if (name == "matrix-market" || name == "mtx") return InputFormat::matrix_market;
    return std::nullopt;
}

InputFormat format_for_path(const std::filesystem::path& path) {
    return path.extension() == ".mtx" ? InputFormat::matrix_market : InputFormat::edge_list;
}

Graph load_graph(std::istream& in, InputFormat format, const LoadOptions& options) {
    RawInput raw = format == InputFormat::matrix_market ? read_matrix_market(in, options)
                                                        : read_edge_list(in, options);
    return finish(std::move(raw), options);
}

Graph load_graph_file(const std::filesystem::path& path, InputFormat format,
                      const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    return load_graph(in, format, options);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << "# nodes " << g.num_nodes() << " edges " << g.num_edges() << '\n';
    for (const auto& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
}

void write_matrix_market(const Graph& g, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate pattern symmetric\n";
    out << g.num_nodes() << ' ' << g.num_nodes() << ' ' << g.num_edges() << '\n';
    for (const auto& e : g.edges()) out << (e.v + 1) << ' ' << (e.u + 1) << '\n';
}

}  // namespace ndseq

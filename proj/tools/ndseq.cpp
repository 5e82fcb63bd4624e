#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "ndseq/errors.hpp"
#include "ndseq/io.hpp"
#include "ndseq/null_models.hpp"
#include "ndseq/report.hpp"
#include "ndseq/stats.hpp"
#include "ndseq/workflow.hpp"

namespace fs = std::filesystem;
using namespace ndseq;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_undefined = 1;
constexpr int exit_input = 2;

struct Settings {
    std::string variance_mode = "sample";
    std::string divisor = "all";
    std::string complexity_scale = "per-node";
    std::size_t ensemble_count = 10;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::string output = "-";
    std::string output_format;
    bool no_classical = false;

    std::string format;
    bool symmetrise = false;
    bool drop_self_loops = false;
    bool collapse_multi = false;
    std::optional<double> density;
    std::uint32_t swaps_per_edge = 10;
};

std::uint64_t resolve_seed(const Settings& s) {
    if (s.seed) return *s.seed;
    const char* env = std::getenv("NDS_SEED");
    if (env == nullptr || *env == '\0') return 0;
    std::string text(env);
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
        value = std::stoull(text, &used, 10);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.front() == '-') {
        throw ValidationError("NDS_SEED must be a non-negative integer, got '" + text + "'");
    }
    return value;
}

LoadOptions load_options(const Settings& s) {
    LoadOptions o;
    o.symmetrise = s.symmetrise;
    o.drop_self_loops = s.drop_self_loops;
    o.collapse_multi_edges = s.collapse_multi;
    o.weight_threshold_density = s.density;
    return o;
}

AnalysisOptions analysis_options(const Settings& s, std::uint64_t seed) {
    AnalysisOptions a;
    a.nds.variance = s.variance_mode == "population" ? VarianceMode::population : VarianceMode::sample;
    a.nds.divisor = s.divisor == "contributing" ? HeterogeneityDivisor::contributing_nodes
                                                : HeterogeneityDivisor::all_nodes;
    a.nds.complexity_scale =
        s.complexity_scale == "as-written" ? ComplexityScale::as_written : ComplexityScale::per_node;
    a.classical = !s.no_classical;
    a.seed = seed;
    a.threads = s.threads;
    return a;
}

RewireConfig rewire_config(const Settings& s, std::uint64_t seed) {
    RewireConfig c;
    c.swaps_per_edge = s.swaps_per_edge;
    c.seed = seed;
    return c;
}

InputFormat input_format(const Settings& s, const fs::path& path) {
    if (s.format.empty()) return format_for_path(path);
    auto f = parse_input_format(s.format);
    if (!f) throw ValidationError("unknown input format '" + s.format + "'");
    return *f;
}

std::string pick_format(const Settings& s, const std::string& fallback) {
    if (!s.output_format.empty()) return s.output_format;
    if (s.output != "-") {
        auto ext = fs::path(s.output).extension().string();
        if (ext == ".json") return "json";
        if (ext == ".csv") return "csv";
    }
    return fallback;
}

// The whole document is rendered before anything touches the destination, and
// files are replaced by rename so a failure never leaves a truncated output.
void emit(const Settings& s, const std::string& content) {
    if (s.output == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    const fs::path target(s.output);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    fs::rename(tmp, target);
}

bool any_defined(const IndexReport& r) {
    for (const auto& name : index_names()) {
        if (index_value(r, name)) return true;
    }
    return false;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int cmd_analyze(const Settings& s, const std::string& path) {
    const auto seed = resolve_seed(s);
    IndexReport r = analyze_file(path, input_format(s, path), load_options(s), analysis_options(s, seed));
    r.provenance.seed = seed;
    const auto fmt = pick_format(s, "json");
    if (fmt == "csv") {
        emit(s, csv_header() + "\n" + csv_row(r) + "\n");
    } else {
        emit(s, report_to_json(r) + "\n");
    }
    print_warnings(r.warnings);
    return any_defined(r) ? exit_ok : exit_undefined;
}

int cmd_nullcompare(const Settings& s, const std::string& path) {
    const auto seed = resolve_seed(s);
    if (s.ensemble_count == 0) throw ValidationError("--ensemble-count must be >= 1");
    Graph g = load_graph_file(path, input_format(s, path), load_options(s));
    NullComparison c = null_compare(g, s.ensemble_count, rewire_config(s, seed),
                                    analysis_options(s, seed), s.threads);
    c.real.network_id = path;
    c.real.provenance.path = path;
    c.real.provenance.format = std::string(to_string(input_format(s, path)));
    c.real.provenance.options = load_options(s);
    c.real.provenance.seed = seed;

    const auto fmt = pick_format(s, "table");
    if (fmt == "json") {
        emit(s, null_comparison_json(c) + "\n");
    } else if (fmt == "csv") {
        std::ostringstream out;
        out << "index,real,null_mean,null_sd,delta\n";
        for (const auto& name : index_names()) {
            auto it = c.null.summary.find(name);
            if (it == c.null.summary.end()) continue;
            out << name << ',' << format_csv_value(index_value(c.real, name)) << ','
                << format_csv_value(it->second.mean) << ',' << format_csv_value(it->second.sd) << ','
                << format_csv_value(c.delta.at(name)) << '\n';
        }
        emit(s, out.str());
    } else {
        emit(s, null_comparison_table(c));
    }
    for (const auto& rw : c.null.rewiring) {
        if (!rw.quota_met) {
            std::cerr << "warning: a realization stopped after " << rw.swaps
                      << " swaps (attempt cap reached)\n";
            break;
        }
    }
    print_warnings(c.real.warnings);
    return any_defined(c.real) ? exit_ok : exit_undefined;
}

int cmd_batch(const Settings& s, const std::string& manifest, bool keep_going, bool with_null) {
    std::ifstream in(manifest);
    if (!in) throw ValidationError("cannot open manifest " + manifest);
    const auto seed = resolve_seed(s);
    auto entries = parse_manifest(in, fs::path(manifest).parent_path());
    if (entries.empty()) throw ValidationError("manifest lists no networks");
    for (auto& e : entries) {
        if (!s.format.empty()) e.format = input_format(s, e.path);
    }

    BatchOptions opts;
    opts.analysis = analysis_options(s, seed);
    opts.load = load_options(s);
    opts.parallelism = s.threads;
    opts.keep_going = keep_going;
    if (with_null) {
        if (s.ensemble_count == 0) throw ValidationError("--ensemble-count must be >= 1");
        opts.null_count = s.ensemble_count;
        opts.rewire = rewire_config(s, seed);
    }
    const auto rows = run_batch(entries, opts);

    const auto fmt = pick_format(s, "csv");
    emit(s, fmt == "json" ? batch_json(rows) + "\n" : batch_csv(rows));

    bool defined = false;
    for (const auto& row : rows) {
        if (!row.error.empty()) std::cerr << "error: " << row.id << ": " << row.error << '\n';
        if (row.report && any_defined(*row.report)) defined = true;
    }
    return defined ? exit_ok : exit_undefined;
}

IndexTable read_table(const std::string& path, const std::vector<std::string>& wanted = {}) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    return read_batch_csv(in, wanted);
}

int cmd_correlate(const Settings& s, const std::string& path, bool absolute) {
    const IndexTable t = read_table(path);
    if (t.rows < 3) {
        throw ValidationError("correlation needs at least 3 rows, got " + std::to_string(t.rows));
    }
    const CorrelationMatrix m = correlation_matrix(t.labels, t.columns);
    emit(s, correlation_matrix_csv(m, absolute));
    for (std::size_t a = 0; a < m.labels.size(); ++a) {
        for (std::size_t b = a + 1; b < m.labels.size(); ++b) {
            if (m.rho[a][b]) return exit_ok;
        }
    }
    return exit_undefined;
}

int cmd_paired(const Settings& s, const std::string& path) {
    std::vector<std::string> wanted;
    for (const auto& name : nds_index_names()) {
        wanted.push_back(name);
        wanted.push_back(name + "_null_mean");
    }
    const auto tests = paired_null_tests(read_table(path, wanted));
    emit(s, paired_tests_csv(tests));
    for (const auto& t : tests) {
        if (t.result) return exit_ok;
    }
    return exit_undefined;
}

int cmd_temporal(const Settings& s, const std::string& dir, bool keep_going,
                 const std::vector<std::string>& indices) {
    for (const auto& name : indices) {
        if (std::find(index_names().begin(), index_names().end(), name) == index_names().end()) {
            throw ValidationError("unknown index '" + name + "'");
        }
    }
    const auto seed = resolve_seed(s);
    TemporalOptions opts;
    opts.analysis = analysis_options(s, seed);
    opts.load = load_options(s);
    opts.rewire = rewire_config(s, seed);
    opts.count = s.ensemble_count;
    opts.parallelism = s.threads;
    opts.keep_going = keep_going;
    opts.indices = indices;
    const TemporalSeries series = run_temporal(dir, opts);
    emit(s, temporal_csv(series));
    print_warnings(series.warnings);
    for (const auto& [name, track] : series.tracks) {
        for (const auto& v : track.real) {
            if (v) return exit_ok;
        }
    }
    return exit_undefined;
}

struct GenerateArgs {
    std::string model;
    std::size_t n = 0;
    double p = 0.0;
    double radius = 0.0;
    std::size_t dim = 2;
    std::size_t k = 0;
    double beta = 0.0;
    std::size_t m0 = 0;
    std::size_t m_attach = 0;
};

int cmd_generate(const Settings& s, const GenerateArgs& a) {
    const auto seed = resolve_seed(s);
    ModelSpec spec;
    if (a.model == "er") {
        spec = ErdosRenyi{a.n, a.p};
    } else if (a.model == "rgg") {
        spec = RandomGeometric{a.n, a.radius, a.dim};
    } else if (a.model == "ws") {
        spec = WattsStrogatz{a.n, a.k, a.beta};
    } else {
        spec = BarabasiAlbert{a.n, a.m0, a.m_attach};
    }
    const Graph g = generate(spec, seed);
    std::ostringstream out;
    const bool mtx = s.output_format == "mtx" ||
                     (s.output_format.empty() && fs::path(s.output).extension() == ".mtx");
    if (mtx) {
        write_matrix_market(g, out);
    } else {
        write_edge_list(g, out);
    }
    emit(s, out.str());
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Neighbourhood degree sequence indices for undirected graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ndseq 0.1.0");

    Settings s;
    app.option_defaults()->always_capture_default();
    app.add_option("--variance-mode", s.variance_mode, "Variance convention for V_n and V_n_hat")
        ->check(CLI::IsMember({"sample", "population"}));
    app.add_option("--heterogeneity-divisor", s.divisor, "Divide V_n by all nodes or contributing nodes")
        ->check(CLI::IsMember({"all", "contributing"}));
    app.add_option("--complexity-scale", s.complexity_scale, "Scale convention for R and R_Omega")
        ->check(CLI::IsMember({"per-node", "as-written"}));
    app.add_option("--ensemble-count", s.ensemble_count, "Null realizations per network");
    app.add_option("--swaps-per-edge", s.swaps_per_edge, "Successful double swaps per edge")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", s.seed, "Base seed (falls back to NDS_SEED, then 0)");
    app.add_option("-j,--threads,--parallelism", s.threads, "Worker threads (0 = all cores)");
    app.add_option("-o,--output", s.output, "Output file, '-' for stdout");
    app.add_option("--output-format", s.output_format, "json, csv, table or mtx, depending on command")
        ->check(CLI::IsMember({"json", "csv", "table", "mtx", "edges"}));
    app.add_flag("--no-classical", s.no_classical, "Skip C, v_hat, L, r and Q");
    app.add_option("--format", s.format, "Input format: edge-list or matrix-market");
    app.add_flag("--symmetrise,--symmetrize", s.symmetrise, "Treat records as directed arcs and symmetrise");
    app.add_flag("--drop-self-loops", s.drop_self_loops, "Drop self-loops instead of failing");
    app.add_flag("--collapse-multi", s.collapse_multi, "Merge repeated edges instead of failing");
    app.add_option("--density", s.density, "Keep the heaviest edges up to this density")
        ->check(CLI::Range(0.0, 1.0));

    std::string path;
    bool keep_going = false;
    bool with_null = false;
    bool absolute = false;
    std::vector<std::string> indices{"Omega"};
    GenerateArgs gen;

    auto* analyze = app.add_subcommand("analyze", "Index report for one graph");
    analyze->add_option("path", path, "Graph file")->required();
    analyze->fallthrough();

    auto* nullcmp = app.add_subcommand("nullcompare", "Compare a graph with its rewired ensemble");
    nullcmp->add_option("path", path, "Graph file")->required();
    nullcmp->fallthrough();

    auto* batch = app.add_subcommand("batch", "Index table for every graph in a manifest");
    batch->add_option("manifest", path, "Lines of 'path [format]'")->required();
    batch->add_flag("--keep-going", keep_going, "Record failures as error rows");
    batch->add_flag("--with-null", with_null, "Append null-ensemble means of the NDS indices");
    batch->fallthrough();

    auto* correlate = app.add_subcommand("correlate", "Spearman matrix of a batch table");
    correlate->add_option("table", path, "CSV written by 'batch'")->required();
    correlate->add_flag("--abs", absolute, "Write absolute correlations");
    correlate->fallthrough();

    auto* paired = app.add_subcommand("paired", "Wilcoxon signed-rank tests of real vs null indices");
    paired->add_option("table", path, "CSV written by 'batch --with-null'")->required();
    paired->fallthrough();

    auto* temporal = app.add_subcommand("temporal", "Index track over a directory of snapshots");
    temporal->add_option("dir", path, "One graph file per timestamp")->required();
    temporal->add_flag("--keep-going", keep_going, "Skip unreadable timestamps with a warning");
    temporal->add_option("--index", indices, "Indices to track");
    temporal->fallthrough();

    auto* generate_cmd = app.add_subcommand("generate", "Write a random model graph");
    generate_cmd->add_option("--model", gen.model, "er, rgg, ws or ba")
        ->required()
        ->check(CLI::IsMember({"er", "rgg", "ws", "ba"}));
    generate_cmd->add_option("-n,--nodes", gen.n, "Node count")->required();
    generate_cmd->add_option("-p,--probability", gen.p, "Edge probability (er)");
    generate_cmd->add_option("--radius", gen.radius, "Connection radius (rgg)");
    generate_cmd->add_option("--dim", gen.dim, "Space dimension (rgg)");
    generate_cmd->add_option("-k,--ring-degree", gen.k, "Ring neighbours per node (ws)");
    generate_cmd->add_option("--beta", gen.beta, "Rewiring probability (ws)");
    generate_cmd->add_option("--m0", gen.m0, "Seed clique order (ba)");
    generate_cmd->add_option("--attach", gen.m_attach, "Edges per new node (ba)");
    generate_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*analyze) return cmd_analyze(s, path);
        if (*nullcmp) return cmd_nullcompare(s, path);
        if (*batch) return cmd_batch(s, path, keep_going, with_null);
        if (*correlate) return cmd_correlate(s, path, absolute);
        if (*paired) return cmd_paired(s, path);
        if (*temporal) return cmd_temporal(s, path, keep_going, indices);
        if (*generate_cmd) return cmd_generate(s, gen);
    } catch (const std::exception& e) {
        std::cerr << "ndseq: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}

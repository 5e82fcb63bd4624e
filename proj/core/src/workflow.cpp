#include "ndseq/workflow.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ndseq/errors.hpp"
#include "ndseq/parallel.hpp"

namespace ndseq {
namespace {

using nlohmann::json;

json opt(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cell));
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    out.push_back(std::move(cell));
    return out;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

}  // namespace

IndexReport analyze_file(const std::filesystem::path& path, InputFormat format,
                         const LoadOptions& load, const AnalysisOptions& analysis) {
    Graph g = load_graph_file(path, format, load);
    IndexReport r = analyze(g, analysis, path.string());
    r.provenance.path = path.string();
    r.provenance.format = std::string(to_string(format));
    r.provenance.options = load;
    return r;
}

NullComparison null_compare(const Graph& g, std::size_t count, const RewireConfig& cfg,
                            const AnalysisOptions& analysis, unsigned threads) {
    NullComparison c;
    AnalysisOptions real_opts = analysis;
    real_opts.threads = threads;
    c.real = analyze(g, real_opts);
    c.null = ensemble(g, count, cfg, analysis, threads);
    for (const auto& [name, summary] : c.null.summary) {
        auto real = index_value(c.real, name);
        c.delta[name] = (real && summary.mean) ? std::optional(*real - *summary.mean) : std::nullopt;
    }
    return c;
}

std::string null_comparison_json(const NullComparison& c, int indent) {
    json j;
    j["real"] = json::parse(report_to_json(c.real, -1));
    json summary = json::object();
    for (const auto& [name, s] : c.null.summary) {
        summary[name] = {{"mean", opt(s.mean)}, {"sd", opt(s.sd)}, {"defined", s.defined}};
    }
    json rewiring = json::array();
    for (const auto& rw : c.null.rewiring) {
        rewiring.push_back(
            {{"swaps", rw.swaps}, {"attempts", rw.attempts}, {"quota_met", rw.quota_met}});
    }
    json delta = json::object();
    for (const auto& [name, d] : c.delta) delta[name] = opt(d);
    j["null"] = {{"realizations", c.null.realizations},
                 {"summary", summary},
                 {"rewiring", rewiring}};
    j["delta"] = delta;
    return j.dump(indent);
}

std::string null_comparison_table(const NullComparison& c) {
    std::ostringstream out;
    out << "index real (null mean)\n";
    for (const auto& name : nds_index_names()) {
        auto it = c.null.summary.find(name);
        std::optional<double> null_mean = it == c.null.summary.end() ? std::nullopt : it->second.mean;
        auto real = format_csv_value(index_value(c.real, name));
        auto null = format_csv_value(null_mean);
        out << name << ' ' << (real.empty() ? "null" : real) << " ("
            << (null.empty() ? "null" : null) << ")\n";
    }
    return out.str();
}

std::vector<ManifestEntry> parse_manifest(std::istream& in, const std::filesystem::path& base_dir) {
    std::vector<ManifestEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string path, format, extra;
        if (!(fields >> path) || path.front() == '#') continue;
        ManifestEntry e;
        e.id = path;
        e.path = std::filesystem::path(path).is_absolute() ? std::filesystem::path(path)
                                                           : base_dir / path;
        if (fields >> format) {
            auto f = parse_input_format(format);
            if (!f) throw ParseError("unknown format '" + format + "'", lineno);
            e.format = *f;
        } else {
            e.format = format_for_path(e.path);
        }
        if (fields >> extra) throw ParseError("expected 'path [format]'", lineno);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<BatchRow> run_batch(const std::vector<ManifestEntry>& entries,
                                const BatchOptions& options) {
    std::vector<BatchRow> rows(entries.size());
    std::vector<std::exception_ptr> failures(entries.size());
    AnalysisOptions analysis = options.analysis;
    analysis.threads = 1;

    parallel_for(entries.size(), options.parallelism, [&](std::size_t i) {
        rows[i].id = entries[i].id;
        try {
            Graph g = load_graph_file(entries[i].path, entries[i].format, options.load);
            IndexReport r = analyze(g, analysis, entries[i].id);
            r.provenance.path = entries[i].path.string();
            r.provenance.format = std::string(to_string(entries[i].format));
            r.provenance.options = options.load;
            if (options.null_count > 0) {
                RewireConfig cfg = options.rewire;
                cfg.seed = derive_seed(options.rewire.seed, i);
                AnalysisOptions null_analysis = analysis;
                null_analysis.classical = false;
                r.provenance.seed = cfg.seed;
                rows[i].null_summary = ensemble(g, options.null_count, cfg, null_analysis, 1).summary;
            }
            rows[i].report = std::move(r);
        } catch (const std::exception& e) {
            rows[i].error = e.what();
            failures[i] = std::current_exception();
        }
    });

    if (!options.keep_going) {
        for (const auto& f : failures) {
            if (f) std::rethrow_exception(f);
        }
    }
    return rows;
}

std::string batch_csv(const std::vector<BatchRow>& rows) {
    const bool with_null = std::any_of(rows.begin(), rows.end(),
                                       [](const BatchRow& r) { return !r.null_summary.empty(); });
    std::ostringstream out;
    out << csv_header();
    if (with_null) {
        for (const auto& name : nds_index_names()) out << ',' << name << "_null_mean";
    }
    out << ",error\n";
    const auto blanks = 4 + index_names().size() + (with_null ? nds_index_names().size() : 0);
    for (const auto& row : rows) {
        if (!row.report) {
            out << csv_quote(row.id) << std::string(blanks, ',') << csv_quote(row.error) << '\n';
            continue;
        }
        out << csv_row(*row.report);
        if (with_null) {
            for (const auto& name : nds_index_names()) {
                auto it = row.null_summary.find(name);
                out << ',' << format_csv_value(it == row.null_summary.end() ? std::nullopt
                                                                            : it->second.mean);
            }
        }
        out << ",\n";
    }
    return out.str();
}

std::string batch_json(const std::vector<BatchRow>& rows, int indent) {
    json out = json::array();
    for (const auto& row : rows) {
        if (row.report) {
            json j = json::parse(report_to_json(*row.report, -1));
            if (!row.null_summary.empty()) {
                json null = json::object();
                for (const auto& [name, s] : row.null_summary) {
                    null[name] = {{"mean", opt(s.mean)}, {"sd", opt(s.sd)}, {"defined", s.defined}};
                }
                j["null"] = null;
            }
            out.push_back(std::move(j));
        } else {
            out.push_back({{"network_id", row.id}, {"error", row.error}});
        }
    }
    return out.dump(indent);
}

IndexTable read_batch_csv(std::istream& in, const std::vector<std::string>& wanted) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty batch table", 1);
    const auto header = split_csv_line(line);

    IndexTable t;
    std::vector<std::size_t> source;
    std::optional<std::size_t> error_col;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "error") error_col = c;
    }
    if (wanted.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (std::find(index_names().begin(), index_names().end(), header[c]) !=
                index_names().end()) {
                t.labels.push_back(header[c]);
                source.push_back(c);
            }
        }
        if (t.labels.empty()) throw ParseError("no index columns in header", 1);
    } else {
        for (const auto& name : wanted) {
            auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end()) throw ParseError("missing column '" + name + "'", 1);
            t.labels.push_back(name);
            source.push_back(static_cast<std::size_t>(it - header.begin()));
        }
    }
    t.columns.resize(t.labels.size());

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " cells", lineno);
        }
        if (error_col && !cells[*error_col].empty()) continue;
        for (std::size_t k = 0; k < source.size(); ++k) {
            const auto& cell = cells[source[k]];
            if (cell.empty()) {
                t.columns[k].push_back(std::nullopt);
                continue;
            }
            char* end = nullptr;
            double v = std::strtod(cell.c_str(), &end);
            if (end != cell.c_str() + cell.size()) {
                throw ParseError("invalid number '" + cell + "'", lineno);
            }
            t.columns[k].push_back(v);
        }
        ++t.rows;
    }
    return t;
}

std::vector<PairedIndexTest> paired_null_tests(const IndexTable& table) {
    auto column = [&](const std::string& name) -> const std::vector<std::optional<double>>& {
        auto it = std::find(table.labels.begin(), table.labels.end(), name);
        if (it == table.labels.end()) throw ValidationError("missing column '" + name + "'");
        return table.columns[static_cast<std::size_t>(it - table.labels.begin())];
    };
    std::vector<PairedIndexTest> out;
    for (const auto& name : nds_index_names()) {
        const auto& real = column(name);
        const auto& null = column(name + "_null_mean");
        std::vector<double> x, y;
        for (std::size_t i = 0; i < real.size(); ++i) {
            if (real[i] && null[i]) {
                x.push_back(*real[i]);
                y.push_back(*null[i]);
            }
        }
        out.push_back({name, wilcoxon_signed_rank(x, y)});
    }
    return out;
}

std::string paired_tests_csv(const std::vector<PairedIndexTest>& tests) {
    std::ostringstream out;
    out << "index,n_pairs,zero_differences,W_plus,W_minus,p_value,effect_size,z_over_sqrt_n,exact\n";
    for (const auto& t : tests) {
        out << t.index;
        if (!t.result) {
            out << ",0,,,,,,,\n";
            continue;
        }
        const auto& r = *t.result;
        out << ',' << r.n_pairs << ',' << r.zero_differences << ',' << format_csv_value(r.statistic)
            << ',' << format_csv_value(r.w_minus) << ',' << format_csv_value(r.p_value) << ','
            << format_csv_value(r.effect_size) << ',' << format_csv_value(r.z_over_sqrt_n) << ','
            << (r.exact ? "true" : "false") << '\n';
    }
    return out.str();
}

TemporalSeries run_temporal(const std::filesystem::path& dir, const TemporalOptions& options) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw ValidationError("not a directory: " + dir.string());
    if (options.count == 0) throw ValidationError("ensemble count must be >= 1");

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && !name.empty() && name.front() != '.') {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    if (files.size() < 2) {
        throw ValidationError("temporal analysis needs at least 2 timestamp files in " +
                              dir.string() + ", found " + std::to_string(files.size()));
    }
    std::set<std::string> stems;
    for (const auto& f : files) {
        if (!stems.insert(f.stem().string()).second) {
            throw ValidationError("duplicate timestamp label '" + f.stem().string() + "'");
        }
    }

    AnalysisOptions analysis = options.analysis;
    analysis.classical = false;
    analysis.threads = 1;

    struct Step {
        std::optional<IndexReport> real;
        std::optional<NullEnsemble> null;
        std::string error;
    };
    std::vector<Step> steps(files.size());
    parallel_for(files.size(), options.parallelism, [&](std::size_t i) {
        try {
            Graph g = load_graph_file(files[i], format_for_path(files[i]), options.load);
            steps[i].real = analyze(g, analysis, files[i].stem().string());
            RewireConfig cfg = options.rewire;
            cfg.seed = derive_seed(options.rewire.seed, 0x5eed0000ULL + i);
            steps[i].null = ensemble(g, options.count, cfg, analysis, 1);
        } catch (const std::exception& e) {
            steps[i].error = e.what();
        }
    });

    TemporalSeries s;
    s.indices = options.indices;
    for (const auto& name : s.indices) s.tracks[name];
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (!steps[i].error.empty()) {
            std::string msg = files[i].filename().string() + ": " + steps[i].error;
            if (!options.keep_going) throw ValidationError(msg);
            s.warnings.push_back("skipped " + msg);
            continue;
        }
        s.timestamps.push_back(files[i].stem().string());
        for (const auto& name : s.indices) {
            auto& track = s.tracks[name];
            track.real.push_back(index_value(*steps[i].real, name));
            auto it = steps[i].null->summary.find(name);
            track.null_mean.push_back(it == steps[i].null->summary.end() ? std::nullopt
                                                                          : it->second.mean);
            track.null_sd.push_back(it == steps[i].null->summary.end() ? std::nullopt
                                                                        : it->second.sd);
        }
    }
    if (s.timestamps.size() < 2) {
        throw ValidationError("fewer than 2 readable timestamps remain");
    }
    return s;
}

std::string temporal_csv(const TemporalSeries& s) {
    std::ostringstream out;
    out << "timestamp";
    for (const auto& name : s.indices) {
        out << ',' << name << "_real," << name << "_null_mean," << name << "_null_sd";
    }
    out << '\n';
    for (std::size_t t = 0; t < s.timestamps.size(); ++t) {
        out << csv_quote(s.timestamps[t]);
        for (const auto& name : s.indices) {
            const auto& track = s.tracks.at(name);
            out << ',' << format_csv_value(track.real[t]) << ','
                << format_csv_value(track.null_mean[t]) << ',' << format_csv_value(track.null_sd[t]);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace ndseq

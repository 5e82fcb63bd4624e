#include "ndseq/report.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ndseq {
namespace {

using nlohmann::json;

json opt(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

json classes_to_json(const std::vector<DegreeClassSummary>& classes) {
    json out = json::array();
    for (const auto& c : classes) {
        out.push_back({{"p", c.p},
                       {"q", c.q},
                       {"distinct", c.sigma.size()},
                       {"multiplicity", c.multiplicity},
                       {"omega", c.omega ? json(*c.omega) : json(nullptr)}});
    }
    return out;
}

}  // namespace

IndexReport analyze(const Graph& g, const AnalysisOptions& options, std::string network_id) {
    IndexReport r;
    r.network_id = std::move(network_id);
    r.n = g.num_nodes();
    r.m = g.num_edges();
    r.density = g.density();
    r.components = connected_components(g);
    r.nds = compute_nds_indices(g, options.nds);
    r.warnings = r.nds.warnings;
    if (options.classical) {
        r.classical = compute_classical_indices(g, options.seed, options.threads);
        if (r.classical->L_excluded_pairs > 0) {
            r.warnings.push_back("graph is disconnected; L averages finite distances only (" +
                                 std::to_string(r.classical->L_excluded_pairs) +
                                 " pairs excluded)");
        }
    }
    r.provenance.seed = options.seed;
    return r;
}

const std::vector<std::string>& index_names() {
    static const std::vector<std::string> names{"S", "V_n", "V_n_hat", "Omega", "R", "R_Omega",
                                                "C", "v_hat", "L",      "r",     "Q"};
    return names;
}

const std::vector<std::string>& nds_index_names() {
    static const std::vector<std::string> names{"S", "V_n", "V_n_hat", "Omega", "R", "R_Omega"};
    return names;
}

std::optional<double> index_value(const IndexReport& r, std::string_view name) {
    if (name == "S") return r.nds.S;
    if (name == "V_n") return r.nds.V_n;
    if (name == "V_n_hat") return r.nds.V_n_hat;
    if (name == "Omega") return r.nds.Omega;
    if (name == "R") return r.nds.R;
    if (name == "R_Omega") return r.nds.R_Omega;
    if (!r.classical) return std::nullopt;
    if (name == "C") return r.classical->C;
    if (name == "v_hat") return r.classical->v_hat;
    if (name == "L") return r.classical->L;
    if (name == "r") return r.classical->r;
    if (name == "Q") return r.classical->Q;
    return std::nullopt;
}

std::string report_to_json(const IndexReport& r, int indent) {
    json j;
    j["network_id"] = r.network_id;
    j["n"] = r.n;
    j["m"] = r.m;
    j["density"] = r.density;
    j["components"] = r.components;

    json indices = json::object();
    for (const auto& name : index_names()) indices[name] = opt(index_value(r, name));
    j["indices"] = indices;

    j["nds"] = {{"per_degree", classes_to_json(r.nds.per_degree)},
                {"multi_ordered_degrees", r.nds.multi_ordered}};
    if (r.classical) {
        j["classical"] = {{"var_k", r.classical->var_k},
                          {"L_excluded_pairs", r.classical->L_excluded_pairs}};
    } else {
        j["classical"] = nullptr;
    }
    j["warnings"] = r.warnings;

    const auto& p = r.provenance;
    json options = {{"symmetrise", p.options.symmetrise},
                    {"drop_self_loops", p.options.drop_self_loops},
                    {"collapse_multi_edges", p.options.collapse_multi_edges},
                    {"weight_threshold_density", p.options.weight_threshold_density
                                                     ? json(*p.options.weight_threshold_density)
                                                     : json(nullptr)}};
    j["provenance"] = {{"path", p.path},
                       {"format", p.format},
                       {"options", options},
                       {"seed", p.seed ? json(*p.seed) : json(nullptr)}};
    return j.dump(indent);
}

std::string format_csv_value(std::optional<double> v) {
    if (!v) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", *v);
    return buf;
}

std::string csv_header() {
    std::string h = "network_id,n,m,density";
    for (const auto& name : index_names()) h += "," + name;
    return h;
}

std::string csv_row(const IndexReport& r) {
    std::ostringstream row;
    row << csv_field(r.network_id) << ',' << r.n << ',' << r.m << ',' << format_csv_value(r.density);
    for (const auto& name : index_names()) row << ',' << format_csv_value(index_value(r, name));
    return row.str();
}

}  // namespace ndseq

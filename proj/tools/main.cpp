#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dtwc/bicriteria.hpp"
#include "dtwc/config.hpp"
#include "dtwc/coreset.hpp"
#include "dtwc/dtw.hpp"
#include "dtwc/errors.hpp"
#include "dtwc/io.hpp"
#include "dtwc/metric_closure.hpp"
#include "dtwc/parallel.hpp"
#include "dtwc/pipeline.hpp"
#include "dtwc/simplify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace dtwc;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitResourceGuard = 3;

struct GlobalOptions {
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string output;
    std::string format;
};

// Primary output goes to --output, or stdout when it is absent.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw std::runtime_error("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

// Secondary output: explicit path, else "<output>.<suffix>" next to the primary file, else stderr.
void write_secondary(const std::string& explicit_path, const std::string& primary, const std::string& suffix,
                     const std::string& text) {
    std::string path = explicit_path;
    if (path.empty() && !primary.empty()) path = primary + "." + suffix;
    if (path.empty()) {
        std::cerr << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

CurveSet read_input(const std::string& path) { return load_curves(path, format_from_extension(path)); }

json curve_json(const Curve& c) {
    json pts = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) pts.push_back(std::vector<double>(c[i].begin(), c[i].end()));
    return json{{"id", c.id()}, {"points", std::move(pts)}};
}

json config_json(const PipelineConfig& cfg) {
    json j{{"k", cfg.k},          {"ell", cfg.ell},
           {"p", cfg.p},          {"eps", cfg.eps},
           {"delta", cfg.delta},  {"seed", cfg.seed},
           {"sample_constant", cfg.sample_constant},
           {"repetitions", cfg.repetitions}};
    j["size_override"] = cfg.size_override ? json(*cfg.size_override) : json(nullptr);
    j["alpha_override"] = cfg.alpha_override ? json(*cfg.alpha_override) : json(nullptr);
    return j;
}

json report_json(const CoresetSizeReport& r) {
    return json{{"D_ball", r.D_ball}, {"D_G", r.D_G},           {"Lambda", r.Lambda},
                {"eta", r.eta},       {"eps_eff", r.eps_eff},   {"uncapped_sample_size", r.uncapped},
                {"sample_size", r.sample_size}};
}

std::string assignment_csv(const CurveSet& set, const std::vector<std::size_t>& assignment,
                           const std::vector<double>& distances) {
    std::ostringstream out;
    out << "curve_id,center,distance\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
        out << set[i].id() << ',' << assignment[i] << ',' << format_double(distances[i]) << '\n';
    }
    return out.str();
}

void emit_clustering(const ClusteringResult& r, const CurveSet& set, const json& config, const std::string& command,
                     const GlobalOptions& g) {
    Sink sink(g.output);
    if (g.format == "csv") {
        sink.stream() << assignment_csv(set, r.assignment, r.distances);
        return;
    }
    json doc;
    doc["command"] = command;
    doc["config"] = config;
    json timings = json::object();
    for (const auto& [stage, seconds] : r.timings) timings[stage] = seconds;
    doc["timings"] = timings;
    doc["centers"] = json::array();
    for (const auto& c : r.centers) doc["centers"].push_back(curve_json(c));
    doc["provenance"] = json::array();
    for (const auto& pv : r.provenance) {
        json e{{"input_index", pv.input_index}, {"input_id", pv.input_id}};
        e["coreset_entry"] = pv.coreset_entry ? json(*pv.coreset_entry) : json(nullptr);
        e["coreset_id"] = pv.coreset_entry ? json(pv.coreset_id) : json(nullptr);
        doc["provenance"].push_back(e);
    }
    doc["assignment"] = r.assignment;
    doc["distances"] = r.distances;
    doc["cost"] = r.cost;
    if (r.size_report) {
        doc["diagnostics"] = json{{"bicriteria_cost", r.bicriteria_cost},
                                  {"bicriteria_centers", r.bicriteria_centers},
                                  {"sensitivity_total", r.gamma_total},
                                  {"sensitivity_bound", r.gamma_bound},
                                  {"coreset_size", r.coreset_size},
                                  {"size_report", report_json(*r.size_report)}};
    }
    sink.stream() << doc.dump(2) << '\n';
}

void add_pipeline_options(CLI::App* cmd, PipelineConfig& cfg, std::optional<std::size_t>& size,
                          std::optional<double>& alpha) {
    cmd->add_option("--k", cfg.k, "Number of centers")->required();
    cmd->add_option("--ell", cfg.ell, "Center complexity")->required();
    cmd->add_option("--p", cfg.p, "DTW exponent")->capture_default_str();
    cmd->add_option("--eps", cfg.eps, "Accuracy parameter in (0,1]")->capture_default_str();
    cmd->add_option("--delta", cfg.delta, "Failure probability in (0,1)")->capture_default_str();
    cmd->add_option("--size", size, "Coreset size, bypassing the size formula");
    cmd->add_option("--alpha", alpha, "Bicriteria approximation factor fed into the sensitivities");
    cmd->add_option("--constant", cfg.sample_constant, "Sample-size constant")->capture_default_str();
    cmd->add_option("--repetitions", cfg.repetitions, "Independent repetitions")->capture_default_str();
}

int run(int argc, char** argv) {
    CLI::App app{"Clustering of point sequences under p-DTW"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOptions g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--output", g.output, "Output path (default stdout)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    PipelineConfig cfg;
    std::optional<std::size_t> size;
    std::optional<double> alpha;
    std::string input;
    std::string second;
    std::string extra_path;

    auto* cluster = app.add_subcommand("cluster", "End-to-end (k,l)-median through a coreset");
    add_pipeline_options(cluster, cfg, size, alpha);
    cluster->add_option("input", input, "Curve file (.jsonl or .csv)")->required();

    std::string method = "two-approx";
    std::size_t cap = kDefaultClosureCap;
    auto* exact = app.add_subcommand("cluster-exact-route", "Clustering through the closure of all simplifications");
    exact->add_option("--k", cfg.k)->required();
    exact->add_option("--ell", cfg.ell)->required();
    exact->add_option("--p", cfg.p)->capture_default_str();
    exact->add_option("--eps", cfg.eps)->capture_default_str();
    exact->add_option("--method", method)->check(CLI::IsMember({"two-approx", "eps1"}))->capture_default_str();
    exact->add_option("--cap", cap, "Largest input handled")->capture_default_str();
    exact->add_option("input", input)->required();

    auto* coreset = app.add_subcommand("coreset", "Sensitivity-sampled weighted coreset");
    add_pipeline_options(coreset, cfg, size, alpha);
    coreset->add_option("--report", extra_path, "Size report path (default <output>.report.json)");
    coreset->add_option("input", input)->required();

    auto* bicriteria = app.add_subcommand("bicriteria", "At most 4k centers from sampled metric closures");
    bicriteria->add_option("--k", cfg.k)->required();
    bicriteria->add_option("--ell", cfg.ell)->required();
    bicriteria->add_option("--p", cfg.p)->capture_default_str();
    bicriteria->add_option("--eps", cfg.eps)->capture_default_str();
    bicriteria->add_option("--repetitions", cfg.repetitions)->capture_default_str();
    bicriteria->add_option("--assignment", extra_path, "Assignment CSV path (default <output>.assignment.csv)");
    bicriteria->add_option("input", input)->required();

    double eps_simplify = 0.1;
    auto* simplify = app.add_subcommand("simplify", "Simplify every curve to complexity <= ell");
    simplify->add_option("--ell", cfg.ell)->required();
    simplify->add_option("--p", cfg.p)->capture_default_str();
    simplify->add_option("--method", method)
        ->check(CLI::IsMember({"two-approx", "eps1", "vertex", "exact-p2"}))
        ->capture_default_str();
    simplify->add_option("--eps", eps_simplify)->capture_default_str();
    simplify->add_option("input", input)->required();

    std::string eps_text = "off";
    auto* dtw_cmd = app.add_subcommand("dtw", "Distance between the first curves of two files");
    dtw_cmd->add_option("--p", cfg.p)->capture_default_str();
    dtw_cmd->add_option("--eps", eps_text, "Quantization accuracy, or 'off'")->capture_default_str();
    dtw_cmd->add_option("first", input)->required();
    dtw_cmd->add_option("second", second)->required();

    auto* closure = app.add_subcommand("closure", "Shortest-path closure of pairwise dtw");
    closure->add_option("--p", cfg.p)->capture_default_str();
    closure->add_option("input", input)->required();

    auto* eval = app.add_subcommand("eval", "Cost of a center set");
    eval->add_option("--p", cfg.p)->capture_default_str();
    eval->add_option("--centers", second, "Center curve file")->required();
    eval->add_option("input", input)->required();

    std::size_t clusters = 3, per_cluster = 10, m = 16, d = 2;
    double noise = 0.1;
    auto* gen = app.add_subcommand("gen", "Planted-cluster synthetic curves");
    gen->add_option("--clusters", clusters)->capture_default_str();
    gen->add_option("--per-cluster", per_cluster)->capture_default_str();
    gen->add_option("--m", m)->capture_default_str();
    gen->add_option("--d", d)->capture_default_str();
    gen->add_option("--noise", noise)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    set_thread_count(g.threads);
    cfg.seed = g.seed;
    cfg.size_override = size;
    cfg.alpha_override = alpha;

    if (*cluster) {
        const auto set = read_input(input);
        const auto r = kl_median(set, cfg);
        emit_clustering(r, set, config_json(cfg), "cluster", g);
    } else if (*exact) {
        const auto set = read_input(input);
        const auto r =
            cluster_via_closure(set, cfg.k, cfg.ell, cfg.p, cfg.eps, parse_simplify_method(method), cfg.seed, cap);
        json conf{{"k", cfg.k}, {"ell", cfg.ell}, {"p", cfg.p}, {"eps", cfg.eps},
                  {"seed", cfg.seed}, {"method", method}, {"cap", cap}};
        emit_clustering(r, set, conf, "cluster-exact-route", g);
    } else if (*coreset) {
        const auto set = read_input(input);
        const auto out = emit_coreset_only(set, cfg);
        {
            Sink sink(g.output);
            write_weighted(sink.stream(), out.coreset);
        }
        json rep = report_json(out.report);
        rep["config"] = config_json(cfg);
        rep["coreset_entries"] = out.coreset.size();
        rep["sensitivity_total"] = out.profile.gamma_total();
        rep["sensitivity_bound"] = out.profile.gamma_bound();
        rep["bicriteria_cost"] = out.bicriteria.cost;
        write_secondary(extra_path, g.output, "report.json", rep.dump(2) + "\n");
    } else if (*bicriteria) {
        const auto set = read_input(input);
        const auto sol = bicriteria_klmedian(set, cfg.k, cfg.ell, cfg.p, cfg.eps, cfg.seed, cfg.repetitions);
        {
            Sink sink(g.output);
            std::vector<Curve> centers;
            for (std::size_t c = 0; c < sol.centers.size(); ++c) {
                centers.push_back(sol.centers[c].with_id("center" + std::to_string(c) + ":" + sol.centers[c].id()));
            }
            write_curves(sink.stream(), CurveSet(centers));
        }
        write_secondary(extra_path, g.output, "assignment.csv", assignment_csv(set, sol.assignment, sol.distances));
    } else if (*simplify) {
        const auto set = read_input(input);
        const auto out = simplify_all(set, cfg.ell, cfg.p, parse_simplify_method(method), eps_simplify);
        std::vector<Curve> curves;
        for (const auto& s : out) curves.push_back(s.curve);
        Sink sink(g.output);
        write_curves(sink.stream(), CurveSet(curves), g.format == "csv" ? CurveFormat::csv_long : CurveFormat::jsonl);
    } else if (*dtw_cmd) {
        const auto a = read_input(input);
        const auto b = read_input(second);
        if (a.empty() || b.empty()) throw ValidationError("both files must contain a curve");
        const auto r = dtw(a[0], b[0], cfg.p);
        json doc{{"first", a[0].id()}, {"second", b[0].id()}, {"p", cfg.p}, {"dtw", r.value}};
        json trav = json::array();
        for (const auto& [i, j] : r.traversal) trav.push_back({i, j});
        doc["traversal"] = trav;
        if (eps_text != "off") {
            double eps = 0.0;
            try {
                eps = std::stod(eps_text);
            } catch (const std::exception&) {
                throw ValidationError("--eps must be a number or 'off'");
            }
            const auto q = adtw(a[0], b[0], cfg.p, eps);
            doc["eps"] = eps;
            doc["adtw"] = q.value;
            doc["adtw_exponent"] = q.exponent ? json(*q.exponent) : json(nullptr);
        }
        Sink sink(g.output);
        sink.stream() << doc.dump(2) << '\n';
    } else if (*closure) {
        const auto set = read_input(input);
        const auto c = build_closure(set, cfg.p);
        Sink sink(g.output);
        if (g.format == "json") {
            json doc{{"ids", c.ids}, {"p", cfg.p}};
            json rows = json::array();
            for (std::size_t i = 0; i < c.n; ++i) {
                rows.push_back(std::vector<double>(c.dist.begin() + static_cast<std::ptrdiff_t>(i * c.n),
                                                   c.dist.begin() + static_cast<std::ptrdiff_t>((i + 1) * c.n)));
            }
            doc["dist"] = rows;
            sink.stream() << doc.dump(2) << '\n';
        } else {
            auto& out = sink.stream();
            for (std::size_t i = 0; i < c.n; ++i) out << (i ? "," : "") << c.ids[i];
            out << '\n';
            for (std::size_t i = 0; i < c.n; ++i) {
                for (std::size_t j = 0; j < c.n; ++j) out << (j ? "," : "") << format_double(c.at(i, j));
                out << '\n';
            }
        }
    } else if (*eval) {
        const auto set = read_input(input);
        const auto centers = read_input(second);
        const auto ev = evaluate(set, centers.curves(), cfg.p);
        Sink sink(g.output);
        if (g.format == "csv") {
            sink.stream() << assignment_csv(set, ev.assignment, ev.distances);
        } else {
            json clusters_json = json::array();
            for (std::size_t c = 0; c < centers.size(); ++c) {
                clusters_json.push_back(
                    {{"center", centers[c].id()}, {"size", ev.cluster_size[c]}, {"cost", ev.cluster_cost[c]}});
            }
            json doc{{"p", cfg.p}, {"cost", ev.cost}, {"clusters", clusters_json}, {"assignment", ev.assignment}};
            sink.stream() << doc.dump(2) << '\n';
        }
    } else if (*gen) {
        const auto set = gen_synthetic(clusters, per_cluster, m, d, noise, g.seed);
        CurveFormat fmt = g.format == "csv" ? CurveFormat::csv_long : CurveFormat::jsonl;
        if (g.format.empty() && !g.output.empty()) fmt = format_from_extension(g.output);
        Sink sink(g.output);
        write_curves(sink.stream(), set, fmt);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ResourceGuardError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kExitResourceGuard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

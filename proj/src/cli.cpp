#include "distclust/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "distclust/clustering.hpp"
#include "distclust/datagen.hpp"
#include "distclust/io.hpp"
#include "distclust/metrics.hpp"
#include "distclust/tuning.hpp"

namespace distclust::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kMethods = {"kmeans", "dc", "dc-asymp", "dc-finite", "subsample"};

struct Options {
    // data source
    std::string input;
    std::vector<std::string> columns;
    bool standardize = false;
    // solver
    std::int64_t n = 0;
    std::string method = "dc";
    double k = 2.0;
    SolverConfig cfg;
    std::string out_dir = ".";
    // gen
    std::string family = "normal";
    std::size_t rows = 0;
    std::size_t dims = 0;
    double shape = 1.0;
    double rate = 1.0;
    std::string output;
    // metrics
    std::string centers_path;
    // compare
    std::vector<std::string> methods = {"kmeans", "dc", "subsample"};
    std::vector<std::uint64_t> seeds = {0};
};

struct MethodRun {
    CenterSet centers;
    Assignment assignment;
    RunReport report;
    std::optional<TuneTrace> trace;
};

MethodRun run_method(const std::string& method, const DataMatrix& x, std::int64_t n, double k,
                     const SolverConfig& cfg) {
    MethodRun out;
    if (method == "dc") {
        DcResult r = dc(x, n, cfg.tuning_step, cfg);
        out.assignment = assign_all(x, r.centers);
        out.centers = std::move(r.centers);
        out.report = std::move(r.report);
        out.trace = std::move(r.trace);
        return out;
    }
    ClusterResult r;
    if (method == "kmeans") {
        r = kmeans(x, n, cfg);
    } else if (method == "dc-asymp") {
        r = dc_asymp(x, n, cfg);
    } else if (method == "dc-finite") {
        r = dc_finite(x, n, k, cfg);
    } else if (method == "subsample") {
        const auto start = std::chrono::steady_clock::now();
        r.centers = random_subsample(x, n, cfg.seed);
        r.assignment = assign_all(x, r.centers);
        r.report.converged = true;
        r.report.elapsed = std::chrono::steady_clock::now() - start;
    } else {
        throw InvalidArgument("unknown method '" + method + "'");
    }
    out.centers = std::move(r.centers);
    out.assignment = std::move(r.assignment);
    out.report = std::move(r.report);
    out.report.energy = energy_distance(x, out.centers);
    out.report.cramer = cramer_statistic(x, out.centers);
    return out;
}

LoadedData load_input(const Options& o) {
    if (o.input.empty()) throw InvalidArgument("--input is required");
    IngestSpec spec;
    spec.path = o.input;
    spec.columns = o.columns;
    spec.standardize = o.standardize;
    return load_csv(spec);
}

json config_echo(const std::string& command, const Options& o) {
    json c;
    c["command"] = command;
    c["input"] = o.input;
    c["columns"] = o.columns;
    c["standardize"] = o.standardize;
    c["n"] = o.n;
    c["method"] = o.method;
    c["k"] = o.k;
    c["delta_step"] = o.cfg.tuning_step;
    c["r"] = o.cfg.screen_fraction;
    c["seed"] = o.cfg.seed;
    c["nugget"] = o.cfg.nugget;
    c["max_iters"] = o.cfg.max_iters;
    c["rel_tol"] = o.cfg.rel_tol;
    c["optimizer_tol"] = o.cfg.optimizer_tol;
    c["max_power"] = o.cfg.max_power;
    return c;
}

json data_echo(const LoadedData& d) {
    return {{"rows", d.data.rows()},
            {"cols", d.data.cols()},
            {"columns", d.columns},
            {"total_rows", d.total_rows},
            {"dropped_rows", d.dropped_rows}};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw InvalidArgument("failed writing '" + path.string() + "'");
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw InvalidArgument("cannot create output directory '" + dir + "': " + ec.message());
    return p;
}

std::string trace_csv(const MethodRun& run) {
    std::string s;
    if (run.trace) {
        s = "k,energy\n";
        for (const auto& step : run.trace->steps) {
            s += format_real(step.power) + "," + format_real(step.energy) + "\n";
        }
    } else {
        s = "iter,objective\n";
        const auto& tr = run.report.objective_trace;
        for (std::size_t i = 0; i < tr.size(); ++i) {
            s += std::to_string(i + 1) + "," + format_real(tr[i]) + "\n";
        }
    }
    return s;
}

int cmd_cluster(const std::string& command, const Options& o, std::ostream& out) {
    const LoadedData data = load_input(o);
    check_cluster_count(o.n, data.data.rows());
    const MethodRun run = run_method(o.method, data.data, o.n, o.k, o.cfg);
    const fs::path dir = prepare_out_dir(o.out_dir);

    write_matrix_csv(dir / "centers.csv", data.columns, run.centers.points);
    std::string labels = "row,label\n";
    for (std::size_t j = 0; j < run.assignment.labels.size(); ++j) {
        labels += std::to_string(j) + "," + std::to_string(run.assignment.labels[j]) + "\n";
    }
    write_text(dir / "labels.csv", labels);
    write_text(dir / "trace.csv", trace_csv(run));

    json report;
    report["config"] = config_echo(command, o);
    report["data"] = data_echo(data);
    report["method"] = std::string(method_name(run.centers.method));
    report["power"] = run.centers.power;
    report["objective_trace"] = run.report.objective_trace;
    report["iters"] = run.report.iters;
    report["converged"] = run.report.converged;
    report["energy"] = run.report.energy;
    report["cramer"] = run.report.cramer;
    report["k_star"] = run.report.k_star ? json(*run.report.k_star) : json(nullptr);
    report["cluster_sizes"] = run.assignment.counts;
    report["elapsed_seconds"] = run.report.elapsed.count();
    if (run.trace) {
        json steps = json::array();
        for (const auto& s : run.trace->steps) {
            steps.push_back({{"k", s.power},
                             {"energy", s.energy},
                             {"iters", s.report.iters},
                             {"converged", s.report.converged}});
        }
        report["tune_trace"] = steps;
    }
    write_text(dir / "report.json", report.dump(2) + "\n");

    out << "wrote " << (dir / "centers.csv").string() << " (" << run.centers.size()
        << " centers from " << data.data.rows() << " rows, " << data.dropped_rows
        << " dropped)\n";
    return 0;
}

int cmd_gen(const Options& o, std::ostream& out) {
    const auto family = parse_family(o.family);
    if (!family) throw InvalidArgument("unknown family '" + o.family + "'");
    if (o.output.empty()) throw InvalidArgument("--output is required");
    GenSpec spec;
    spec.family = *family;
    spec.shape = o.shape;
    spec.rate = o.rate;
    spec.rows = o.rows;
    spec.cols = o.dims;
    spec.seed = o.cfg.seed;
    const DataMatrix m = generate(spec);
    const fs::path path(o.output);
    if (path.has_parent_path()) prepare_out_dir(path.parent_path().string());
    write_matrix_csv(path, default_column_names(m.cols()), m);
    out << "wrote " << path.string() << " (" << m.rows() << "x" << m.cols() << ")\n";
    return 0;
}

int cmd_metrics(const Options& o, std::ostream& out) {
    const LoadedData data = load_input(o);
    if (o.centers_path.empty()) throw InvalidArgument("--centers is required");
    IngestSpec cspec;
    cspec.path = o.centers_path;
    cspec.columns = o.columns;
    const LoadedData centers = load_csv(cspec);
    json j;
    j["energy"] = energy_distance(data.data, centers.data);
    j["cramer"] = cramer_statistic(data.data, centers.data);
    j["data_rows"] = data.data.rows();
    j["center_rows"] = centers.data.rows();
    out << j.dump() << "\n";
    return 0;
}

int cmd_compare(const Options& o, std::ostream& out) {
    const LoadedData data = load_input(o);
    check_cluster_count(o.n, data.data.rows());
    for (const auto& m : o.methods) {
        if (std::find(kMethods.begin(), kMethods.end(), m) == kMethods.end()) {
            throw InvalidArgument("unknown method '" + m + "'");
        }
    }
    std::vector<std::string> methods = o.methods;
    std::sort(methods.begin(), methods.end());
    methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
    std::vector<std::uint64_t> seeds = o.seeds;
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    std::string table = "method,seed,energy,cramer,k_star\n";
    std::string timing = "method,seed,elapsed_seconds\n";
    json rows = json::array();
    for (const auto& m : methods) {
        for (std::uint64_t seed : seeds) {
            SolverConfig cfg = o.cfg;
            cfg.seed = seed;
            const MethodRun run = run_method(m, data.data, o.n, o.k, cfg);
            const std::string k_star =
                run.report.k_star ? format_real(*run.report.k_star) : std::string("NA");
            table += m + "," + std::to_string(seed) + "," + format_real(run.report.energy) + "," +
                     format_real(run.report.cramer) + "," + k_star + "\n";
            timing += m + "," + std::to_string(seed) + "," +
                      format_real(run.report.elapsed.count()) + "\n";
            rows.push_back({{"method", m},
                            {"seed", seed},
                            {"energy", run.report.energy},
                            {"cramer", run.report.cramer},
                            {"k_star", run.report.k_star ? json(*run.report.k_star) : json(nullptr)},
                            {"iters", run.report.iters},
                            {"converged", run.report.converged}});
        }
    }
    const fs::path dir = prepare_out_dir(o.out_dir);
    write_text(dir / "compare.csv", table);
    write_text(dir / "timing.csv", timing);
    json report;
    report["config"] = config_echo("compare", o);
    report["config"]["methods"] = methods;
    report["config"]["seeds"] = seeds;
    report["data"] = data_echo(data);
    report["runs"] = rows;
    write_text(dir / "report.json", report.dump(2) + "\n");
    out << "wrote " << (dir / "compare.csv").string() << " (" << rows.size() << " runs)\n";
    return 0;
}

void add_source(CLI::App* app, Options& o) {
    app->add_option("--input", o.input, "CSV file with a header row")->required();
    app->add_option("--columns", o.columns, "Numeric columns to use (default: all)")
        ->delimiter(',');
    app->add_flag("--standardize", o.standardize, "Z-score each selected column");
}

void add_solver(CLI::App* app, Options& o, bool with_method) {
    app->add_option("--n", o.n, "Number of centers")->required();
    if (with_method) {
        app->add_option("--method", o.method, "Reduction method")
            ->check(CLI::IsMember(kMethods));
    }
    app->add_option("--k", o.k, "Power for dc-finite");
    app->add_option("--delta-step", o.cfg.tuning_step, "Power increment for dc tuning");
    app->add_option("--r", o.cfg.screen_fraction, "Screening fraction for the log update");
    app->add_option("--seed", o.cfg.seed, "RNG seed");
    app->add_option("--nugget", o.cfg.nugget, "Nugget for log-potential diagnostics");
    app->add_option("--max-iters", o.cfg.max_iters, "Lloyd iteration cap");
    app->add_option("--rel-tol", o.cfg.rel_tol, "Relative objective change for convergence");
    app->add_option("--optimizer-tol", o.cfg.optimizer_tol, "Center update tolerance");
    app->add_option("--max-power", o.cfg.max_power, "Largest power tried by dc tuning");
    app->add_option("--out-dir", o.out_dir, "Output directory");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Distribution-preserving cluster prototypes", "distclust"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
    gen->add_option("--family", o.family, "normal | exponential | gamma")
        ->check(CLI::IsMember({"normal", "exponential", "gamma"}));
    gen->add_option("--N", o.rows, "Number of points")->required();
    gen->add_option("--p", o.dims, "Dimension")->required();
    gen->add_option("--shape", o.shape, "Gamma shape");
    gen->add_option("--rate", o.rate, "Exponential/gamma rate");
    gen->add_option("--seed", o.cfg.seed, "RNG seed");
    gen->add_option("--output", o.output, "Output CSV path")->required();

    auto* cluster = app.add_subcommand("cluster", "Run one reduction method");
    add_source(cluster, o);
    add_solver(cluster, o, true);

    auto* tune = app.add_subcommand("tune", "Distributional clustering with power tuning");
    add_source(tune, o);
    add_solver(tune, o, false);

    auto* metrics = app.add_subcommand("metrics", "Energy distance and Cramer statistic");
    add_source(metrics, o);
    metrics->add_option("--centers", o.centers_path, "CSV of reduced points")->required();

    auto* compare = app.add_subcommand("compare", "Compare methods over seeds");
    add_source(compare, o);
    add_solver(compare, o, false);
    compare->add_option("--methods", o.methods, "Methods to compare")->delimiter(',');
    compare->add_option("--seeds", o.seeds, "Seeds")->delimiter(',');

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(o, out);
        if (cluster->parsed()) return cmd_cluster("cluster", o, out);
        if (tune->parsed()) {
            o.method = "dc";
            return cmd_cluster("tune", o, out);
        }
        if (metrics->parsed()) return cmd_metrics(o, out);
        if (compare->parsed()) return cmd_compare(o, out);
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "error: " << msg << "\n";
        return 1;
    }
    return 1;
}

}  // namespace distclust::cli

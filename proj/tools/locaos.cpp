// locaos: instance generation, LOC sampling and comparison, single runs and
// policy comparisons from the command line.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "locaos/config.hpp"
#include "locaos/experiment.hpp"
#include "locaos/instance_io.hpp"
#include "locaos/loc.hpp"
#include "locaos/report.hpp"
#include "locaos/search.hpp"
#include "locaos/text.hpp"

namespace fs = std::filesystem;
using namespace locaos;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

DistanceMode parse_distance(const std::string& s) {
    if (s == "exact") return DistanceMode::exact;
    if (s == "rounded") return DistanceMode::rounded;
    throw UsageError("--distance must be exact or rounded");
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

template <typename Fn>
std::string render(Fn fn) {
    std::ostringstream out;
    fn(out);
    return out.str();
}

std::string file_checksum(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return hex64(fnv1a64(buf.str()));
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
    int count = 1;
    GeneratorSpec spec;
    std::uint64_t seed = 0;
    std::string out = "instances";
    std::string format = "vrp";
    bool force = false;
};

void cmd_gen(const GenArgs& a) {
    if (a.spec.demand_hi < a.spec.demand_lo || a.spec.demand_hi > a.spec.capacity) {
        throw UsageError("demand range must satisfy demand-lo <= demand-hi <= capacity");
    }
    std::vector<std::pair<fs::path, std::string>> files;
    for (int i = 0; i < a.count; ++i) {
        const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(i);
        const Instance inst = generate_uniform_instance(a.spec, seed);
        const std::vector<std::string> comments{
            "generator=uniform customers=" + std::to_string(a.spec.customers) +
            " capacity=" + std::to_string(a.spec.capacity) + " demand_lo=" + std::to_string(a.spec.demand_lo) +
            " demand_hi=" + std::to_string(a.spec.demand_hi) + " seed=" + std::to_string(seed)};
        const fs::path path = fs::path(a.out) / (inst.name() + "." + a.format);
        files.emplace_back(path, a.format == "json" ? instance_to_json(inst)
                                                    : render([&](std::ostream& o) { write_cvrplib(o, inst, comments); }));
    }
    if (!a.force) {
        for (const auto& [path, _] : files) {
            if (fs::exists(path)) throw UsageError(path.string() + " exists; pass --force to overwrite");
        }
    }
    for (const auto& [path, content] : files) write_file(path, content);
    std::cout << "wrote " << files.size() << " instance(s) to " << a.out << "\n";
}

// --- sample-loc --------------------------------------------------------------

struct SampleArgs {
    std::string instance;
    GeneratorSpec spec{50, 50, 1, 9};
    std::uint64_t instance_seed = 0;
    int trials = 10;
    std::uint64_t seed = 1;
    int max_ite = 40000;
    int max_rows = 0;
    int perturbation_strength = 5;
    std::string operators = "all";
    std::string distance = "exact";
    std::string out = "loc";
    int threads = 0;
};

void cmd_sample_loc(const SampleArgs& a) {
    const DistanceMode mode = parse_distance(a.distance);
    const Instance inst = a.instance.empty() ? generate_uniform_instance(a.spec, a.instance_seed).with_distance_mode(mode)
                                             : load_instance(a.instance, mode);
    const auto ops = parse_operator_list(a.operators);
    SamplingOptions options;
    options.max_ite = a.max_ite;
    options.max_rows = a.max_rows;
    options.perturbation_strength = a.perturbation_strength;
    std::vector<std::uint64_t> seeds;
    for (int t = 0; t < a.trials; ++t) seeds.push_back(a.seed + static_cast<std::uint64_t>(t));

    const std::vector<SamplingResult> results = run_sampling_trials(inst, ops, options, seeds, a.threads);

    const std::vector<std::string> base{
        "instance=" + (a.instance.empty() ? inst.name() : a.instance),
        "instance_checksum=" + (a.instance.empty() ? std::string("generated") : file_checksum(a.instance)),
        "operators=" + format_operator_list(ops),
        "trials=" + std::to_string(a.trials),
        "max_ite=" + std::to_string(a.max_ite),
        "max_rows=" + std::to_string(a.max_rows),
        "perturbation_strength=" + std::to_string(a.perturbation_strength),
        "distance=" + a.distance};
    const fs::path dir(a.out);
    std::vector<LocMatrix> mats;
    auto summary = nlohmann::ordered_json::object();
    summary["config"] = base;
    auto trials = nlohmann::ordered_json::array();
    for (std::size_t t = 0; t < results.size(); ++t) {
        const SamplingResult& r = results[t];
        auto comments = base;
        comments.push_back("seed=" + std::to_string(seeds[t]));
        comments.push_back("rows=" + std::to_string(r.traps.num_rows()));
        if (r.traps.rows.empty()) throw std::runtime_error("trial " + std::to_string(t) + " recorded no solutions");
        mats.push_back(loc_matrix(r.traps));
        write_file(dir / ("loc_trial_" + std::to_string(t) + ".csv"),
                   render([&](std::ostream& o) { write_loc_csv(o, mats.back(), ops, comments); }));
        write_file(dir / ("traps_trial_" + std::to_string(t) + ".csv"),
                   render([&](std::ostream& o) { write_trap_csv(o, r.traps, ops, comments); }));
        trials.push_back({{"seed", seeds[t]}, {"rows", r.traps.num_rows()}, {"steps", r.steps},
                          {"perturbations", r.perturbations}});
    }
    summary["trials"] = std::move(trials);
    auto mean_comments = base;
    mean_comments.push_back("mean_of=" + std::to_string(mats.size()) + " trials");
    write_file(dir / "loc_mean.csv",
               render([&](std::ostream& o) { write_loc_csv(o, mean_loc_matrix(mats), ops, mean_comments); }));

    std::vector<double> pairwise;
    std::ostringstream sim;
    for (const auto& c : base) sim << "# " << c << "\n";
    sim << "trial";
    for (std::size_t j = 0; j < mats.size(); ++j) sim << "," << j;
    sim << "\n";
    for (std::size_t i = 0; i < mats.size(); ++i) {
        sim << i;
        for (std::size_t j = 0; j < mats.size(); ++j) {
            const double s = kendall_similarity(mats[i], mats[j]);
            if (j > i) pairwise.push_back(s);
            sim << "," << format_double(s);
        }
        sim << "\n";
    }
    write_file(dir / "similarity.csv", sim.str());
    const Moments m = moments(pairwise);
    summary["pairwise_similarity_mean"] = m.mean;
    summary["pairwise_similarity_variance"] = m.variance;
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    std::cout << "pairwise similarity over " << pairwise.size() << " pairs: mean " << format_double(m.mean)
              << " variance " << format_double(m.variance) << "\n";
}

// --- loc-sim -----------------------------------------------------------------

void cmd_loc_sim(const std::vector<std::string>& files, const std::string& out_path) {
    if (files.size() < 2) throw UsageError("loc-sim needs at least two LOC files");
    std::vector<LocFile> locs;
    for (const auto& f : files) {
        std::ifstream in(f);
        if (!in) throw std::runtime_error("cannot open " + f);
        try {
            locs.push_back(read_loc_csv(in));
        } catch (const ParseError& e) {
            throw ParseError(f + ": " + e.what());
        }
        if (locs.back().ops != locs.front().ops) {
            throw std::runtime_error(f + ": operator list " + format_operator_list(locs.back().ops) +
                                     " differs from " + format_operator_list(locs.front().ops));
        }
    }
    std::ostringstream out;
    for (const auto& f : files) out << "# " << f << " checksum=" << file_checksum(f) << "\n";
    out << "file";
    for (const auto& f : files) out << "," << fs::path(f).filename().string();
    out << "\n";
    for (std::size_t i = 0; i < locs.size(); ++i) {
        out << fs::path(files[i]).filename().string();
        for (std::size_t j = 0; j < locs.size(); ++j) {
            out << "," << format_double(kendall_similarity(locs[i].matrix, locs[j].matrix));
        }
        out << "\n";
    }
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        write_file(out_path, out.str());
    }
}

// --- optimize ----------------------------------------------------------------

struct OptimizeArgs {
    std::string instance;
    std::string policy = "ap";
    std::string loc;
    std::uint64_t seed = 1;
    int max_ite = 0;
    int perturbation_strength = 5;
    std::string operators = "all";
    std::string distance = "exact";
    std::string out = "run";
};

void cmd_optimize(const OptimizeArgs& a) {
    const DistanceMode mode = parse_distance(a.distance);
    const Instance inst = load_instance(a.instance, mode);
    const auto ops = parse_operator_list(a.operators);
    const PolicySpec policy = parse_policy_spec(a.policy);
    if (policy.loc_assisted && a.loc.empty()) throw UsageError("policy " + policy.name() + " needs --loc");
    SearchConfig sc;
    sc.max_ite = a.max_ite > 0 ? a.max_ite : kBenchmarkBudget;
    sc.policy = policy.kind;
    sc.params.p_min = default_p_min(static_cast<int>(ops.size()));
    sc.perturbation_strength = a.perturbation_strength;
    sc.seed = a.seed;
    std::vector<std::string> comments{"instance=" + a.instance, "instance_checksum=" + file_checksum(a.instance),
                                      "policy=" + policy.name(), "operators=" + format_operator_list(ops),
                                      "seed=" + std::to_string(a.seed), "max_ite=" + std::to_string(sc.max_ite),
                                      "perturbation_strength=" + std::to_string(sc.perturbation_strength),
                                      "alpha=" + format_double(sc.params.alpha),
                                      "beta=" + format_double(sc.params.beta),
                                      "p_min=" + format_double(sc.params.p_min), "distance=" + a.distance};
    const auto start = std::chrono::steady_clock::now();
    SearchTrace trace;
    if (policy.loc_assisted) {
        std::ifstream in(a.loc);
        if (!in) throw std::runtime_error("cannot open " + a.loc);
        const LocFile loc = read_loc_csv(in);
        if (loc.ops != ops) {
            throw std::runtime_error(a.loc + " covers operators " + format_operator_list(loc.ops) + " but the run uses " +
                                     format_operator_list(ops));
        }
        comments.push_back("loc_file=" + a.loc);
        comments.push_back("loc_checksum=" + file_checksum(a.loc));
        trace = run_loc_assisted(inst, ops, sc, loc.matrix);
    } else {
        trace = run_base(inst, ops, sc);
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const fs::path dir(a.out);
    write_file(dir / "trace.csv", render([&](std::ostream& o) { write_trace_csv(o, trace, comments); }));
    nlohmann::ordered_json j;
    j["config"] = comments;
    j["initial_distance"] = trace.initial_distance;
    j["best_distance"] = trace.best_distance;
    j["final_distance"] = trace.final_distance;
    j["trapped_after_trapped_count"] = trace.trapped_after_trapped_count;
    j["perturbation_count"] = trace.perturbation_count;
    j["best_plan"] = trace.best_plan.routes;
    j["wall_seconds"] = wall;
    write_file(dir / "summary.json", j.dump(2) + "\n");
    std::cout << "best distance " << format_double(trace.best_distance) << ", trapped-after-trapped "
              << trace.trapped_after_trapped_count << ", perturbations " << trace.perturbation_count << "\n";
}

// --- compare -----------------------------------------------------------------

void cmd_compare(const std::string& config_path, const std::vector<std::string>& overrides, const std::string& out) {
    KeyValueConfig kv = config_path.empty() ? KeyValueConfig{} : KeyValueConfig::load(config_path);
    for (const auto& o : overrides) kv.apply_override(o);
    if (!out.empty()) kv.set("out", out);
    const ExperimentConfig cfg = resolve_experiment(kv);
    if (cfg.policies.size() < 2) throw UsageError("compare needs at least two policies");

    const auto start = std::chrono::steady_clock::now();
    const std::vector<Instance> instances = materialize_instances(cfg);
    std::vector<std::string> lines = describe(cfg);
    std::optional<LocSource> loc;
    if (cfg.needs_loc()) {
        loc = obtain_loc(cfg);
        lines.push_back("loc_checksum=" + loc->checksum);
        lines.push_back("loc_origin=" + loc->origin);
    }
    const auto cells = run_cells(cfg, instances, loc ? &loc->matrix : nullptr);
    const ComparisonReport report = build_report(cfg, instances, cells);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const fs::path dir(cfg.out_dir);
    write_file(dir / "cells.csv", render([&](std::ostream& o) { write_cells_csv(o, report, lines); }));
    write_file(dir / "summary.csv", render([&](std::ostream& o) { write_summary_csv(o, report, lines); }));
    write_file(dir / "tests.csv", render([&](std::ostream& o) { write_tests_csv(o, report, lines); }));
    if (loc) write_file(dir / "loc.csv", render([&](std::ostream& o) { write_loc_csv(o, loc->matrix, cfg.ops, lines); }));
    write_file(dir / "report.json", report_json(report, lines, wall));

    for (const PairTest& t : report.tests) {
        if (t.instance >= 0) continue;
        std::cout << report.policy_names[t.policy_a] << " vs " << report.policy_names[t.policy_b] << ": distance "
                  << format_double(t.mean_a) << " / " << format_double(t.mean_b) << " (p="
                  << format_double(t.distance.p_value) << "), trapped-after-trapped " << format_double(t.tat_mean_a)
                  << " / " << format_double(t.tat_mean_b) << " (p=" << format_double(t.trapped_after_trapped.p_value)
                  << ")\n";
    }
    std::cout << "results in " << dir.string() << "\n";
}

// --- operators ---------------------------------------------------------------

void cmd_operators() {
    std::cout << "id,name,arity,length_a,length_b\n";
    for (const auto& s : operator_catalog()) {
        std::cout << s.id << "," << s.name << "," << s.arity << "," << s.length_a << "," << s.length_b << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LOC analysis and LOC-assisted operator selection for CVRP local search"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate uniform random instances");
    g->add_option("--n,--count", gen.count, "Number of instances")->check(CLI::PositiveNumber);
    g->add_option("--customers", gen.spec.customers, "Customers per instance")->check(CLI::PositiveNumber);
    g->add_option("--capacity", gen.spec.capacity, "Vehicle capacity")->check(CLI::PositiveNumber);
    g->add_option("--demand-lo", gen.spec.demand_lo, "Smallest demand")->check(CLI::PositiveNumber);
    g->add_option("--demand-hi", gen.spec.demand_hi, "Largest demand")->check(CLI::PositiveNumber);
    g->add_option("--seed", gen.seed, "Seed of the first instance; instance i uses seed + i");
    g->add_option("--out", gen.out, "Output directory");
    g->add_option("--format", gen.format, "vrp or json")->check(CLI::IsMember({"vrp", "json"}));
    g->add_flag("--force", gen.force, "Overwrite existing files");

    SampleArgs sample;
    auto* s = app.add_subcommand("sample-loc", "Sample trap matrices and LOC matrices of one instance");
    s->add_option("--instance", sample.instance, "Instance file (default: a generated instance)");
    s->add_option("--customers", sample.spec.customers, "Customers of the generated instance")->check(CLI::PositiveNumber);
    s->add_option("--capacity", sample.spec.capacity, "Capacity of the generated instance")->check(CLI::PositiveNumber);
    s->add_option("--instance-seed", sample.instance_seed, "Seed of the generated instance");
    s->add_option("--trials", sample.trials, "Independent sampling trials")->check(CLI::PositiveNumber);
    s->add_option("--seed", sample.seed, "Seed of the first trial; trial t uses seed + t");
    s->add_option("--max-ite", sample.max_ite, "Steps per trial")->check(CLI::PositiveNumber);
    s->add_option("--max-rows", sample.max_rows, "Stop a trial after this many recorded solutions (0: no limit)")
        ->check(CLI::NonNegativeNumber);
    s->add_option("--perturbation-strength", sample.perturbation_strength, "Relocations per perturbation")
        ->check(CLI::PositiveNumber);
    s->add_option("--operators", sample.operators, "Operator list, e.g. all or 1-4,8");
    s->add_option("--distance", sample.distance, "exact or rounded");
    s->add_option("--out", sample.out, "Output directory");
    s->add_option("--threads", sample.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

    std::vector<std::string> sim_files;
    std::string sim_out;
    auto* ls = app.add_subcommand("loc-sim", "Pairwise Kendall similarity of LOC matrix files");
    ls->add_option("files", sim_files, "LOC matrix CSV files")->required()->check(CLI::ExistingFile);
    ls->add_option("--out", sim_out, "Output CSV (default: stdout)");

    OptimizeArgs opt;
    auto* o = app.add_subcommand("optimize", "Single search run with a trace");
    o->add_option("--instance", opt.instance, "Instance file")->required()->check(CLI::ExistingFile);
    o->add_option("--policy", opt.policy, "uniform, pm, ap, or the same with -loc");
    o->add_option("--loc", opt.loc, "LOC matrix CSV for -loc policies")->check(CLI::ExistingFile);
    o->add_option("--seed", opt.seed, "Run seed");
    o->add_option("--max-ite", opt.max_ite, "Iteration budget (default 2000)")->check(CLI::PositiveNumber);
    o->add_option("--perturbation-strength", opt.perturbation_strength, "Relocations per perturbation")
        ->check(CLI::PositiveNumber);
    o->add_option("--operators", opt.operators, "Operator list");
    o->add_option("--distance", opt.distance, "exact or rounded");
    o->add_option("--out", opt.out, "Output directory");

    std::string cmp_config;
    std::vector<std::string> cmp_set;
    std::string cmp_out;
    auto* c = app.add_subcommand("compare", "Paired comparison of selection policies");
    c->add_option("--config", cmp_config, "key = value experiment file")->check(CLI::ExistingFile);
    c->add_option("--set", cmp_set, "Override a key, e.g. --set repeats=5")->allow_extra_args(false);
    c->add_option("--out", cmp_out, "Output directory (overrides the out key)");

    app.add_subcommand("operators", "List the operator catalog as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*g) cmd_gen(gen);
        if (*s) cmd_sample_loc(sample);
        if (*ls) cmd_loc_sim(sim_files, sim_out);
        if (*o) cmd_optimize(opt);
        if (*c) cmd_compare(cmp_config, cmp_set, cmp_out);
        if (app.got_subcommand("operators")) cmd_operators();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include "locaos/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "locaos/instance_io.hpp"
#include "locaos/text.hpp"

namespace locaos {

std::string PolicySpec::name() const {
    return std::string(policy_kind_name(kind)) + (loc_assisted ? "-loc" : "");
}

PolicySpec parse_policy_spec(std::string_view name) {
    PolicySpec p;
    constexpr std::string_view suffix = "-loc";
    if (name.size() > suffix.size() && name.substr(name.size() - suffix.size()) == suffix) {
        p.loc_assisted = true;
        name.remove_suffix(suffix.size());
    }
    p.kind = parse_policy_kind(name);
    return p;
}

bool ExperimentConfig::needs_loc() const {
    return std::any_of(policies.begin(), policies.end(), [](const PolicySpec& p) { return p.loc_assisted; });
}

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "instances",    "gen.count",       "gen.customers",   "gen.capacity",  "gen.demand_lo",
        "gen.demand_hi", "gen.seed",       "operators",       "policies",      "repeats",
        "seed",         "seeds",           "max_ite",         "perturbation_strength",
        "alpha",        "beta",            "p_min",           "distance",      "loc_file",
        "loc.customers", "loc.capacity",   "loc.demand_lo",   "loc.demand_hi", "loc.instance_seed",
        "loc.seed",     "loc.max_ite",     "loc.max_rows",    "out",           "threads"};
    return keys;
}

std::vector<std::string> list(const std::string& text) {
    std::vector<std::string> out;
    for (const auto& item : split(text, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
    return out;
}

GeneratorSpec read_generator(const KeyValueConfig& cfg, const std::string& prefix) {
    GeneratorSpec g;
    g.customers = cfg.get_int(prefix + "customers", g.customers);
    g.capacity = cfg.get_int(prefix + "capacity", g.capacity);
    g.demand_lo = cfg.get_int(prefix + "demand_lo", g.demand_lo);
    g.demand_hi = cfg.get_int(prefix + "demand_hi", g.demand_hi);
    if (g.customers < 1) throw std::invalid_argument(prefix + "customers must be at least 1");
    if (g.capacity < 1) throw std::invalid_argument(prefix + "capacity must be positive");
    if (g.demand_lo < 1 || g.demand_hi < g.demand_lo || g.demand_hi > g.capacity) {
        throw std::invalid_argument(prefix + "demand range must satisfy 1 <= lo <= hi <= capacity");
    }
    return g;
}

}  // namespace

ExperimentConfig resolve_experiment(const KeyValueConfig& cfg) {
    cfg.require_known(known_keys());
    ExperimentConfig e;
    e.instance_files = list(cfg.get_or("instances", ""));
    e.generator.count = cfg.get_int("gen.count", e.generator.count);
    if (e.generator.count < 1) throw std::invalid_argument("gen.count must be at least 1");
    e.generator.spec = read_generator(cfg, "gen.");
    e.generator.seed = cfg.get_u64("gen.seed", e.generator.seed);

    e.ops = parse_operator_list(cfg.get_or("operators", "all"));
    for (const auto& name : list(cfg.get_or("policies", "ap,ap-loc,pm,pm-loc"))) {
        const PolicySpec p = parse_policy_spec(name);
        if (std::find(e.policies.begin(), e.policies.end(), p) != e.policies.end()) {
            throw std::invalid_argument("policy '" + name + "' listed twice");
        }
        e.policies.push_back(p);
    }
    if (e.policies.empty()) throw std::invalid_argument("no policies configured");

    e.repeats = cfg.get_int("repeats", e.repeats);
    if (e.repeats < 1) throw std::invalid_argument("repeats must be at least 1");
    if (cfg.has("seeds")) {
        for (const auto& s : list(*cfg.get("seeds"))) {
            std::size_t used = 0;
            if (s[0] == '-') throw std::invalid_argument("seeds must be nonnegative");
            e.seeds.push_back(std::stoull(s, &used));
            if (used != s.size()) throw std::invalid_argument("bad seed '" + s + "'");
        }
        if (static_cast<int>(e.seeds.size()) != e.repeats) {
            throw std::invalid_argument("seeds lists " + std::to_string(e.seeds.size()) + " values but repeats is " +
                                        std::to_string(e.repeats));
        }
    } else {
        const std::uint64_t base = cfg.get_u64("seed", 1);
        for (int r = 0; r < e.repeats; ++r) e.seeds.push_back(base + static_cast<std::uint64_t>(r));
    }

    e.max_ite = cfg.get_int("max_ite", e.instance_files.empty() ? kGeneratedBudget : kBenchmarkBudget);
    if (e.max_ite < 1) throw std::invalid_argument("max_ite must be at least 1");
    e.perturbation_strength = cfg.get_int("perturbation_strength", e.perturbation_strength);
    if (e.perturbation_strength < 1) throw std::invalid_argument("perturbation_strength must be at least 1");
    e.params.alpha = cfg.get_double("alpha", e.params.alpha);
    e.params.beta = cfg.get_double("beta", e.params.beta);
    e.params.p_min = cfg.get_double("p_min", default_p_min(static_cast<int>(e.ops.size())));
    make_policy(PolicyKind::probability_matching, static_cast<int>(e.ops.size()), e.params);  // validates

    const std::string distance = cfg.get_or("distance", "exact");
    if (distance == "exact") {
        e.distance_mode = DistanceMode::exact;
    } else if (distance == "rounded") {
        e.distance_mode = DistanceMode::rounded;
    } else {
        throw std::invalid_argument("distance must be exact or rounded, got '" + distance + "'");
    }

    e.loc_file = cfg.get_or("loc_file", "");
    e.loc_sampling.instance = read_generator(cfg, "loc.");
    e.loc_sampling.instance_seed = cfg.get_u64("loc.instance_seed", e.loc_sampling.instance_seed);
    e.loc_sampling.seed = cfg.get_u64("loc.seed", e.loc_sampling.seed);
    e.loc_sampling.max_ite = cfg.get_int("loc.max_ite", e.loc_sampling.max_ite);
    e.loc_sampling.max_rows = cfg.get_int("loc.max_rows", e.loc_sampling.max_rows);
    if (e.loc_sampling.max_ite < 1) throw std::invalid_argument("loc.max_ite must be at least 1");
    if (e.loc_sampling.max_rows < 0) throw std::invalid_argument("loc.max_rows must be nonnegative");
    const bool sampling_requested = std::any_of(cfg.values().begin(), cfg.values().end(),
                                                [](const auto& kv) { return kv.first.rfind("loc.", 0) == 0; });
    if (e.needs_loc() && e.loc_file.empty() && !sampling_requested) {
        throw std::invalid_argument("LOC-assisted policies need loc_file or loc.* sampling settings");
    }

    e.out_dir = cfg.get_or("out", e.out_dir);
    e.threads = cfg.get_int("threads", e.threads);
    if (e.threads < 0) throw std::invalid_argument("threads must be nonnegative");
    return e;
}

std::vector<std::string> describe(const ExperimentConfig& e) {
    std::vector<std::string> policy_names;
    for (const auto& p : e.policies) policy_names.push_back(p.name());
    std::vector<std::string> seeds;
    for (auto s : e.seeds) seeds.push_back(std::to_string(s));
    std::vector<std::string> lines;
    auto add = [&](const std::string& k, const std::string& v) { lines.push_back(k + "=" + v); };
    auto add_gen = [&](const std::string& prefix, const GeneratorSpec& g) {
        add(prefix + "customers", std::to_string(g.customers));
        add(prefix + "capacity", std::to_string(g.capacity));
        add(prefix + "demand_lo", std::to_string(g.demand_lo));
        add(prefix + "demand_hi", std::to_string(g.demand_hi));
    };
    if (e.instance_files.empty()) {
        add("gen.count", std::to_string(e.generator.count));
        add_gen("gen.", e.generator.spec);
        add("gen.seed", std::to_string(e.generator.seed));
    } else {
        add("instances", join(e.instance_files));
    }
    add("operators", format_operator_list(e.ops));
    add("policies", join(policy_names));
    add("repeats", std::to_string(e.repeats));
    add("seeds", join(seeds));
    add("max_ite", std::to_string(e.max_ite));
    add("perturbation_strength", std::to_string(e.perturbation_strength));
    add("alpha", format_double(e.params.alpha));
    add("beta", format_double(e.params.beta));
    add("p_min", format_double(e.params.p_min));
    add("distance", e.distance_mode == DistanceMode::exact ? "exact" : "rounded");
    if (e.needs_loc()) {
        if (!e.loc_file.empty()) {
            add("loc_file", e.loc_file);
        } else {
            add_gen("loc.", e.loc_sampling.instance);
            add("loc.instance_seed", std::to_string(e.loc_sampling.instance_seed));
            add("loc.seed", std::to_string(e.loc_sampling.seed));
            add("loc.max_ite", std::to_string(e.loc_sampling.max_ite));
            add("loc.max_rows", std::to_string(e.loc_sampling.max_rows));
        }
    }
    return lines;
}

std::vector<Instance> materialize_instances(const ExperimentConfig& e) {
    std::vector<Instance> out;
    if (!e.instance_files.empty()) {
        for (const auto& f : e.instance_files) out.push_back(load_instance(f, e.distance_mode));
        return out;
    }
    const GeneratorSpec& g = e.generator.spec;
    for (int i = 0; i < e.generator.count; ++i) {
        out.push_back(generate_uniform_instance(g, e.generator.seed + static_cast<std::uint64_t>(i))
                          .with_distance_mode(e.distance_mode));
    }
    return out;
}

LocSource obtain_loc(const ExperimentConfig& e) {
    LocSource src;
    if (!e.loc_file.empty()) {
        std::ifstream in(e.loc_file, std::ios::binary);
        if (!in) throw std::invalid_argument("cannot open LOC file " + e.loc_file);
        std::stringstream buf;
        buf << in.rdbuf();
        const std::string bytes = buf.str();
        std::istringstream parse(bytes);
        LocFile file = read_loc_csv(parse);
        if (file.ops != e.ops) {
            throw std::invalid_argument("LOC file " + e.loc_file + " covers operators " +
                                        format_operator_list(file.ops) + " but the run uses " +
                                        format_operator_list(e.ops));
        }
        src.matrix = std::move(file.matrix);
        src.checksum = hex64(fnv1a64(bytes));
        src.origin = e.loc_file;
        return src;
    }
    const LocSamplingSpec& s = e.loc_sampling;
    const Instance inst = generate_uniform_instance(s.instance, s.instance_seed).with_distance_mode(e.distance_mode);
    SamplingOptions options;
    options.max_ite = s.max_ite;
    options.max_rows = s.max_rows;
    options.perturbation_strength = e.perturbation_strength;
    const SamplingResult r = sample_trap_matrix(inst, e.ops, options, s.seed);
    if (r.traps.rows.empty()) throw std::runtime_error("LOC sampling recorded no solutions");
    src.matrix = loc_matrix(r.traps);
    std::ostringstream csv;
    write_loc_csv(csv, src.matrix, e.ops);
    src.checksum = hex64(fnv1a64(csv.str()));
    src.origin = "sampled:" + inst.name();
    return src;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min(threads, std::max(count, 1));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
}

std::vector<CellResult> run_cells(const ExperimentConfig& e, const std::vector<Instance>& instances,
                                  const LocMatrix* loc) {
    if (e.needs_loc() && !loc) throw std::invalid_argument("LOC-assisted policies need a LOC matrix");
    const int np = static_cast<int>(e.policies.size());
    const int per_instance = np * e.repeats;
    const int total = static_cast<int>(instances.size()) * per_instance;
    std::vector<CellResult> cells(static_cast<std::size_t>(total));
    parallel_for(total, e.threads, [&](int idx) {
        CellResult c;
        c.instance = idx / per_instance;
        c.policy = (idx % per_instance) / e.repeats;
        c.repeat = idx % e.repeats;
        c.seed = e.seeds[static_cast<std::size_t>(c.repeat)];
        const PolicySpec& p = e.policies[static_cast<std::size_t>(c.policy)];
        SearchConfig sc;
        sc.max_ite = e.max_ite;
        sc.policy = p.kind;
        sc.params = e.params;
        sc.perturbation_strength = e.perturbation_strength;
        sc.seed = c.seed;
        const auto start = std::chrono::steady_clock::now();
        const Instance& inst = instances[static_cast<std::size_t>(c.instance)];
        const SearchTrace t = p.loc_assisted ? run_loc_assisted(inst, e.ops, sc, *loc) : run_base(inst, e.ops, sc);
        c.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.initial_distance = t.initial_distance;
        c.best_distance = t.best_distance;
        c.final_distance = t.final_distance;
        c.trapped_after_trapped = t.trapped_after_trapped_count;
        c.perturbations = t.perturbation_count;
        cells[static_cast<std::size_t>(idx)] = c;
    });
    return cells;
}

std::vector<SamplingResult> run_sampling_trials(const Instance& instance, const std::vector<OperatorId>& ops,
                                                const SamplingOptions& options,
                                                const std::vector<std::uint64_t>& seeds, int threads) {
    std::vector<SamplingResult> out(seeds.size());
    parallel_for(static_cast<int>(seeds.size()), threads, [&](int t) {
        out[static_cast<std::size_t>(t)] = sample_trap_matrix(instance, ops, options, seeds[static_cast<std::size_t>(t)]);
    });
    return out;
}

}  // namespace locaos

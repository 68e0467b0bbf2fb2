#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locaos/aos.hpp"
#include "locaos/config.hpp"
#include "locaos/instance.hpp"
#include "locaos/loc.hpp"
#include "locaos/operators.hpp"
#include "locaos/search.hpp"

namespace locaos {

// A base policy, optionally wrapped by LOC-assisted selection ("ap-loc").
struct PolicySpec {
    PolicyKind kind = PolicyKind::adaptive_pursuit;
    bool loc_assisted = false;

    std::string name() const;
    bool operator==(const PolicySpec&) const = default;
};

PolicySpec parse_policy_spec(std::string_view name);

struct GeneratorSource {
    int count = 30;
    GeneratorSpec spec;
    std::uint64_t seed = 1;  // instance i uses seed + i
};

// LOC matrix obtained by sampling one generated instance.
struct LocSamplingSpec {
    GeneratorSpec instance;
    std::uint64_t instance_seed = 0;
    std::uint64_t seed = 0;
    int max_ite = 2000;
    int max_rows = 0;
};

struct ExperimentConfig {
    std::vector<std::string> instance_files;  // generator is used when empty
    GeneratorSource generator;
    std::vector<OperatorId> ops;
    std::vector<PolicySpec> policies;
    int repeats = 30;
    std::vector<std::uint64_t> seeds;  // one per repeat
    int max_ite = 0;
    int perturbation_strength = 5;
    PolicyParams params;
    DistanceMode distance_mode = DistanceMode::exact;
    std::string loc_file;
    LocSamplingSpec loc_sampling;
    std::string out_dir = "results";
    int threads = 0;  // 0: hardware concurrency

    bool needs_loc() const;
};

// Defaults: 30 generated instances, policies ap,ap-loc,pm,pm-loc, budget 40000
// for generated and 2000 for loaded instances, repeat r seeded with seed + r.
// Throws std::invalid_argument on unknown keys or out-of-range values.
ExperimentConfig resolve_experiment(const KeyValueConfig& cfg);

// Every resolved setting as "key=value", in a fixed order.
std::vector<std::string> describe(const ExperimentConfig& cfg);

std::vector<Instance> materialize_instances(const ExperimentConfig& cfg);

struct LocSource {
    LocMatrix matrix;
    std::string checksum;  // FNV-1a of the CSV bytes
    std::string origin;
};

// Loads loc_file (validating its operator list against cfg.ops) or samples one.
LocSource obtain_loc(const ExperimentConfig& cfg);

struct CellResult {
    int instance = 0;
    int policy = 0;
    int repeat = 0;
    std::uint64_t seed = 0;
    double initial_distance = 0.0;
    double best_distance = 0.0;
    double final_distance = 0.0;
    int trapped_after_trapped = 0;
    int perturbations = 0;
    double wall_seconds = 0.0;
};

// Runs fn(0..count-1) on a pool of worker threads.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

// Every (instance, policy, repeat) cell, returned in that sorted order.
std::vector<CellResult> run_cells(const ExperimentConfig& cfg, const std::vector<Instance>& instances,
                                  const LocMatrix* loc);

// Independent sampling trials of one instance; trial t uses seeds[t].
std::vector<SamplingResult> run_sampling_trials(const Instance& instance, const std::vector<OperatorId>& ops,
                                                const SamplingOptions& options,
                                                const std::vector<std::uint64_t>& seeds, int threads);

}  // namespace locaos

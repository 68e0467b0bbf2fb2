#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "locaos/aos.hpp"
#include "locaos/instance.hpp"
#include "locaos/loc.hpp"
#include "locaos/operators.hpp"

namespace locaos {

inline constexpr int kGeneratedBudget = 40000;
inline constexpr int kBenchmarkBudget = 2000;

struct SearchConfig {
    int max_ite = kGeneratedBudget;
    PolicyKind policy = PolicyKind::adaptive_pursuit;
    PolicyParams params;
    int perturbation_strength = 5;
    std::uint64_t seed = 0;
};

struct IterationRecord {
    int ite = 0;
    int op = 0;  // operator id (1..17)
    double reward = 0.0;
    bool trapped = false;
    double distance = 0.0;  // after the step, before any perturbation
    bool perturbed = false;  // every operator was trapped; the plan was perturbed afterwards
    std::vector<double> probs;  // selection probabilities actually used
};

struct SearchTrace {
    std::vector<IterationRecord> records;
    RoutePlan best_plan;
    double initial_distance = 0.0;
    double best_distance = 0.0;
    double final_distance = 0.0;
    int trapped_after_trapped_count = 0;
    int perturbation_count = 0;
};

SearchTrace run_base(const Instance& instance, const std::vector<OperatorId>& ops, const SearchConfig& config);

SearchTrace run_loc_assisted(const Instance& instance, const std::vector<OperatorId>& ops,
                             const SearchConfig& config, const LocMatrix& loc);

// ite,op,reward,trapped,distance,perturbed
void write_trace_csv(std::ostream& out, const SearchTrace& trace, const std::vector<std::string>& comments = {});

}  // namespace locaos

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "locaos/rng.hpp"

namespace locaos {

enum class PolicyKind { uniform, probability_matching, adaptive_pursuit };

std::string_view policy_kind_name(PolicyKind kind);
PolicyKind parse_policy_kind(std::string_view name);

struct PolicyParams {
    double alpha = 0.2;  // quality decay
    double beta = 0.2;   // pursuit rate
    double p_min = 0.0;  // probability floor; 0 selects the default 0.5 / (K - 1)
};

// Per-operator quality estimates and selection probabilities of a stateless
// operator selector. Operator indices are 0-based positions in the run's
// operator list.
struct PolicyState {
    PolicyKind kind = PolicyKind::uniform;
    double alpha = 0.2;
    double beta = 0.2;
    double p_min = 0.0;
    std::vector<double> quality;
    std::vector<double> probs;

    int size() const { return static_cast<int>(quality.size()); }
    double p_max() const { return 1.0 - (size() - 1) * p_min; }
};

double default_p_min(int num_ops);

// Q starts at 1 for every operator and the probabilities start uniform.
PolicyState make_policy(PolicyKind kind, int num_ops, const PolicyParams& params = {});

// Improvement under minimization, clamped at zero.
double credit(double f_before, double f_after);

// Q[op] <- alpha * reward + (1 - alpha) * Q[op]; the uniform policy keeps no record.
void record_update(PolicyState& state, int op, double reward);

// PM recomputes the probabilities from Q; AP moves the best operator toward
// p_max and every other toward p_min; uniform returns 1/K. Stores and returns
// the new probabilities.
const std::vector<double>& decision_making(PolicyState& state);

// Roulette-wheel draw; entries with zero probability are never returned.
int select_operator(std::span<const double> probs, Rng& rng);

}  // namespace locaos

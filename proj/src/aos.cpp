#include "locaos/aos.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "locaos/instance.hpp"

namespace locaos {

std::string_view policy_kind_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::uniform:
            return "uniform";
        case PolicyKind::probability_matching:
            return "pm";
        case PolicyKind::adaptive_pursuit:
            return "ap";
    }
    return "?";
}

PolicyKind parse_policy_kind(std::string_view name) {
    if (name == "uniform") return PolicyKind::uniform;
    if (name == "pm") return PolicyKind::probability_matching;
    if (name == "ap") return PolicyKind::adaptive_pursuit;
    throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

double default_p_min(int num_ops) { return num_ops > 1 ? 0.5 / (num_ops - 1) : 1.0; }

PolicyState make_policy(PolicyKind kind, int num_ops, const PolicyParams& params) {
    if (num_ops < 1) throw std::invalid_argument("policy needs at least one operator");
    PolicyState s;
    s.kind = kind;
    s.alpha = params.alpha;
    s.beta = params.beta;
    s.p_min = params.p_min > 0.0 ? params.p_min : default_p_min(num_ops);
    if (s.alpha <= 0.0 || s.alpha > 1.0) throw std::invalid_argument("alpha must lie in (0, 1]");
    if (s.beta <= 0.0 || s.beta > 1.0) throw std::invalid_argument("beta must lie in (0, 1]");
    if (s.p_min * num_ops > 1.0 + 1e-12) throw std::invalid_argument("p_min must not exceed 1/K");
    s.quality.assign(static_cast<std::size_t>(num_ops), 1.0);
    s.probs.assign(static_cast<std::size_t>(num_ops), 1.0 / num_ops);
    return s;
}

double credit(double f_before, double f_after) { return std::max(0.0, f_before - f_after); }

void record_update(PolicyState& state, int op, double reward) {
    if (op < 0 || op >= state.size()) throw ContractViolation("record_update: operator index out of range");
    if (state.kind == PolicyKind::uniform) return;
    state.quality[op] = state.alpha * reward + (1.0 - state.alpha) * state.quality[op];
}

const std::vector<double>& decision_making(PolicyState& state) {
    const int k = state.size();
    switch (state.kind) {
        case PolicyKind::uniform:
            std::fill(state.probs.begin(), state.probs.end(), 1.0 / k);
            break;
        case PolicyKind::probability_matching: {
            const double total = std::accumulate(state.quality.begin(), state.quality.end(), 0.0);
            const double spread = 1.0 - k * state.p_min;
            for (int i = 0; i < k; ++i) {
                const double share = total > 0.0 ? state.quality[i] / total : 1.0 / k;
                state.probs[i] = state.p_min + spread * share;
            }
            break;
        }
        case PolicyKind::adaptive_pursuit: {
            const auto best = static_cast<int>(
                std::max_element(state.quality.begin(), state.quality.end()) - state.quality.begin());
            const double p_max = state.p_max();
            for (int i = 0; i < k; ++i) {
                const double target = i == best ? p_max : state.p_min;
                state.probs[i] = state.beta * target + (1.0 - state.beta) * state.probs[i];
            }
            break;
        }
    }
    return state.probs;
}

int select_operator(std::span<const double> probs, Rng& rng) {
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (!(total > 0.0)) throw ContractViolation("select_operator: probabilities sum to zero");
    const double u = uniform_unit(rng) * total;
    double cumulative = 0.0;
    int last_positive = -1;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] < 0.0) throw ContractViolation("select_operator: negative probability");
        if (probs[i] == 0.0) continue;
        cumulative += probs[i];
        last_positive = static_cast<int>(i);
        if (u < cumulative) return last_positive;
    }
    return last_positive;
}

}  // namespace locaos

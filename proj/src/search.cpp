#include "locaos/search.hpp"

#include <optional>
#include <stdexcept>

#include "locaos/aos_loc.hpp"
#include "locaos/perturb.hpp"
#include "locaos/text.hpp"

namespace locaos {
namespace {

SearchTrace run(const Instance& instance, const std::vector<OperatorId>& ops, const SearchConfig& config,
                const LocMatrix* loc) {
    if (ops.empty()) throw std::invalid_argument("search: empty operator list");
    if (config.max_ite < 1) throw std::invalid_argument("search: max_ite must be at least 1");
    if (config.perturbation_strength < 1) throw std::invalid_argument("search: perturbation_strength must be at least 1");
    const int k = static_cast<int>(ops.size());
    if (loc && loc->size() != k) {
        throw std::invalid_argument("search: LOC matrix is " + std::to_string(loc->size()) + "x" +
                                    std::to_string(loc->size()) + " but " + std::to_string(k) +
                                    " operators are configured");
    }

    Rng select_rng = make_stream(config.seed, "select");
    Rng operator_rng = make_stream(config.seed, "operator");
    Rng perturb_rng = make_stream(config.seed, "perturb");

    PolicyState policy = make_policy(config.policy, k, config.params);
    TrappedSet lo(k);
    RoutePlan current = initial_solution(instance, default_route_count(instance), config.seed);
    double current_distance = evaluate(instance, current);

    SearchTrace trace;
    trace.initial_distance = current_distance;
    trace.best_plan = current;
    trace.best_distance = current_distance;
    trace.records.reserve(static_cast<std::size_t>(config.max_ite));

    for (int ite = 1; ite <= config.max_ite; ++ite) {
        const std::vector<double>& base = decision_making(policy);
        std::vector<double> probs = loc ? modulate(base, lo, *loc) : base;
        const int chosen = select_operator(probs, select_rng);
        const bool lo_was_nonempty = !lo.empty();

        StepResult step = improving_step(instance, current, ops[chosen], ImprovementMode::first_improvement,
                                         operator_rng);
        double reward = 0.0;
        if (step.improved) {
            const double next_distance = evaluate(instance, step.plan);
            reward = credit(current_distance, next_distance);
            current = std::move(step.plan);
            current_distance = next_distance;
        }
        record_update(policy, chosen, reward);
        if (lo_was_nonempty && !step.improved) ++trace.trapped_after_trapped_count;
        update_trapped_set(lo, chosen, step.improved ? reward : 0.0);

        if (current_distance < trace.best_distance) {
            trace.best_distance = current_distance;
            trace.best_plan = current;
        }

        IterationRecord rec;
        rec.ite = ite;
        rec.op = ops[chosen].value();
        rec.reward = reward;
        rec.trapped = !step.improved;
        rec.distance = current_distance;
        rec.probs = std::move(probs);
        if (lo.full()) {
            current = perturb(instance, current, config.perturbation_strength, perturb_rng);
            current_distance = evaluate(instance, current);
            lo.clear();
            rec.perturbed = true;
            ++trace.perturbation_count;
        }
        trace.records.push_back(std::move(rec));
    }
    trace.final_distance = current_distance;
    return trace;
}

}  // namespace

SearchTrace run_base(const Instance& instance, const std::vector<OperatorId>& ops, const SearchConfig& config) {
    return run(instance, ops, config, nullptr);
}

SearchTrace run_loc_assisted(const Instance& instance, const std::vector<OperatorId>& ops,
                             const SearchConfig& config, const LocMatrix& loc) {
    return run(instance, ops, config, &loc);
}

void write_trace_csv(std::ostream& out, const SearchTrace& trace, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << "\n";
    out << "ite,op,reward,trapped,distance,perturbed\n";
    for (const IterationRecord& r : trace.records) {
        out << r.ite << "," << r.op << "," << format_double(r.reward) << "," << (r.trapped ? 1 : 0) << ","
            << format_double(r.distance) << "," << (r.perturbed ? 1 : 0) << "\n";
    }
}

}  // namespace locaos

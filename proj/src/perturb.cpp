#include "locaos/perturb.hpp"

#include <stdexcept>
#include <vector>

#include "locaos/operators.hpp"

namespace locaos {

RoutePlan perturb(const Instance& instance, const RoutePlan& plan, int strength, Rng& rng) {
    if (strength < 1) throw std::invalid_argument("perturb: strength must be positive");
    RoutePlan current = plan;
    std::vector<ScoredMove> intra;
    std::vector<ScoredMove> inter;
    for (int s = 0; s < strength; ++s) {
        const PlanContext ctx(instance, current);
        scored_moves(ctx, OperatorId(3), intra);
        scored_moves(ctx, OperatorId(8), inter);
        const std::size_t total = intra.size() + inter.size();
        if (total == 0) break;
        const std::size_t pick = uniform_index(rng, total);
        const Move& m = pick < intra.size() ? intra[pick].move : inter[pick - intra.size()].move;
        current = apply_move(current, m);
    }
    return current;
}

}  // namespace locaos

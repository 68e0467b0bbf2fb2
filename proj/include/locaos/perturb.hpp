#pragma once

#include "locaos/instance.hpp"
#include "locaos/rng.hpp"

namespace locaos {

// Applies `strength` single-customer relocations, each drawn uniformly from all
// capacity-feasible intra- and inter-route relocations of the current plan.
// A step with no feasible relocation leaves the plan as it is.
RoutePlan perturb(const Instance& instance, const RoutePlan& plan, int strength, Rng& rng);

}  // namespace locaos

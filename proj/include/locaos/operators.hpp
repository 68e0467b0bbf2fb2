#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "locaos/instance.hpp"
#include "locaos/rng.hpp"

namespace locaos {

inline constexpr int kNumOperators = 17;

// Index into the standard operator catalog, 1..17.
class OperatorId {
public:
    constexpr OperatorId() = default;
    explicit OperatorId(int value);

    constexpr int value() const { return value_; }
    constexpr auto operator<=>(const OperatorId&) const = default;

private:
    int value_ = 1;
};

enum class OperatorKind {
    two_opt,          // reverse a section of one route
    intra_exchange,   // swap two customers of one route
    intra_relocate,   // move one customer within its route
    cross,            // swap route tails, forward or reversed reconnection
    inter_exchange,   // swap equal-length sections of two routes
    inter_relocate,   // move a section to another route
    cyclic_exchange,  // rotate one customer each among three routes
    asym_exchange,    // swap sections of different lengths between two routes
};

struct OperatorSpec {
    int id;
    std::string_view name;
    OperatorKind kind;
    int arity;     // number of routes touched
    int length_a;  // section length taken from the first route (0 when not applicable)
    int length_b;  // section length taken from the second route
};

const std::array<OperatorSpec, kNumOperators>& operator_catalog();
const OperatorSpec& operator_spec(OperatorId op);
std::vector<OperatorId> all_operators();

// Accepts "all", single ids and inclusive ranges separated by commas, e.g. "1-4,8,12-17".
std::vector<OperatorId> parse_operator_list(std::string_view text);
std::string format_operator_list(const std::vector<OperatorId>& ops);

// One neighbor of a plan. Field meaning per operator kind:
//   two_opt          routes[0]; positions[0] = section start; lengths[0] = section length
//   intra_exchange   routes[0]; positions = the two swapped indices (i < j)
//   intra_relocate   routes[0]; positions[0] = source index, positions[1] = final index
//   cross            routes[0..1]; positions = cut points (customers kept at the head);
//                    reversed selects the head-to-head reconnection
//   inter_exchange   routes[0..1]; positions = section starts; lengths = section lengths
//   asym_exchange    same as inter_exchange
//   inter_relocate   routes[0] = source, routes[1] = target; positions[0] = section start,
//                    positions[1] = insertion index in the target; lengths[0] = section length
//   cyclic_exchange  routes[0..2]; positions = customer indices; the customer of route k
//                    takes the slot of route k+1 (mod 3)
struct Move {
    OperatorId op;
    std::array<int, 3> routes{-1, -1, -1};
    std::array<int, 3> positions{0, 0, 0};
    std::array<int, 3> lengths{0, 0, 0};
    bool reversed = false;

    bool operator==(const Move&) const = default;
};

// Cached prefix sums over a plan for O(1) move evaluation. Holds references:
// the instance and plan must outlive the context.
class PlanContext {
public:
    PlanContext(const Instance& instance, const RoutePlan& plan);

    const Instance& instance() const { return *instance_; }
    const RoutePlan& plan() const { return *plan_; }
    int num_routes() const { return static_cast<int>(plan_->routes.size()); }
    int route_size(int r) const { return static_cast<int>(plan_->routes[r].size()); }
    int node(int r, int pos) const { return plan_->routes[r][pos]; }

    // Sum of edge lengths inside positions [begin, end) of route r.
    double inner_distance(int r, int begin, int end) const {
        return end - begin <= 1 ? 0.0 : edge_prefix_[r][end - 1] - edge_prefix_[r][begin];
    }
    int segment_demand(int r, int begin, int end) const {
        return demand_prefix_[r][end] - demand_prefix_[r][begin];
    }
    int load(int r) const { return demand_prefix_[r].back(); }

private:
    const Instance* instance_;
    const RoutePlan* plan_;
    std::vector<std::vector<double>> edge_prefix_;
    std::vector<std::vector<int>> demand_prefix_;
};

struct ScoredMove {
    Move move;
    double delta;
};

// A move counts as improving only when its delta is below this threshold.
inline constexpr double kImprovementEpsilon = 1e-12;

// Every capacity-feasible move of `op`, in canonical order, with its delta.
void scored_moves(const PlanContext& ctx, OperatorId op, std::vector<ScoredMove>& out);

// Canonical-order scan that stops at the first improving move.
bool has_improving_move(const PlanContext& ctx, OperatorId op);

// All capacity-feasible moves of `op` in a uniformly random order fixed by order_seed.
std::vector<Move> enumerate_moves(const Instance& instance, const RoutePlan& plan, OperatorId op,
                                  std::uint64_t order_seed);

// Throws ContractViolation when the move does not fit the plan's shape. Capacity
// is not re-checked; moves from enumerate_moves are feasible by construction.
RoutePlan apply_move(const RoutePlan& plan, const Move& move);

// evaluate(apply_move(plan, move)) - evaluate(plan), from the affected edges only.
double move_delta(const Instance& instance, const RoutePlan& plan, const Move& move);
double move_delta(const PlanContext& ctx, const Move& move);

enum class ImprovementMode { first_improvement, random_improvement };

struct StepResult {
    RoutePlan plan;
    bool improved = false;
    double delta = 0.0;
};

StepResult improving_step(const Instance& instance, const RoutePlan& plan, OperatorId op,
                          ImprovementMode mode, std::uint64_t seed);
StepResult improving_step(const Instance& instance, const RoutePlan& plan, OperatorId op,
                          ImprovementMode mode, Rng& rng);

bool is_trapped(const Instance& instance, const RoutePlan& plan, OperatorId op);

}  // namespace locaos

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace locaos {

// Raised when an input file cannot be turned into a valid Instance. The
// message carries the 1-based line number when one is known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// Caller broke an operation's precondition (infeasible plan, stale move, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

enum class DistanceMode { exact, rounded };

// A Euclidean CVRP instance on the complete graph over depot + customers.
// Node indices are 0-based; the depot is a node with zero demand.
class Instance {
public:
    Instance(std::string name, int depot, std::vector<Point> coords, std::vector<int> demands,
             int capacity, std::optional<int> min_vehicles = std::nullopt,
             DistanceMode mode = DistanceMode::exact);

    const std::string& name() const { return name_; }
    int depot() const { return depot_; }
    int capacity() const { return capacity_; }
    std::optional<int> min_vehicles() const { return min_vehicles_; }
    DistanceMode distance_mode() const { return mode_; }

    int num_nodes() const { return static_cast<int>(coords_.size()); }
    int num_customers() const { return num_nodes() - 1; }

    const std::vector<Point>& coords() const { return coords_; }
    const std::vector<int>& demands() const { return demands_; }
    int demand(int node) const { return demands_[node]; }

    // Customer node ids in increasing order (every node except the depot).
    const std::vector<int>& customers() const { return customers_; }

    double distance(int a, int b) const { return dist_[static_cast<std::size_t>(a) * coords_.size() + b]; }

    int total_demand() const;

    // Same instance with a different distance convention.
    Instance with_distance_mode(DistanceMode mode) const;

    bool operator==(const Instance& other) const;

private:
    std::string name_;
    int depot_;
    std::vector<Point> coords_;
    std::vector<int> demands_;
    int capacity_;
    std::optional<int> min_vehicles_;
    DistanceMode mode_;
    std::vector<int> customers_;
    std::vector<double> dist_;
};

// Euclidean distance between two points, optionally rounded to the nearest
// integer (TSPLIB nint convention).
double euclidean(const Point& a, const Point& b, DistanceMode mode = DistanceMode::exact);

// Routes hold customer node ids; each route starts and ends at the depot
// implicitly. Routes are never empty.
struct RoutePlan {
    std::vector<std::vector<int>> routes;

    bool operator==(const RoutePlan&) const = default;
};

// Drops empty routes.
RoutePlan make_plan(std::vector<std::vector<int>> routes);

// Throws ContractViolation describing the first violated invariant.
void check_feasible(const Instance& instance, const RoutePlan& plan);
bool is_feasible(const Instance& instance, const RoutePlan& plan);

int route_load(const Instance& instance, const std::vector<int>& route);
double route_distance(const Instance& instance, const std::vector<int>& route);

// Total travel distance. Throws ContractViolation on an infeasible plan.
double evaluate(const Instance& instance, const RoutePlan& plan);

// Randomized first-fit: customers are shuffled by seed and placed into the
// first of the open routes with enough residual capacity. A new route is opened
// when none fits, so the requested route count is a starting point only.
RoutePlan initial_solution(const Instance& instance, int n_routes, std::uint64_t seed);

// Number of routes used by default for initial solutions: the instance's
// vehicle hint when present, otherwise the capacity lower bound.
int default_route_count(const Instance& instance);

struct GeneratorSpec {
    int customers = 100;
    int capacity = 50;
    int demand_lo = 1;
    int demand_hi = 9;
};

// Depot and customers uniform in the unit square, integer demands uniform in
// [demand_lo, demand_hi].
Instance generate_uniform_instance(int n_customers, int capacity, int demand_lo, int demand_hi,
                                   std::uint64_t seed);
Instance generate_uniform_instance(const GeneratorSpec& spec, std::uint64_t seed);

}  // namespace locaos

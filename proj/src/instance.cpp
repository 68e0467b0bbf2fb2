#include "locaos/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "locaos/rng.hpp"

namespace locaos {

double euclidean(const Point& a, const Point& b, DistanceMode mode) {
    const double d = std::hypot(a.x - b.x, a.y - b.y);
    return mode == DistanceMode::rounded ? std::floor(d + 0.5) : d;
}

Instance::Instance(std::string name, int depot, std::vector<Point> coords, std::vector<int> demands,
                   int capacity, std::optional<int> min_vehicles, DistanceMode mode)
    : name_(std::move(name)),
      depot_(depot),
      coords_(std::move(coords)),
      demands_(std::move(demands)),
      capacity_(capacity),
      min_vehicles_(min_vehicles),
      mode_(mode) {
    if (coords_.size() != demands_.size()) {
        throw std::invalid_argument("instance: coords and demands differ in length");
    }
    if (coords_.size() < 2) {
        throw std::invalid_argument("instance: need a depot and at least one customer");
    }
    if (depot_ < 0 || depot_ >= num_nodes()) {
        throw std::invalid_argument("instance: depot index out of range");
    }
    if (capacity_ <= 0) {
        throw std::invalid_argument("instance: capacity must be positive");
    }
    if (demands_[depot_] != 0) {
        throw std::invalid_argument("instance: depot demand must be 0");
    }
    if (min_vehicles_ && *min_vehicles_ <= 0) {
        throw std::invalid_argument("instance: min_vehicles must be positive");
    }
    for (int i = 0; i < num_nodes(); ++i) {
        if (demands_[i] < 0 || demands_[i] > capacity_) {
            throw std::invalid_argument("instance: demand of node " + std::to_string(i) +
                                        " outside [0, capacity]");
        }
        if (i != depot_) customers_.push_back(i);
    }
    const std::size_t n = coords_.size();
    dist_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            const double d = euclidean(coords_[a], coords_[b], mode_);
            dist_[a * n + b] = d;
            dist_[b * n + a] = d;
        }
    }
}

int Instance::total_demand() const {
    return std::accumulate(demands_.begin(), demands_.end(), 0);
}

Instance Instance::with_distance_mode(DistanceMode mode) const {
    return Instance(name_, depot_, coords_, demands_, capacity_, min_vehicles_, mode);
}

bool Instance::operator==(const Instance& other) const {
    return name_ == other.name_ && depot_ == other.depot_ && coords_ == other.coords_ &&
           demands_ == other.demands_ && capacity_ == other.capacity_ &&
           min_vehicles_ == other.min_vehicles_ && mode_ == other.mode_;
}

RoutePlan make_plan(std::vector<std::vector<int>> routes) {
    RoutePlan plan;
    for (auto& r : routes) {
        if (!r.empty()) plan.routes.push_back(std::move(r));
    }
    return plan;
}

int route_load(const Instance& instance, const std::vector<int>& route) {
    int load = 0;
    for (int c : route) load += instance.demand(c);
    return load;
}

double route_distance(const Instance& instance, const std::vector<int>& route) {
    if (route.empty()) return 0.0;
    const int depot = instance.depot();
    double total = instance.distance(depot, route.front());
    for (std::size_t i = 1; i < route.size(); ++i) {
        total += instance.distance(route[i - 1], route[i]);
    }
    return total + instance.distance(route.back(), depot);
}

void check_feasible(const Instance& instance, const RoutePlan& plan) {
    std::vector<int> seen(instance.num_nodes(), 0);
    for (std::size_t r = 0; r < plan.routes.size(); ++r) {
        const auto& route = plan.routes[r];
        if (route.empty()) {
            throw ContractViolation("route " + std::to_string(r) + " is empty");
        }
        for (int c : route) {
            if (c < 0 || c >= instance.num_nodes() || c == instance.depot()) {
                throw ContractViolation("route " + std::to_string(r) + " visits invalid node " +
                                        std::to_string(c));
            }
            if (seen[c]++ > 0) {
                throw ContractViolation("customer " + std::to_string(c) + " visited more than once");
            }
        }
        if (route_load(instance, route) > instance.capacity()) {
            throw ContractViolation("route " + std::to_string(r) + " exceeds capacity");
        }
    }
    for (int c : instance.customers()) {
        if (seen[c] == 0) {
            throw ContractViolation("customer " + std::to_string(c) + " is not visited");
        }
    }
}

bool is_feasible(const Instance& instance, const RoutePlan& plan) {
    try {
        check_feasible(instance, plan);
        return true;
    } catch (const ContractViolation&) {
        return false;
    }
}

double evaluate(const Instance& instance, const RoutePlan& plan) {
    check_feasible(instance, plan);
    double total = 0.0;
    for (const auto& route : plan.routes) total += route_distance(instance, route);
    return total;
}

int default_route_count(const Instance& instance) {
    if (instance.min_vehicles()) return *instance.min_vehicles();
    const int total = instance.total_demand();
    return std::max(1, (total + instance.capacity() - 1) / instance.capacity());
}

RoutePlan initial_solution(const Instance& instance, int n_routes, std::uint64_t seed) {
    if (n_routes < 1) throw std::invalid_argument("initial_solution: n_routes must be positive");
    Rng rng = make_stream(seed, "init");
    std::vector<int> order = instance.customers();
    shuffle_range(order.begin(), order.end(), rng);

    std::vector<std::vector<int>> routes(static_cast<std::size_t>(n_routes));
    std::vector<int> load(static_cast<std::size_t>(n_routes), 0);
    for (int c : order) {
        const int d = instance.demand(c);
        auto it = std::find_if(load.begin(), load.end(),
                               [&](int l) { return l + d <= instance.capacity(); });
        if (it == load.end()) {
            routes.emplace_back();
            load.push_back(0);
            it = load.end() - 1;
        }
        const auto r = static_cast<std::size_t>(it - load.begin());
        routes[r].push_back(c);
        load[r] += d;
    }
    return make_plan(std::move(routes));
}

Instance generate_uniform_instance(int n_customers, int capacity, int demand_lo, int demand_hi,
                                   std::uint64_t seed) {
    if (n_customers < 1) throw std::invalid_argument("generator: need at least one customer");
    if (capacity < 1) throw std::invalid_argument("generator: capacity must be positive");
    if (demand_lo < 1 || demand_hi < demand_lo) {
        throw std::invalid_argument("generator: need 1 <= demand_lo <= demand_hi");
    }
    if (demand_hi > capacity) throw std::invalid_argument("generator: demand_hi exceeds capacity");

    Rng rng = make_stream(seed, "instance");
    const int n = n_customers + 1;
    std::vector<Point> coords(static_cast<std::size_t>(n));
    std::vector<int> demands(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        coords[i].x = uniform_unit(rng);
        coords[i].y = uniform_unit(rng);
        if (i > 0) {
            const auto span = static_cast<std::size_t>(demand_hi - demand_lo + 1);
            demands[i] = demand_lo + static_cast<int>(uniform_index(rng, span));
        }
    }
    std::string name = "uniform-n" + std::to_string(n_customers) + "-s" + std::to_string(seed);
    return Instance(std::move(name), 0, std::move(coords), std::move(demands), capacity);
}

Instance generate_uniform_instance(const GeneratorSpec& spec, std::uint64_t seed) {
    return generate_uniform_instance(spec.customers, spec.capacity, spec.demand_lo, spec.demand_hi, seed);
}

}  // namespace locaos

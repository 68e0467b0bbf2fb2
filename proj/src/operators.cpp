#include "locaos/operators.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace locaos {

OperatorId::OperatorId(int value) : value_(value) {
    if (value < 1 || value > kNumOperators) {
        throw std::out_of_range("operator id " + std::to_string(value) + " outside 1.." +
                                std::to_string(kNumOperators));
    }
}

const std::array<OperatorSpec, kNumOperators>& operator_catalog() {
    using K = OperatorKind;
    static const std::array<OperatorSpec, kNumOperators> catalog{{
        {1, "2opt", K::two_opt, 1, 0, 0},
        {2, "symmetric-exchange-intra", K::intra_exchange, 1, 1, 1},
        {3, "relocate-intra", K::intra_relocate, 1, 1, 0},
        {4, "cross", K::cross, 2, 0, 0},
        {5, "symmetric-exchange-1", K::inter_exchange, 2, 1, 1},
        {6, "symmetric-exchange-2", K::inter_exchange, 2, 2, 2},
        {7, "symmetric-exchange-3", K::inter_exchange, 2, 3, 3},
        {8, "relocate-1", K::inter_relocate, 2, 1, 0},
        {9, "relocate-2", K::inter_relocate, 2, 2, 0},
        {10, "relocate-3", K::inter_relocate, 2, 3, 0},
        {11, "cyclic-exchange", K::cyclic_exchange, 3, 1, 1},
        {12, "asymmetric-exchange-1-2", K::asym_exchange, 2, 1, 2},
        {13, "asymmetric-exchange-2-1", K::asym_exchange, 2, 2, 1},
        {14, "asymmetric-exchange-1-3", K::asym_exchange, 2, 1, 3},
        {15, "asymmetric-exchange-3-1", K::asym_exchange, 2, 3, 1},
        {16, "asymmetric-exchange-2-3", K::asym_exchange, 2, 2, 3},
        {17, "asymmetric-exchange-3-2", K::asym_exchange, 2, 3, 2},
    }};
    return catalog;
}

const OperatorSpec& operator_spec(OperatorId op) { return operator_catalog()[op.value() - 1]; }

std::vector<OperatorId> all_operators() {
    std::vector<OperatorId> ops;
    for (int i = 1; i <= kNumOperators; ++i) ops.emplace_back(i);
    return ops;
}

std::vector<OperatorId> parse_operator_list(std::string_view text) {
    auto to_int = [&](std::string_view s) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw std::invalid_argument("bad operator list '" + std::string(text) + "'");
        }
        return v;
    };
    if (text == "all") return all_operators();
    std::vector<OperatorId> ops;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view item = text.substr(start, comma - start);
        const std::size_t dash = item.find('-');
        if (dash == std::string_view::npos) {
            ops.emplace_back(to_int(item));
        } else {
            const int lo = to_int(item.substr(0, dash));
            const int hi = to_int(item.substr(dash + 1));
            if (hi < lo) throw std::invalid_argument("bad operator range '" + std::string(item) + "'");
            for (int v = lo; v <= hi; ++v) ops.emplace_back(v);
        }
        start = comma + 1;
    }
    std::vector<OperatorId> sorted = ops;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("duplicate operator in '" + std::string(text) + "'");
    }
    return ops;
}

std::string format_operator_list(const std::vector<OperatorId>& ops) {
    std::ostringstream out;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i) out << ',';
        out << ops[i].value();
    }
    return out.str();
}

PlanContext::PlanContext(const Instance& instance, const RoutePlan& plan)
    : instance_(&instance), plan_(&plan) {
    edge_prefix_.resize(plan.routes.size());
    demand_prefix_.resize(plan.routes.size());
    for (std::size_t r = 0; r < plan.routes.size(); ++r) {
        const auto& route = plan.routes[r];
        auto& edges = edge_prefix_[r];
        auto& dem = demand_prefix_[r];
        edges.assign(route.size(), 0.0);
        dem.assign(route.size() + 1, 0);
        for (std::size_t i = 0; i < route.size(); ++i) {
            if (i > 0) edges[i] = edges[i - 1] + instance.distance(route[i - 1], route[i]);
            dem[i + 1] = dem[i] + instance.demand(route[i]);
        }
    }
}

namespace {

struct Segment {
    int route;
    int begin;
    int end;
    bool reversed;
};

struct NewRoute {
    int route = -1;
    int count = 0;
    std::array<Segment, 5> segs{};

    void add(int r, int b, int e, bool rev = false) {
        if (e > b) segs[count++] = Segment{r, b, e, rev};
    }
};

struct Composition {
    int count = 0;
    std::array<NewRoute, 3> routes{};

    NewRoute& open(int r) {
        NewRoute& nr = routes[count++];
        nr.route = r;
        return nr;
    }
};

// Expresses the routes touched by a move as concatenations of sections of the
// current routes. Every position of a touched route lands in exactly one segment.
template <typename SizeOf>
Composition compose(const Move& m, SizeOf size_of) {
    Composition c;
    const OperatorSpec& spec = operator_spec(m.op);
    const int a = m.routes[0];
    const int b = m.routes[1];
    const int la = size_of(a);
    const int i = m.positions[0];
    const int j = m.positions[1];
    switch (spec.kind) {
        case OperatorKind::two_opt: {
            const int e = i + m.lengths[0];
            NewRoute& r = c.open(a);
            r.add(a, 0, i);
            r.add(a, i, e, true);
            r.add(a, e, la);
            break;
        }
        case OperatorKind::intra_exchange: {
            NewRoute& r = c.open(a);
            r.add(a, 0, i);
            r.add(a, j, j + 1);
            r.add(a, i + 1, j);
            r.add(a, i, i + 1);
            r.add(a, j + 1, la);
            break;
        }
        case OperatorKind::intra_relocate: {
            NewRoute& r = c.open(a);
            if (j < i) {
                r.add(a, 0, j);
                r.add(a, i, i + 1);
                r.add(a, j, i);
                r.add(a, i + 1, la);
            } else {
                r.add(a, 0, i);
                r.add(a, i + 1, j + 1);
                r.add(a, i, i + 1);
                r.add(a, j + 1, la);
            }
            break;
        }
        case OperatorKind::cross: {
            const int lb = size_of(b);
            NewRoute& ra = c.open(a);
            NewRoute& rb = c.open(b);
            if (!m.reversed) {
                ra.add(a, 0, i);
                ra.add(b, j, lb);
                rb.add(b, 0, j);
                rb.add(a, i, la);
            } else {
                ra.add(a, 0, i);
                ra.add(b, 0, j, true);
                rb.add(a, i, la, true);
                rb.add(b, j, lb);
            }
            break;
        }
        case OperatorKind::inter_exchange:
        case OperatorKind::asym_exchange: {
            const int lb = size_of(b);
            const int sa = m.lengths[0];
            const int sb = m.lengths[1];
            NewRoute& ra = c.open(a);
            NewRoute& rb = c.open(b);
            ra.add(a, 0, i);
            ra.add(b, j, j + sb);
            ra.add(a, i + sa, la);
            rb.add(b, 0, j);
            rb.add(a, i, i + sa);
            rb.add(b, j + sb, lb);
            break;
        }
        case OperatorKind::inter_relocate: {
            const int lb = size_of(b);
            const int s = m.lengths[0];
            NewRoute& ra = c.open(a);
            NewRoute& rb = c.open(b);
            ra.add(a, 0, i);
            ra.add(a, i + s, la);
            rb.add(b, 0, j);
            rb.add(a, i, i + s);
            rb.add(b, j, lb);
            break;
        }
        case OperatorKind::cyclic_exchange: {
            const int cc = m.routes[2];
            const int k = m.positions[2];
            const int lb = size_of(b);
            const int lc = size_of(cc);
            NewRoute& ra = c.open(a);
            NewRoute& rb = c.open(b);
            NewRoute& rc = c.open(cc);
            ra.add(a, 0, i);
            ra.add(cc, k, k + 1);
            ra.add(a, i + 1, la);
            rb.add(b, 0, j);
            rb.add(a, i, i + 1);
            rb.add(b, j + 1, lb);
            rc.add(cc, 0, k);
            rc.add(b, j, j + 1);
            rc.add(cc, k + 1, lc);
            break;
        }
    }
    return c;
}

bool capacity_ok(const PlanContext& ctx, const Composition& c) {
    const int cap = ctx.instance().capacity();
    for (int t = 0; t < c.count; ++t) {
        const NewRoute& nr = c.routes[t];
        int load = 0;
        for (int s = 0; s < nr.count; ++s) {
            load += ctx.segment_demand(nr.segs[s].route, nr.segs[s].begin, nr.segs[s].end);
        }
        if (load > cap) return false;
    }
    return true;
}

// Sum of a few edge lengths in sorted order, so equal multisets give equal sums.
template <std::size_t N>
double stable_sum(std::array<double, N>& v, int n) {
    std::sort(v.begin(), v.begin() + n);
    double s = 0.0;
    for (int t = 0; t < n; ++t) s += v[t];
    return s;
}

// Segment interiors are reused unchanged, so only the edges at segment
// boundaries (including depot legs) differ between old and new routes.
double composition_delta(const PlanContext& ctx, const Composition& c) {
    const Instance& inst = ctx.instance();
    const int depot = inst.depot();
    std::array<double, 20> added{};
    std::array<double, 20> removed{};
    int na = 0;
    int nr = 0;

    for (int t = 0; t < c.count; ++t) {
        const NewRoute& route = c.routes[t];
        int prev = depot;
        for (int s = 0; s < route.count; ++s) {
            const Segment& seg = route.segs[s];
            const int first = ctx.node(seg.route, seg.reversed ? seg.end - 1 : seg.begin);
            const int last = ctx.node(seg.route, seg.reversed ? seg.begin : seg.end - 1);
            added[na++] = inst.distance(prev, first);
            prev = last;
        }
        if (route.count > 0) added[na++] = inst.distance(prev, depot);

        const int r = route.route;
        const int len = ctx.route_size(r);
        removed[nr++] = inst.distance(depot, ctx.node(r, 0));
        removed[nr++] = inst.distance(ctx.node(r, len - 1), depot);
        for (int u = 0; u < c.count; ++u) {
            const NewRoute& other = c.routes[u];
            for (int s = 0; s < other.count; ++s) {
                const Segment& seg = other.segs[s];
                if (seg.route == r && seg.begin > 0) {
                    removed[nr++] = inst.distance(ctx.node(r, seg.begin - 1), ctx.node(r, seg.begin));
                }
            }
        }
    }
    return stable_sum(added, na) - stable_sum(removed, nr);
}

// Calls visit(move) for every syntactically valid move in canonical order until
// visit returns false. Capacity is not checked here.
template <typename Visit>
void for_each_candidate(const PlanContext& ctx, OperatorId op, Visit visit) {
    const OperatorSpec& spec = operator_spec(op);
    const int nroutes = ctx.num_routes();
    Move m;
    m.op = op;
    switch (spec.kind) {
        case OperatorKind::two_opt:
            m.reversed = true;
            for (int r = 0; r < nroutes; ++r) {
                const int len = ctx.route_size(r);
                m.routes = {r, -1, -1};
                for (int i = 0; i < len; ++i) {
                    for (int e = i + 1; e < len; ++e) {
                        m.positions = {i, 0, 0};
                        m.lengths = {e - i + 1, 0, 0};
                        if (!visit(m)) return;
                    }
                }
            }
            break;
        case OperatorKind::intra_exchange:
            for (int r = 0; r < nroutes; ++r) {
                const int len = ctx.route_size(r);
                m.routes = {r, -1, -1};
                m.lengths = {1, 1, 0};
                for (int i = 0; i < len; ++i) {
                    for (int j = i + 1; j < len; ++j) {
                        m.positions = {i, j, 0};
                        if (!visit(m)) return;
                    }
                }
            }
            break;
        case OperatorKind::intra_relocate:
            for (int r = 0; r < nroutes; ++r) {
                const int len = ctx.route_size(r);
                m.routes = {r, -1, -1};
                m.lengths = {1, 0, 0};
                for (int i = 0; i < len; ++i) {
                    for (int j = 0; j < len; ++j) {
                        if (j == i) continue;
                        m.positions = {i, j, 0};
                        if (!visit(m)) return;
                    }
                }
            }
            break;
        case OperatorKind::cross:
            for (int a = 0; a < nroutes; ++a) {
                for (int b = a + 1; b < nroutes; ++b) {
                    const int la = ctx.route_size(a);
                    const int lb = ctx.route_size(b);
                    m.routes = {a, b, -1};
                    for (int rev = 0; rev < 2; ++rev) {
                        m.reversed = rev == 1;
                        for (int i = 0; i <= la; ++i) {
                            for (int j = 0; j <= lb; ++j) {
                                // Reconnections that reproduce the plan (up to route orientation).
                                if (!m.reversed && ((i == 0 && j == 0) || (i == la && j == lb))) continue;
                                if (m.reversed && ((i == la && j == 0) || (i == 0 && j == lb))) continue;
                                m.positions = {i, j, 0};
                                m.lengths = {la - i, lb - j, 0};
                                if (!visit(m)) return;
                            }
                        }
                    }
                }
            }
            break;
        case OperatorKind::inter_exchange:
        case OperatorKind::asym_exchange: {
            const int sa = spec.length_a;
            const int sb = spec.length_b;
            m.lengths = {sa, sb, 0};
            for (int a = 0; a < nroutes; ++a) {
                for (int b = a + 1; b < nroutes; ++b) {
                    m.routes = {a, b, -1};
                    for (int i = 0; i + sa <= ctx.route_size(a); ++i) {
                        for (int j = 0; j + sb <= ctx.route_size(b); ++j) {
                            m.positions = {i, j, 0};
                            if (!visit(m)) return;
                        }
                    }
                }
            }
            break;
        }
        case OperatorKind::inter_relocate: {
            const int s = spec.length_a;
            m.lengths = {s, 0, 0};
            for (int a = 0; a < nroutes; ++a) {
                for (int b = 0; b < nroutes; ++b) {
                    if (a == b) continue;
                    m.routes = {a, b, -1};
                    for (int i = 0; i + s <= ctx.route_size(a); ++i) {
                        for (int j = 0; j <= ctx.route_size(b); ++j) {
                            m.positions = {i, j, 0};
                            if (!visit(m)) return;
                        }
                    }
                }
            }
            break;
        }
        case OperatorKind::cyclic_exchange:
            m.lengths = {1, 1, 1};
            // The lowest route index leads, so each rotation is listed once.
            for (int a = 0; a < nroutes; ++a) {
                for (int b = a + 1; b < nroutes; ++b) {
                    for (int c = a + 1; c < nroutes; ++c) {
                        if (c == b) continue;
                        m.routes = {a, b, c};
                        for (int i = 0; i < ctx.route_size(a); ++i) {
                            for (int j = 0; j < ctx.route_size(b); ++j) {
                                for (int k = 0; k < ctx.route_size(c); ++k) {
                                    m.positions = {i, j, k};
                                    if (!visit(m)) return;
                                }
                            }
                        }
                    }
                }
            }
            break;
    }
}

Composition compose_in(const PlanContext& ctx, const Move& m) {
    return compose(m, [&](int r) { return ctx.route_size(r); });
}

void feasible_moves(const PlanContext& ctx, OperatorId op, std::vector<Move>& out) {
    out.clear();
    const bool multi_route = operator_spec(op).arity > 1;
    for_each_candidate(ctx, op, [&](const Move& m) {
        if (!multi_route || capacity_ok(ctx, compose_in(ctx, m))) out.push_back(m);
        return true;
    });
}

void validate_move(const RoutePlan& plan, const Move& m) {
    const OperatorSpec& spec = operator_spec(m.op);
    const int nroutes = static_cast<int>(plan.routes.size());
    auto fail = [&](const std::string& why) {
        throw ContractViolation("stale move for operator " + std::to_string(spec.id) + ": " + why);
    };
    for (int t = 0; t < spec.arity; ++t) {
        if (m.routes[t] < 0 || m.routes[t] >= nroutes) fail("route index out of range");
        for (int u = 0; u < t; ++u) {
            if (m.routes[u] == m.routes[t]) fail("routes are not distinct");
        }
    }
    auto len = [&](int t) { return static_cast<int>(plan.routes[m.routes[t]].size()); };
    const int i = m.positions[0];
    const int j = m.positions[1];
    switch (spec.kind) {
        case OperatorKind::two_opt:
            if (i < 0 || m.lengths[0] < 2 || i + m.lengths[0] > len(0)) fail("section out of bounds");
            break;
        case OperatorKind::intra_exchange:
            if (i < 0 || j <= i || j >= len(0)) fail("positions out of bounds");
            break;
        case OperatorKind::intra_relocate:
            if (i < 0 || j < 0 || i >= len(0) || j >= len(0) || i == j) fail("positions out of bounds");
            break;
        case OperatorKind::cross:
            if (i < 0 || j < 0 || i > len(0) || j > len(1)) fail("cut out of bounds");
            break;
        case OperatorKind::inter_exchange:
        case OperatorKind::asym_exchange:
            if (m.lengths[0] != spec.length_a || m.lengths[1] != spec.length_b) fail("wrong lengths");
            if (i < 0 || j < 0 || i + m.lengths[0] > len(0) || j + m.lengths[1] > len(1)) {
                fail("section out of bounds");
            }
            break;
        case OperatorKind::inter_relocate:
            if (m.lengths[0] != spec.length_a) fail("wrong length");
            if (i < 0 || j < 0 || i + m.lengths[0] > len(0) || j > len(1)) fail("section out of bounds");
            break;
        case OperatorKind::cyclic_exchange:
            for (int t = 0; t < 3; ++t) {
                if (m.positions[t] < 0 || m.positions[t] >= len(t)) fail("position out of bounds");
            }
            break;
    }
}

}  // namespace

void scored_moves(const PlanContext& ctx, OperatorId op, std::vector<ScoredMove>& out) {
    out.clear();
    const bool multi_route = operator_spec(op).arity > 1;
    for_each_candidate(ctx, op, [&](const Move& m) {
        const Composition c = compose_in(ctx, m);
        if (!multi_route || capacity_ok(ctx, c)) out.push_back({m, composition_delta(ctx, c)});
        return true;
    });
}

bool has_improving_move(const PlanContext& ctx, OperatorId op) {
    const bool multi_route = operator_spec(op).arity > 1;
    bool found = false;
    for_each_candidate(ctx, op, [&](const Move& m) {
        const Composition c = compose_in(ctx, m);
        if (multi_route && !capacity_ok(ctx, c)) return true;
        found = composition_delta(ctx, c) < -kImprovementEpsilon;
        return !found;
    });
    return found;
}

std::vector<Move> enumerate_moves(const Instance& instance, const RoutePlan& plan, OperatorId op,
                                  std::uint64_t order_seed) {
    const PlanContext ctx(instance, plan);
    std::vector<Move> moves;
    feasible_moves(ctx, op, moves);
    Rng rng = make_stream(order_seed, "enumerate");
    shuffle_range(moves.begin(), moves.end(), rng);
    return moves;
}

RoutePlan apply_move(const RoutePlan& plan, const Move& move) {
    validate_move(plan, move);
    const Composition c = compose(move, [&](int r) { return static_cast<int>(plan.routes[r].size()); });
    std::vector<std::vector<int>> routes = plan.routes;
    for (int t = 0; t < c.count; ++t) {
        const NewRoute& nr = c.routes[t];
        std::vector<int> seq;
        for (int s = 0; s < nr.count; ++s) {
            const Segment& seg = nr.segs[s];
            const auto& src = plan.routes[seg.route];
            if (seg.reversed) {
                for (int p = seg.end - 1; p >= seg.begin; --p) seq.push_back(src[p]);
            } else {
                seq.insert(seq.end(), src.begin() + seg.begin, src.begin() + seg.end);
            }
        }
        routes[nr.route] = std::move(seq);
    }
    return make_plan(std::move(routes));
}

double move_delta(const PlanContext& ctx, const Move& move) {
    validate_move(ctx.plan(), move);
    return composition_delta(ctx, compose_in(ctx, move));
}

double move_delta(const Instance& instance, const RoutePlan& plan, const Move& move) {
    const PlanContext ctx(instance, plan);
    return move_delta(ctx, move);
}

StepResult improving_step(const Instance& instance, const RoutePlan& plan, OperatorId op,
                          ImprovementMode mode, Rng& rng) {
    const PlanContext ctx(instance, plan);
    std::vector<Move> moves;
    feasible_moves(ctx, op, moves);

    if (mode == ImprovementMode::first_improvement) {
        // Lazy Fisher-Yates: scans the same order shuffle_range would produce.
        const std::size_t n = moves.size();
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t pick = k + uniform_index(rng, n - k);
            std::swap(moves[k], moves[pick]);
            const double delta = composition_delta(ctx, compose_in(ctx, moves[k]));
            if (delta < -kImprovementEpsilon) return {apply_move(plan, moves[k]), true, delta};
        }
        return {plan, false, 0.0};
    }

    std::vector<ScoredMove> improving;
    for (const Move& m : moves) {
        const double delta = composition_delta(ctx, compose_in(ctx, m));
        if (delta < -kImprovementEpsilon) improving.push_back({m, delta});
    }
    if (improving.empty()) return {plan, false, 0.0};
    const ScoredMove& chosen = improving[uniform_index(rng, improving.size())];
    return {apply_move(plan, chosen.move), true, chosen.delta};
}

StepResult improving_step(const Instance& instance, const RoutePlan& plan, OperatorId op,
                          ImprovementMode mode, std::uint64_t seed) {
    Rng rng = make_stream(seed, "enumerate");
    return improving_step(instance, plan, op, mode, rng);
}

bool is_trapped(const Instance& instance, const RoutePlan& plan, OperatorId op) {
    const PlanContext ctx(instance, plan);
    return !has_improving_move(ctx, op);
}

}  // namespace locaos

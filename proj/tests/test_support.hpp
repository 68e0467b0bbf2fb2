#pragma once

// Test-only helpers: random small plans and an independent brute-force
// neighborhood generator that works on plain vectors.

#include <algorithm>
#include <set>
#include <vector>

#include "locaos/instance.hpp"
#include "locaos/operators.hpp"
#include "locaos/rng.hpp"

namespace locaos::testing {

using Routes = std::vector<std::vector<int>>;

// Random feasible plan: customers shuffled and dropped into random routes.
inline RoutePlan random_plan(const Instance& inst, Rng& rng, int max_routes) {
    std::vector<int> order = inst.customers();
    shuffle_range(order.begin(), order.end(), rng);
    const int nroutes = 1 + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(max_routes)));
    Routes routes(static_cast<std::size_t>(nroutes));
    std::vector<int> load(routes.size(), 0);
    for (int c : order) {
        std::vector<std::size_t> fits;
        for (std::size_t r = 0; r < routes.size(); ++r) {
            if (load[r] + inst.demand(c) <= inst.capacity()) fits.push_back(r);
        }
        std::size_t r;
        if (fits.empty()) {
            routes.emplace_back();
            load.push_back(0);
            r = routes.size() - 1;
        } else {
            r = fits[uniform_index(rng, fits.size())];
        }
        routes[r].push_back(c);
        load[r] += inst.demand(c);
    }
    return make_plan(std::move(routes));
}

// Small random instance with 1..max_customers customers and tight-ish capacity.
inline Instance random_small_instance(Rng& rng, int max_customers, std::uint64_t seed) {
    const int n = 1 + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(max_customers)));
    const int cap = 9 + static_cast<int>(uniform_index(rng, 12));
    return generate_uniform_instance(n, cap, 1, 9, seed);
}

// Route orientation and route order do not change a plan's cost; this form
// identifies plans modulo both.
inline Routes canonical(const Routes& routes) {
    Routes out;
    for (auto r : routes) {
        if (r.empty()) continue;
        if (r.front() > r.back()) std::reverse(r.begin(), r.end());
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<int> cat(std::initializer_list<std::vector<int>> parts) {
    std::vector<int> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

inline std::vector<int> slice(const std::vector<int>& v, int b, int e) {
    return std::vector<int>(v.begin() + b, v.begin() + e);
}

inline std::vector<int> reversed(std::vector<int> v) {
    std::reverse(v.begin(), v.end());
    return v;
}

// Every rearrangement the operator describes, written directly with vector
// edits; includes infeasible and identity results (callers filter).
inline std::vector<Routes> brute_force_neighbors(const Routes& plan, OperatorId op) {
    std::vector<Routes> out;
    const OperatorSpec& spec = operator_spec(op);
    const int nr = static_cast<int>(plan.size());
    auto emit = [&](std::initializer_list<std::pair<int, std::vector<int>>> changes) {
        Routes next = plan;
        for (const auto& [r, seq] : changes) next[r] = seq;
        out.push_back(std::move(next));
    };
    for (int a = 0; a < nr; ++a) {
        const auto& A = plan[a];
        const int la = static_cast<int>(A.size());
        switch (spec.kind) {
            case OperatorKind::two_opt:
                for (int i = 0; i < la; ++i) {
                    for (int j = i + 1; j < la; ++j) {
                        auto r = A;
                        std::reverse(r.begin() + i, r.begin() + j + 1);
                        emit({{a, r}});
                    }
                }
                break;
            case OperatorKind::intra_exchange:
                for (int i = 0; i < la; ++i) {
                    for (int j = i + 1; j < la; ++j) {
                        auto r = A;
                        std::swap(r[i], r[j]);
                        emit({{a, r}});
                    }
                }
                break;
            case OperatorKind::intra_relocate:
                for (int i = 0; i < la; ++i) {
                    for (int j = 0; j < la; ++j) {
                        if (i == j) continue;
                        auto r = A;
                        const int c = r[i];
                        r.erase(r.begin() + i);
                        r.insert(r.begin() + j, c);
                        emit({{a, r}});
                    }
                }
                break;
            default:
                break;
        }
        for (int b = 0; b < nr; ++b) {
            if (b == a) continue;
            const auto& B = plan[b];
            const int lb = static_cast<int>(B.size());
            switch (spec.kind) {
                case OperatorKind::cross:
                    if (a > b) break;
                    for (int i = 0; i <= la; ++i) {
                        for (int j = 0; j <= lb; ++j) {
                            emit({{a, cat({slice(A, 0, i), slice(B, j, lb)})},
                                  {b, cat({slice(B, 0, j), slice(A, i, la)})}});
                            emit({{a, cat({slice(A, 0, i), reversed(slice(B, 0, j))})},
                                  {b, cat({reversed(slice(A, i, la)), slice(B, j, lb)})}});
                        }
                    }
                    break;
                case OperatorKind::inter_exchange:
                case OperatorKind::asym_exchange: {
                    if (a > b) break;
                    const int sa = spec.length_a;
                    const int sb = spec.length_b;
                    for (int i = 0; i + sa <= la; ++i) {
                        for (int j = 0; j + sb <= lb; ++j) {
                            emit({{a, cat({slice(A, 0, i), slice(B, j, j + sb), slice(A, i + sa, la)})},
                                  {b, cat({slice(B, 0, j), slice(A, i, i + sa), slice(B, j + sb, lb)})}});
                        }
                    }
                    break;
                }
                case OperatorKind::inter_relocate: {
                    const int s = spec.length_a;
                    for (int i = 0; i + s <= la; ++i) {
                        for (int j = 0; j <= lb; ++j) {
                            auto src = A;
                            src.erase(src.begin() + i, src.begin() + i + s);
                            auto dst = B;
                            dst.insert(dst.begin() + j, A.begin() + i, A.begin() + i + s);
                            emit({{a, src}, {b, dst}});
                        }
                    }
                    break;
                }
                case OperatorKind::cyclic_exchange:
                    for (int c = 0; c < nr; ++c) {
                        if (c == a || c == b) continue;
                        const auto& C = plan[c];
                        for (int i = 0; i < la; ++i) {
                            for (int j = 0; j < lb; ++j) {
                                for (int k = 0; k < static_cast<int>(C.size()); ++k) {
                                    auto na = A;
                                    auto nb = B;
                                    auto nc = C;
                                    nb[j] = A[i];
                                    nc[k] = B[j];
                                    na[i] = C[k];
                                    emit({{a, na}, {b, nb}, {c, nc}});
                                }
                            }
                        }
                    }
                    break;
                default:
                    break;
            }
        }
    }
    return out;
}

// Feasible neighbors with their full-evaluation distance.
inline std::vector<std::pair<Routes, double>> feasible_neighbors(const Instance& inst, const RoutePlan& plan,
                                                                 OperatorId op) {
    std::vector<std::pair<Routes, double>> out;
    for (auto& n : brute_force_neighbors(plan.routes, op)) {
        RoutePlan candidate = make_plan(n);
        if (is_feasible(inst, candidate)) out.emplace_back(n, evaluate(inst, candidate));
    }
    return out;
}

inline bool oracle_trapped(const Instance& inst, const RoutePlan& plan, OperatorId op) {
    const double current = evaluate(inst, plan);
    for (const auto& [routes, dist] : feasible_neighbors(inst, plan, op)) {
        if (dist < current - kImprovementEpsilon) return false;
    }
    return true;
}

}  // namespace locaos::testing

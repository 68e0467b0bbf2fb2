#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "locaos/instance.hpp"
#include "locaos/operators.hpp"

namespace locaos {

// Entry k is +1 when operator k is trapped on the solution, -1 otherwise.
using TrapVector = std::vector<int>;

struct TrapMatrix {
    int num_ops = 0;
    std::vector<TrapVector> rows;

    std::size_t num_rows() const { return rows.size(); }
    bool operator==(const TrapMatrix&) const = default;
};

// Dense symmetric K x K matrix of local optima correlations.
class LocMatrix {
public:
    LocMatrix() = default;
    explicit LocMatrix(int size, double fill = 0.0)
        : size_(size), values_(static_cast<std::size_t>(size) * size, fill) {}
    LocMatrix(int size, std::vector<double> values);

    int size() const { return size_; }
    double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * size_ + j]; }
    double& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * size_ + j]; }
    std::span<const double> row(int i) const {
        return {values_.data() + static_cast<std::size_t>(i) * size_, static_cast<std::size_t>(size_)};
    }
    const std::vector<double>& values() const { return values_; }

    bool operator==(const LocMatrix&) const = default;

private:
    int size_ = 0;
    std::vector<double> values_;
};

TrapVector trap_vector(const Instance& instance, const RoutePlan& plan, const std::vector<OperatorId>& ops);

// Mean product of trap entries over the sampled solutions, for every operator pair.
LocMatrix loc_matrix(const TrapMatrix& traps);

LocMatrix mean_loc_matrix(const std::vector<LocMatrix>& matrices);

struct SamplingOptions {
    int max_ite = 40000;
    // Stop early once this many rows are recorded (0: run the full budget).
    int max_rows = 0;
    int perturbation_strength = 5;
};

struct SamplingResult {
    TrapMatrix traps;
    int steps = 0;
    int perturbations = 0;
};

// Walks from a random initial solution. Each step records the trap vector of
// the current solution (unless every operator is trapped) and moves to a
// neighbor drawn uniformly from the union of all operators' improving moves.
// When every operator is trapped the solution is perturbed instead.
SamplingResult sample_trap_matrix(const Instance& instance, const std::vector<OperatorId>& ops,
                                  const SamplingOptions& options, std::uint64_t seed);
SamplingResult sample_trap_matrix(const Instance& instance, const std::vector<OperatorId>& ops, int max_ite,
                                  std::uint64_t seed);

// Kendall tau-b; empty when either sequence is constant.
std::optional<double> kendall_tau_b(std::span<const double> a, std::span<const double> b);

// Mean over operators of the tau-b between corresponding rows. A row pair with
// undefined tau contributes 0.
double kendall_similarity(const LocMatrix& a, const LocMatrix& b);

// CSV: optional '#' comment lines, a header of operator ids, then the rows.
// Values use 17 significant digits so reading back is exact.
void write_loc_csv(std::ostream& out, const LocMatrix& loc, const std::vector<OperatorId>& ops,
                   const std::vector<std::string>& comments = {});

struct LocFile {
    LocMatrix matrix;
    std::vector<OperatorId> ops;
};

LocFile read_loc_csv(std::istream& in);

void write_trap_csv(std::ostream& out, const TrapMatrix& traps, const std::vector<OperatorId>& ops,
                    const std::vector<std::string>& comments = {});

}  // namespace locaos

#include "locaos/loc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "locaos/perturb.hpp"
#include "locaos/text.hpp"

namespace locaos {

LocMatrix::LocMatrix(int size, std::vector<double> values) : size_(size), values_(std::move(values)) {
    if (size < 0 || values_.size() != static_cast<std::size_t>(size) * size) {
        throw std::invalid_argument("LocMatrix: value count does not match size");
    }
}

TrapVector trap_vector(const Instance& instance, const RoutePlan& plan, const std::vector<OperatorId>& ops) {
    const PlanContext ctx(instance, plan);
    TrapVector v;
    v.reserve(ops.size());
    for (OperatorId op : ops) v.push_back(has_improving_move(ctx, op) ? -1 : 1);
    return v;
}

LocMatrix loc_matrix(const TrapMatrix& traps) {
    if (traps.rows.empty()) throw std::invalid_argument("loc_matrix: trap matrix has no rows");
    const int k = traps.num_ops;
    // Integer accumulation keeps the sums exact; the single division then
    // gives exactly 1 on the diagonal and identical (i, j) / (j, i) entries.
    std::vector<long long> sums(static_cast<std::size_t>(k) * k, 0);
    for (const TrapVector& row : traps.rows) {
        if (static_cast<int>(row.size()) != k) throw std::invalid_argument("loc_matrix: ragged trap matrix");
        for (int i = 0; i < k; ++i) {
            for (int j = i; j < k; ++j) sums[static_cast<std::size_t>(i) * k + j] += row[i] * row[j];
        }
    }
    const double n = static_cast<double>(traps.rows.size());
    LocMatrix loc(k);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            const double v = static_cast<double>(sums[static_cast<std::size_t>(i) * k + j]) / n;
            loc(i, j) = v;
            loc(j, i) = v;
        }
    }
    return loc;
}

LocMatrix mean_loc_matrix(const std::vector<LocMatrix>& matrices) {
    if (matrices.empty()) throw std::invalid_argument("mean_loc_matrix: no matrices");
    const int k = matrices.front().size();
    LocMatrix mean(k);
    for (const LocMatrix& m : matrices) {
        if (m.size() != k) throw std::invalid_argument("mean_loc_matrix: dimension mismatch");
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) mean(i, j) += m(i, j);
        }
    }
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) mean(i, j) /= static_cast<double>(matrices.size());
    }
    return mean;
}

SamplingResult sample_trap_matrix(const Instance& instance, const std::vector<OperatorId>& ops,
                                  const SamplingOptions& options, std::uint64_t seed) {
    if (options.max_ite < 1) throw std::invalid_argument("sample_trap_matrix: max_ite must be positive");
    SamplingResult result;
    result.traps.num_ops = static_cast<int>(ops.size());
    Rng step_rng = make_stream(seed, "sample");
    Rng perturb_rng = make_stream(seed, "perturb");
    RoutePlan current = initial_solution(instance, default_route_count(instance), seed);

    std::vector<ScoredMove> scored;
    std::vector<Move> improving;
    for (int ite = 0; ite < options.max_ite; ++ite) {
        ++result.steps;
        const PlanContext ctx(instance, current);
        TrapVector row;
        row.reserve(ops.size());
        improving.clear();
        for (OperatorId op : ops) {
            scored_moves(ctx, op, scored);
            const std::size_t before = improving.size();
            for (const ScoredMove& s : scored) {
                if (s.delta < -kImprovementEpsilon) improving.push_back(s.move);
            }
            row.push_back(improving.size() == before ? 1 : -1);
        }
        if (improving.empty()) {
            current = perturb(instance, current, options.perturbation_strength, perturb_rng);
            ++result.perturbations;
            continue;
        }
        result.traps.rows.push_back(std::move(row));
        current = apply_move(current, improving[uniform_index(step_rng, improving.size())]);
        if (options.max_rows > 0 && static_cast<int>(result.traps.rows.size()) >= options.max_rows) break;
    }
    return result;
}

SamplingResult sample_trap_matrix(const Instance& instance, const std::vector<OperatorId>& ops, int max_ite,
                                  std::uint64_t seed) {
    SamplingOptions options;
    options.max_ite = max_ite;
    return sample_trap_matrix(instance, ops, options, seed);
}

std::optional<double> kendall_tau_b(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("kendall_tau_b: length mismatch");
    long long concordant = 0;
    long long discordant = 0;
    long long tied_a = 0;
    long long tied_b = 0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double da = a[i] - a[j];
            const double db = b[i] - b[j];
            if (da == 0.0 || db == 0.0) {
                if (da == 0.0) ++tied_a;
                if (db == 0.0) ++tied_b;
                continue;
            }
            if ((da > 0) == (db > 0)) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const long long pairs = static_cast<long long>(n * (n - 1) / 2);
    const double denom = std::sqrt(static_cast<double>(pairs - tied_a) * static_cast<double>(pairs - tied_b));
    if (denom == 0.0) return std::nullopt;
    return static_cast<double>(concordant - discordant) / denom;
}

double kendall_similarity(const LocMatrix& a, const LocMatrix& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("kendall_similarity: dimension mismatch (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
    }
    if (a.size() == 0) throw std::invalid_argument("kendall_similarity: empty matrices");
    double total = 0.0;
    for (int i = 0; i < a.size(); ++i) total += kendall_tau_b(a.row(i), b.row(i)).value_or(0.0);
    return total / a.size();
}

namespace {

void write_comments(std::ostream& out, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << "\n";
}

void write_header(std::ostream& out, const std::vector<OperatorId>& ops) {
    for (std::size_t i = 0; i < ops.size(); ++i) out << (i ? "," : "") << ops[i].value();
    out << "\n";
}

}  // namespace

void write_loc_csv(std::ostream& out, const LocMatrix& loc, const std::vector<OperatorId>& ops,
                   const std::vector<std::string>& comments) {
    if (static_cast<int>(ops.size()) != loc.size()) {
        throw std::invalid_argument("write_loc_csv: operator list does not match matrix size");
    }
    write_comments(out, comments);
    write_header(out, ops);
    for (int i = 0; i < loc.size(); ++i) {
        for (int j = 0; j < loc.size(); ++j) out << (j ? "," : "") << format_double(loc(i, j));
        out << "\n";
    }
}

LocFile read_loc_csv(std::istream& in) {
    std::string line;
    int number = 0;
    std::vector<OperatorId> ops;
    std::vector<double> values;
    int rows = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto cells = split(t, ',');
        try {
            if (ops.empty()) {
                for (const auto& c : cells) ops.emplace_back(std::stoi(trim(c)));
                continue;
            }
            if (cells.size() != ops.size()) {
                throw ParseError("expected " + std::to_string(ops.size()) + " values", number);
            }
            for (const auto& c : cells) {
                std::size_t used = 0;
                const std::string cell = trim(c);
                const double v = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
                values.push_back(v);
            }
            ++rows;
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad LOC cell: ") + e.what(), number);
        }
    }
    if (ops.empty()) throw ParseError("LOC file has no header");
    if (rows != static_cast<int>(ops.size())) {
        throw ParseError("LOC file has " + std::to_string(rows) + " rows for " + std::to_string(ops.size()) +
                         " operators");
    }
    const int k = static_cast<int>(ops.size());
    return {LocMatrix(k, std::move(values)), std::move(ops)};
}

void write_trap_csv(std::ostream& out, const TrapMatrix& traps, const std::vector<OperatorId>& ops,
                    const std::vector<std::string>& comments) {
    write_comments(out, comments);
    write_header(out, ops);
    for (const TrapVector& row : traps.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j];
        out << "\n";
    }
}

}  // namespace locaos

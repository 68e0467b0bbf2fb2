#pragma once

#include <span>
#include <vector>

namespace locaos {

struct Moments {
    int count = 0;
    double mean = 0.0;
    double variance = 0.0;  // sample variance (n - 1); 0 for fewer than two values
};

Moments moments(std::span<const double> values);

struct WilcoxonResult {
    int n = 0;             // pairs with a nonzero difference
    double w_plus = 0.0;   // rank sum of positive differences a - b
    double w_minus = 0.0;
    double p_value = 1.0;  // two-sided
    bool exact = false;
    bool degenerate = false;  // every difference was zero
};

// Paired two-sided signed-rank test on a[i] - b[i]. Zero differences are
// dropped and tied magnitudes share their average rank. Up to 25 nonzero
// pairs use the exact null distribution, beyond that the normal approximation
// with tie and continuity corrections.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b, bool force_normal);

inline constexpr int kWilcoxonExactLimit = 25;

// Average ranks (1-based) of |d| for the nonzero entries of d, in input order.
std::vector<double> signed_rank_magnitudes(std::span<const double> nonzero_diffs);

}  // namespace locaos

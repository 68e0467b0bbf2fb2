#include "locaos/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace locaos {

Moments moments(std::span<const double> values) {
    Moments m;
    m.count = static_cast<int>(values.size());
    if (values.empty()) return m;
    m.mean = std::accumulate(values.begin(), values.end(), 0.0) / m.count;
    if (m.count > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - m.mean) * (v - m.mean);
        m.variance = ss / (m.count - 1);
    }
    return m;
}

std::vector<double> signed_rank_magnitudes(std::span<const double> nonzero_diffs) {
    const std::size_t n = nonzero_diffs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(nonzero_diffs[x]) < std::abs(nonzero_diffs[y]);
    });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(nonzero_diffs[order[j + 1]]) == std::abs(nonzero_diffs[order[i]])) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

namespace {

// Null distribution of W+ by counting sign assignments over doubled
// (integer) ranks; twice the smaller tail.
double exact_two_sided(const std::vector<double>& ranks, double w_plus) {
    std::vector<int> doubled;
    int total = 0;
    for (double r : ranks) {
        doubled.push_back(static_cast<int>(std::lround(2 * r)));
        total += doubled.back();
    }
    std::vector<double> ways(static_cast<std::size_t>(total) + 1, 0.0);
    ways[0] = 1.0;
    int reach = 0;
    for (int r : doubled) {
        for (int s = reach; s >= 0; --s) {
            if (ways[s] != 0.0) ways[s + r] += ways[s];
        }
        reach += r;
    }
    const double all = std::ldexp(1.0, static_cast<int>(ranks.size()));
    const long w = std::lround(2 * w_plus);
    double lower = 0.0;
    double upper = 0.0;
    for (int s = 0; s <= total; ++s) {
        if (s <= w) lower += ways[s];
        if (s >= w) upper += ways[s];
    }
    return std::min(1.0, 2.0 * std::min(lower, upper) / all);
}

double normal_two_sided(const std::vector<double>& ranks, double w_plus) {
    const double n = static_cast<double>(ranks.size());
    const double mean = n * (n + 1) / 4.0;
    std::map<double, int> ties;
    for (double r : ranks) ++ties[r];
    double tie_term = 0.0;
    for (const auto& [_, t] : ties) tie_term += static_cast<double>(t) * t * t - t;
    const double var = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) return 1.0;
    const double z = std::max(0.0, std::abs(w_plus - mean) - 0.5) / std::sqrt(var);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b, bool force_normal) {
    if (a.size() != b.size()) throw std::invalid_argument("wilcoxon: samples differ in length");
    if (a.empty()) throw std::invalid_argument("wilcoxon: no pairs");
    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    WilcoxonResult r;
    r.n = static_cast<int>(diffs.size());
    if (diffs.empty()) {
        r.degenerate = true;
        r.p_value = 1.0;
        return r;
    }
    const std::vector<double> ranks = signed_rank_magnitudes(diffs);
    for (std::size_t i = 0; i < diffs.size(); ++i) (diffs[i] > 0 ? r.w_plus : r.w_minus) += ranks[i];
    r.exact = !force_normal && r.n <= kWilcoxonExactLimit;
    r.p_value = r.exact ? exact_two_sided(ranks, r.w_plus) : normal_two_sided(ranks, r.w_plus);
    return r;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    return wilcoxon_signed_rank(a, b, false);
}

}  // namespace locaos

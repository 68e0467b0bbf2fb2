#include <gtest/gtest.h>

#include <numeric>

#include "locaos/aos_loc.hpp"
#include "locaos/rng.hpp"

namespace locaos {
namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TrappedSet make_set(int k, std::initializer_list<int> members) {
    TrappedSet s(k);
    for (int m : members) s.insert(m);
    return s;
}

// Random symmetric LOC-like matrix with unit diagonal.
LocMatrix random_loc(Rng& rng, int k) {
    LocMatrix m(k);
    for (int i = 0; i < k; ++i) {
        m(i, i) = 1.0;
        for (int j = i + 1; j < k; ++j) m(i, j) = m(j, i) = 2 * uniform_unit(rng) - 1;
    }
    return m;
}

std::vector<double> random_probs(Rng& rng, int k) {
    std::vector<double> p(k);
    for (double& v : p) v = uniform_unit(rng) + 1e-3;
    const double s = sum(p);
    for (double& v : p) v /= s;
    return p;
}

TEST(TrappedSetTest, UpdateRules) {
    TrappedSet lo = make_set(6, {2, 5});
    update_trapped_set(lo, 3, 1.7);
    EXPECT_TRUE(lo.empty());
    update_trapped_set(lo, 3, 0.0);
    EXPECT_EQ(lo.members(), std::vector<int>{3});
    update_trapped_set(lo, 3, 0.0);
    EXPECT_EQ(lo.members(), std::vector<int>{3});
    EXPECT_EQ(lo.size(), 1);
    EXPECT_THROW(lo.insert(6), ContractViolation);
}

TEST(ModulateTest, EmptySetIsIdentity) {
    const std::vector<double> p{0.2, 0.3, 0.5};
    EXPECT_EQ(modulate(p, TrappedSet(3), LocMatrix(3, 0.7)), p);
}

TEST(ModulateTest, HandFixture) {
    const std::vector<double> p(3, 1.0 / 3);
    LocMatrix loc(3);
    loc(0, 0) = 1.0;
    loc(0, 1) = 0.5;
    loc(0, 2) = -0.5;
    const auto out = modulate(p, make_set(3, {0}), loc);
    EXPECT_NEAR(out[0], 0.0, 1e-12);
    EXPECT_NEAR(out[1], 0.25, 1e-12);
    EXPECT_NEAR(out[2], 0.75, 1e-12);
}

TEST(ModulateTest, IdentityCorrelationOnlySuppressesTheTrappedOperator) {
    LocMatrix loc(4);
    for (int i = 0; i < 4; ++i) loc(i, i) = 1.0;
    const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
    const auto out = modulate(p, make_set(4, {0}), loc);
    EXPECT_EQ(out[0], 0.0);
    EXPECT_NEAR(out[2] / out[1], 1.5, 1e-12);
    EXPECT_NEAR(out[3] / out[1], 2.0, 1e-12);
}

TEST(ModulateTest, FallbackIsUniformOverOpenOperators) {
    const LocMatrix loc(3, 1.0);
    const std::vector<double> p{0.2, 0.3, 0.5};
    const auto out = modulate(p, make_set(3, {1}), loc);
    EXPECT_EQ(out, (std::vector<double>{0.5, 0.0, 0.5}));
    const auto all = modulate(p, make_set(3, {0, 1, 2}), loc);
    for (double v : all) EXPECT_DOUBLE_EQ(v, 1.0 / 3);
}

TEST(ModulateTest, FactorsAreClamped) {
    LocMatrix loc(2);
    loc(0, 0) = 1.0 + 1e-9;
    loc(0, 1) = -1.5;
    const auto out = modulate(std::vector<double>{0.5, 0.5}, make_set(2, {0}), loc);
    EXPECT_EQ(out[0], 0.0);
    EXPECT_EQ(out[1], 1.0);
}

TEST(ModulateTest, RandomInputsGiveProbabilityVectors) {
    Rng rng = make_stream(1, "test");
    int fallbacks = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const int k = 2 + static_cast<int>(uniform_index(rng, 16));
        const LocMatrix loc = random_loc(rng, k);
        const auto p = random_probs(rng, k);
        TrappedSet lo(k);
        for (int i = 0; i < k; ++i) {
            if (uniform_index(rng, 3) == 0) lo.insert(i);
        }
        const auto out = modulate(p, lo, loc);
        ASSERT_NEAR(sum(out), 1.0, 1e-9);
        for (double v : out) ASSERT_GE(v, 0.0);
        double raw = 0;
        for (int j = 0; j < k; ++j) {
            double f = p[j];
            for (int i : lo.members()) f *= 1 - loc(i, j);
            raw += f;
        }
        if (raw <= 1e-15) {
            ++fallbacks;
            continue;
        }
        for (int i : lo.members()) ASSERT_EQ(out[i], 0.0);
    }
    EXPECT_LT(fallbacks, 10000);
}

TEST(ModulateTest, HigherCorrelationNeverRaisesProbability) {
    Rng rng = make_stream(2, "test");
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 5;
        const LocMatrix loc = random_loc(rng, k);
        const std::vector<double> p(k, 0.2);
        const int i = static_cast<int>(uniform_index(rng, k));
        const auto out = modulate(p, make_set(k, {i}), loc);
        for (int a = 0; a < k; ++a) {
            for (int b = 0; b < k; ++b) {
                if (loc(i, a) > loc(i, b)) EXPECT_LE(out[a], out[b]);
            }
        }
    }
}

TEST(ModulateTest, OrderOfTrappedOperatorsDoesNotMatter) {
    Rng rng = make_stream(3, "test");
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 6;
        const LocMatrix loc = random_loc(rng, k);
        const auto p = random_probs(rng, k);
        const int a = static_cast<int>(uniform_index(rng, k));
        const int b = static_cast<int>(uniform_index(rng, k));
        const auto ab = modulate(p, make_set(k, {a, b}), loc);
        const auto ba = modulate(p, make_set(k, {b, a}), loc);
        // Sequential single-operator modulation composes to the same vector.
        const auto seq = modulate(modulate(p, make_set(k, {b}), loc), make_set(k, {a}), loc);
        for (int j = 0; j < k; ++j) {
            EXPECT_NEAR(ab[j], ba[j], 1e-12);
            if (a != b) EXPECT_NEAR(ab[j], seq[j], 1e-12);
        }
    }
}

TEST(ModulateTest, DimensionMismatchIsRejected) {
    EXPECT_THROW(modulate(std::vector<double>{0.5, 0.5}, TrappedSet(2), LocMatrix(3)), ContractViolation);
}

}  // namespace
}  // namespace locaos

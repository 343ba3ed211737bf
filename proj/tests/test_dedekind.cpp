#include "drc/dedekind.hpp"
#include "drc/dist.hpp"
#include "drc/random.hpp"

#include <gtest/gtest.h>

using namespace drc;

namespace {

struct Instance {
    long alpha, beta;
    Rational a, b;
};

std::vector<Instance> random_instances(std::uint64_t seed, int n) {
    Rng rng(seed);
    std::vector<Instance> out;
    while (static_cast<int>(out.size()) < n) {
        long beta = rng.uniform(1, 12), alpha = rng.uniform(-12, 12);
        if (std::gcd(alpha, beta) != 1) continue;
        out.push_back({alpha, beta, rat(rng.uniform(-11, 11), 12), rat(rng.uniform(-9, 9), 10)});
    }
    return out;
}

}  // namespace

TEST(Dedekind, HelperExamples) {
    EXPECT_EQ(helper_R(0, 1, 3), rat(1, 3));
    EXPECT_EQ(helper_R(rat(1, 11), 0, 5), rat(1, 55));
    EXPECT_EQ(helper_R(rat(1, 2), 2, 5), rat(1, 2));
    EXPECT_EQ(helper_Q(0, 0, 1, rat(1, 2)), rat(1, 2));
    EXPECT_EQ(helper_Q(rat(1, 11), 0, 0, rat(1, 5)), rat(1, 55));
    EXPECT_EQ(helper_Q(0, rat(1, 3), 0, 2), rat(1, 3));
}

TEST(Dedekind, SumExamples) {
    EXPECT_EQ(dedekind_C(1, 2, 0, 0), 0);
    EXPECT_EQ(dedekind_C(1, 3, 0, 0), rat(1, 18));
    for (auto [a, b] : std::vector<std::pair<Rational, Rational>>{{rat(1, 3), rat(1, 5)}, {rat(1, 2), 0}, {0, rat(2, 7)}})
        EXPECT_EQ(dedekind_C(1, 1, a, b), bernoulli(1, a) * bernoulli(1, b + a));
    EXPECT_THROW(dedekind_C(1, rat(5, 2), 0, 0), NonIntegerBeta);
    EXPECT_THROW(dedekind_C(1, -3, 0, 0), NonIntegerBeta);
}

// Shifting alpha by beta moves every Q_l by a + l, so the sum returns with b replaced by b + a.
TEST(Dedekind, AlphaShiftByBeta) {
    for (const auto& x : random_instances(1, 200)) {
        EXPECT_EQ(dedekind_C(x.alpha + x.beta, x.beta, x.a, x.b), dedekind_C(x.alpha, x.beta, x.a, x.b + x.a));
        Rational ai = floor_q(x.a);
        EXPECT_EQ(dedekind_C(x.alpha + x.beta, x.beta, ai, x.b), dedekind_C(x.alpha, x.beta, ai, x.b));
    }
}

// sum_i B1(y + i/m) = B1(m y) folded into the second factor.
TEST(Dedekind, DistributionInSecondArgument) {
    Rng rng(2);
    for (const auto& x : random_instances(2, 100)) {
        long m = rng.uniform(2, 5);
        Rational s = 0;
        for (long i = 0; i < m; ++i) s += dedekind_C(x.alpha, x.beta, x.a, x.b + rat(i, m));
        EXPECT_EQ(s, dedekind_C(m * x.alpha, x.beta, x.a, Rational(m) * x.b));
    }
}

TEST(Dedekind, LevelCollapse) {
    Rng rng(3);
    int checked = 0;
    for (const auto& x : random_instances(3, 300)) {
        std::vector<long> divs;
        for (long D = 1; D <= x.beta; ++D)
            if (x.beta % D == 0 && std::gcd(x.alpha, D) == 1) divs.push_back(D);
        long D = rng.pick(divs);
        Rational Dq(D), r = rat(x.alpha, x.beta), lhs = 0, rhs = 0;
        for (long l = 0; l < x.beta; ++l) lhs += bernoulli(1, Dq * (x.a + l) / x.beta) * bernoulli(1, x.b + r * (x.a + l));
        for (long l = 0; l < x.beta / D; ++l) rhs += bernoulli(1, Dq * (x.a + l) / x.beta) * bernoulli(1, Dq * x.b + Dq * r * (x.a + l));
        EXPECT_EQ(lhs, rhs);
        EXPECT_EQ(rhs, dedekind_C(x.alpha, rat(x.beta, D), x.a, Dq * x.b));
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(Cusp, Normalization) {
    Cusp c = Cusp::finite(-2, -10);
    EXPECT_FALSE(c.infinite);
    EXPECT_EQ(c.alpha, 1);
    EXPECT_EQ(c.beta, 5);
    EXPECT_TRUE(Cusp::finite(3, 0).infinite);
    Cusp g = Cusp::of(Mat2{1, 0, 5, 1});
    EXPECT_EQ(g.alpha, 1);
    EXPECT_EQ(g.beta, 5);
}

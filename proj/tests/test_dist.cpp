#include "drc/cases.hpp"
#include "drc/random.hpp"

#include <gtest/gtest.h>

using namespace drc;

namespace {

TestFunction coset(Rational a, Rational b, const Lattice& L = Lattice()) { return TestFunction::coset({a, b}, L); }

const std::vector<std::string> kRank1{"b0", "b1", "b2", "b3", "b4", "delta0", "b1frac"};
const std::vector<std::string> kRank2{"b2b0", "b1b1", "pi_c", "psi", "tensor:delta0,b1", "tensor:b3,b1", "tensor:b2,b2", "tensor:b0,b3"};

}  // namespace

TEST(Bernoulli, Examples) {
    EXPECT_EQ(bernoulli(1, 0), 0);
    EXPECT_EQ(bernoulli(1, rat(1, 3)), rat(-1, 6));
    EXPECT_EQ(bernoulli(2, rat(1, 2)), rat(-1, 12));
    EXPECT_EQ(bernoulli(2, rat(5, 2)), rat(-1, 12));
    EXPECT_EQ(b1_frac(0), rat(-1, 2));
    EXPECT_EQ(b1_frac(rat(1, 2)), 0);
    EXPECT_EQ(b1_frac(rat(7, 3)), rat(-1, 6));
    EXPECT_THROW(bernoulli_dist(kMaxBernoulliDegree + 1), DegreeTooLarge);
}

TEST(Tensor, Examples) {
    EXPECT_EQ(detail::b1b1().sigma(rat(1, 3), rat(1, 3)), rat(1, 36));
    EXPECT_EQ(detail::b2b0().sigma(rat(1, 2), rat(2, 7)), rat(-1, 12));
    Dist2 d0b1 = make_tensor(delta0_dist(), bernoulli_dist(1));
    EXPECT_EQ(d0b1.sigma(rat(1, 3), rat(1, 5)), 0);
}

TEST(PiAndPsi, BaseFunctionExamples) {
    EXPECT_EQ(sigma_pi_c(7, 0, rat(1, 3)), rat(1, 2));
    EXPECT_EQ(sigma_pi_c(7, rat(1, 2), rat(1, 2)), 0);
    EXPECT_EQ(sigma_pi_c(7, rat(1, 3), 1), rat(1, 2));
    EXPECT_EQ(sigma_psi(7, rat(1, 3), rat(1, 5)), rat(1, 10));
    EXPECT_EQ(sigma_psi(7, 0, rat(2, 3)), rat(7, 2));
    EXPECT_EQ(sigma_psi(7, rat(1, 3), 1), rat(1, 2));
    EXPECT_THROW(sigma_pi_c(6, 0, rat(1, 3)), BadSmoothingInteger);
}

TEST(Eval, Examples) {
    EXPECT_EQ(eval(detail::b2b0(), coset(rat(1, 2), 0, Lattice::scalar(2))), rat(-1, 48));
    EXPECT_EQ(eval1(bernoulli_dist(1), rat(1, 3)), rat(-1, 6));
    EXPECT_EQ(eval(make_tensor(delta0_dist(), bernoulli_dist(1)), coset(0, rat(1, 3))), rat(-1, 6));
}

TEST(Eval, MatchesEnumeration) {
    Rng rng(21);
    TestFunctionShape sh;
    sh.primes = {2, 3, 5};
    sh.max_exponent = 1;
    for (const auto& name : kRank2) {
        Dist2 mu = *dist_by_name(name, 7).rank2;
        for (int t = 0; t < 15; ++t) {
            TestFunction f = random_test_function(rng, sh);
            EXPECT_EQ(eval(mu, f), eval_enumerated(mu, f)) << name;
        }
    }
}

TEST(Eval, RefinementInvariance) {
    Rng rng(22);
    for (const auto& name : kRank2) {
        Dist2 mu = *dist_by_name(name, 7).rank2;
        for (int t = 0; t < 10; ++t) {
            TestFunction f = random_test_function(rng, {});
            Lattice finer(Mat2{Rational(rng.uniform(1, 4)), Rational(rng.uniform(0, 3)), 0, Rational(rng.uniform(1, 4))} * f.lattice().basis());
            Rational fine = 0;
            for (const auto& term : f.refine(finer)) fine += Rational(term.coeff) * eval(mu, TestFunction::coset(term.coset.v, finer));
            EXPECT_EQ(eval(mu, f), fine) << name;
        }
    }
}

TEST(Eval, TorusEquivariance) {
    Rng rng(23);
    const std::vector<Rational> units{2, rat(1, 3), 5, rat(1, 11), 13};
    for (const auto& name : kRank2) {
        Dist2 mu = *dist_by_name(name, 7).rank2;
        for (int t = 0; t < 10; ++t) {
            TestFunction f = random_test_function(rng, {});
            Rational a = eval(mu, f);
            long s = rng.pick(std::vector<long>{2, 3, 5, 13});
            EXPECT_EQ(eval(mu, act_right(f, Mat2::D(s))), pow_q(Rational(s), mu.weight.total()) * a) << name;
            Rational u = rng.pick(units), v = rng.pick(units);
            EXPECT_EQ(eval(mu, act_right(f, Mat2::diag(u, v))), pow_q(u, mu.weight.j) * pow_q(v, mu.weight.k) * a) << name;
        }
    }
}

TEST(Distribution, RelationExamples) {
    EXPECT_TRUE(validate_distribution_relation(bernoulli_dist(2), 2, Rational(0)));
    EXPECT_TRUE(validate_distribution_relation(delta0_dist(), 3, rat(1, 3)));
    EXPECT_TRUE(validate_distribution_relation(pi_c_dist(7), 2, Vec2{rat(1, 3), rat(1, 5)}, {7}));
    EXPECT_THROW(validate_distribution_relation(pi_c_dist(7), 7, Vec2{rat(1, 3), rat(1, 5)}, {7}), BadScalingFactor);
}

TEST(Distribution, RelationsHoldForAllNamedDistributions) {
    Rng rng(24);
    for (long t : {2, 3, 5}) {
        for (const auto& name : kRank1) {
            Dist1 mu = *dist_by_name(name, 7).rank1;
            for (int i = 0; i < 50; ++i)
                EXPECT_TRUE(validate_distribution_relation(mu, t, rat(rng.uniform(-30, 30), rng.uniform(1, 12)))) << name;
        }
        for (const auto& name : kRank2) {
            NamedDist d = dist_by_name(name, 7);
            for (int i = 0; i < 50; ++i) {
                Vec2 v{rat(rng.uniform(-30, 30), rng.uniform(1, 12)), rat(rng.uniform(-30, 30), rng.uniform(1, 12))};
                if (d.rank2->away_from_zero_only && is_integer(v[0]) && is_integer(v[1])) continue;
                EXPECT_TRUE(validate_distribution_relation(*d.rank2, t, v, d.S)) << name << " t=" << t;
            }
        }
    }
}

TEST(Smoothing, Examples) {
    PrimeSet S{7};
    EXPECT_EQ(c_smooth_eval(detail::b1b1(), 7, S, coset(0, rat(2, 3))), 0);
    EXPECT_EQ(c_smooth_eval(detail::b2b0(), 7, S, coset(rat(1, 2), rat(1, 2))), -4);
    EXPECT_EQ(c_smooth_eval(make_tensor(delta0_dist(), bernoulli_dist(1)), 7, S, coset(0, rat(2, 3))), 8);
    EXPECT_THROW(c_smooth(detail::b2b0(), 1), BadSmoothingInteger);
}

TEST(PsiDelta, Examples) {
    CocycleParams P;
    TestFunction g = coset(rat(1, 3), rat(1, 2));
    Dist2 psi = psi_dist(7);
    EXPECT_EQ(psi_delta(7, P.delta, g, P.Nset()), 5 * eval(psi, g) - eval(psi, act_adelic(g, Mat2::LR(5), P.Nset())));
    Rational v = psi_delta(7, P.delta, coset(rat(1, 11), 0), P.Nset());
    EXPECT_TRUE(is_integer(Rational(12) * v));
    EXPECT_EQ(v, 5 * sigma_psi(7, rat(1, 11), 0) - sigma_psi(7, rat(1, 11), 0));
    EXPECT_THROW(psi_delta(7, {}, coset(rat(1, 3), 0), P.Nset()), DeltaNotAdmissible);
    EXPECT_THROW(psi_delta(7, {{1, 1}}, coset(rat(1, 3), 0), P.Nset()), DeltaNotAdmissible);
}

TEST(PsiDelta, TwelveTimesIsIntegral) {
    Rng rng(25);
    CocycleParams P;
    TestFunctionShape sh;
    sh.primes = {2, 3, 11, 13};
    for (int t = 0; t < 200; ++t) {
        Rational v = psi_delta(P.c, P.delta, random_test_function(rng, sh), P.Nset());
        EXPECT_TRUE(is_integer(Rational(12) * v)) << to_string(v);
    }
}

TEST(PsiDelta, BIntegralOffsetsHaveNoDeltaPart) {
    Rng rng(26);
    for (int t = 0; t < 50; ++t) {
        long d = rng.pick(std::vector<long>{2, 3, 4, 11});
        Rational a = rat(rng.uniform(1, d - 1), d), b = Rational(rng.uniform(-3, 3));
        EXPECT_EQ(sigma_psi(7, a, b), sigma_pi_c(7, a, b));
        EXPECT_TRUE(is_integer(Rational(12) * sigma_pi_c(7, a, b)));
    }
}

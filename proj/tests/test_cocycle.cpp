#include "drc/cocycle.hpp"
#include "drc/random.hpp"

#include <gtest/gtest.h>

using namespace drc;

namespace {

TestFunction coset(Rational a, Rational b) { return TestFunction::coset({a, b}); }

// Sums of cosets (i/p^e, j/p^e) + Z^2 away from zero: standard away from p, usable by every cocycle.
TestFunction random_p_function(Rng& rng, long p) {
    std::vector<Term> terms;
    long den = rng.pick(std::vector<long>{p, p * p});
    int n = static_cast<int>(rng.uniform(1, 3));
    for (int i = 0; i < n; ++i) {
        long a = rng.uniform(0, den - 1), b = rng.uniform(0, den - 1);
        if (a == 0 && b == 0) a = 1;
        terms.push_back({Int(rng.uniform(-3, 3)), {{rat(a, den), rat(b, den)}, Lattice()}});
    }
    return TestFunction::canonicalize(terms);
}

}  // namespace

TEST(DrGenerators, PinnedValues) {
    EXPECT_EQ(dr_generator_value(Atom::t(1), coset(rat(1, 2), 0), 7), 2);
    EXPECT_EQ(dr_generator_value(Atom::s(1), coset(rat(1, 3), 0), 7), 3);
    Rng rng(1);
    for (int t = 0; t < 20; ++t) EXPECT_EQ(dr_generator_value(Atom::diag(5, 1), random_test_function(rng), 7), 0);
    EXPECT_THROW(dr_generator_value(Atom::t(1), coset(0, 0), 7), SupportAtZero);
    EXPECT_THROW(dr_generator_value(Atom::t(1), coset(rat(1, 7), 0), 7), NotSSupported);
}

TEST(DrGenerators, TPowerClosedFormMatchesIteration) {
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
        TestFunction f = random_test_function(rng);
        long k = rng.uniform(-6, 6);
        Rational iter = 0;
        TestFunction g = f;
        Mat2 step = Mat2::T(Rational(k >= 0 ? 1 : -1));
        for (long i = 0; i < std::labs(k); ++i) {
            iter += k >= 0 ? dr_T_value(g, 7) : -dr_T_value(act_right(g, step), 7);
            g = act_right(g, step);
        }
        EXPECT_EQ(dr_T_power_value(f, Int(k), 7), iter) << "k=" << k;
    }
}

TEST(Dr, ValueExamples) {
    Rng rng(3);
    PrimeSet S{7};
    for (int t = 0; t < 30; ++t) {
        TestFunction f = random_test_function(rng);
        EXPECT_EQ(dr_value(Mat2::identity(), Mat2::UL(rng.pick(std::vector<long>{2, 3, 5, 11})), f, 7), 0);
        Mat2 g = word_product(random_gs_word(rng, S, 4));
        EXPECT_EQ(dr_value(g, g, f, 7), 0);
    }
    TestFunction f = coset(rat(1, 3), 0);
    Mat2 TS = Mat2::T() * Mat2::S();
    EXPECT_EQ(dr_value(Mat2::identity(), TS, f, 7),
              dr_value(Mat2::identity(), Mat2::T(), f, 7) + dr_value(Mat2::identity(), Mat2::S(), act_right(f, Mat2::T()), 7));
    EXPECT_THROW(dr_value(Mat2::identity(), Mat2::UL(7), f, 7), NotInGS);
}

TEST(Dr, InverseIdentity) {
    Rng rng(4);
    PrimeSet S{7};
    for (int t = 0; t < 30; ++t) {
        TestFunction f = random_test_function(rng);
        Mat2 g = word_product(random_gs_word(rng, S, 4));
        EXPECT_EQ(dr_value(Mat2::identity(), g, f, 7) + dr_value(Mat2::identity(), g.inverse(), act_right(f, g), 7), 0);
    }
}

TEST(DrDelta, Examples) {
    CocycleParams P;
    TestFunction f = coset(rat(1, 11), 0);
    EXPECT_EQ(dr_delta_value(Mat2::identity(), Mat2::diag(2, 3), f, P), 0);
    Mat2 g{1, 0, 5, 1};
    Rational expect = psi_delta_difference(f, g, P);
    for (auto [D, n] : P.delta)
        expect += Rational(n) * (49 * dedekind_C(1, Rational(5 / D), rat(1, 11), 0) - dedekind_C(1, Rational(5 / D), rat(7, 11), 0));
    EXPECT_EQ(dr_delta_value(Mat2::identity(), g, f, P), expect);
    EXPECT_THROW(dr_delta_value(Mat2::identity(), Mat2{1, 0, 3, 1}, f, P), NotInGNN);
}

TEST(DrDelta, CocycleLawAndInverse) {
    Rng rng(5);
    CocycleParams P;
    for (int t = 0; t < 30; ++t) {
        TestFunction f = random_p_function(rng, 11);
        Mat2 a = random_gamma0(rng, 5, 30), b = random_gamma0(rng, 5, 30) * Mat2::UL(2), c = random_gamma0(rng, 5, 30);
        EXPECT_EQ(dr_delta_value(a, b, f, P) + dr_delta_value(b, c, f, P), dr_delta_value(a, c, f, P));
        EXPECT_EQ(dr_delta_value(Mat2::identity(), a, f, P) + dr_delta_value(Mat2::identity(), a.inverse(), act_right(f, a), P), 0);
    }
}

TEST(Dd, CuspExamples) {
    CocycleParams P;
    TestFunction f = coset(rat(1, 11), 0);
    EXPECT_EQ(dd_cusp_value(Cusp::infinity(), f, P), 0);
    EXPECT_EQ(dd_cusp_value(Cusp::finite(1, 5), f, P), -24);
    EXPECT_THROW(dd_cusp_value(Cusp::finite(1, 3), f, P), CuspNotInOrbit);
    EXPECT_THROW(dd_cusp_value(Cusp::finite(1, 5), coset(rat(1, 3), 0), P), NotSSupported);
    Mat2 g{1, 0, 5, 1};
    EXPECT_EQ(dd_value(g, g, f, P), 0);
}

TEST(Dd, CocycleLaw) {
    Rng rng(6);
    CocycleParams P;
    for (int t = 0; t < 30; ++t) {
        TestFunction f = random_p_function(rng, 11);
        Mat2 a = random_gamma0(rng, 5, 30), b = random_gamma0(rng, 5, 30), c = random_gamma0(rng, 5, 30);
        EXPECT_EQ(dd_value(a, b, f, P) + dd_value(b, c, f, P), dd_value(a, c, f, P));
        EXPECT_TRUE(is_integer(dd_value(a, b, f, P)));
    }
}

TEST(Dd, SmoothedExamples) {
    CocycleParams P;
    TestFunction f = coset(rat(1, 11), 0);
    EXPECT_EQ(dd_c_smoothed(Mat2::identity(), Mat2::T(3), f, P), 0);
    Mat2 g{1, 0, 5, 1};
    EXPECT_EQ(dd_c_smoothed(Mat2::identity(), g, f, P), 49 * dd_value(Mat2::identity(), g, f, P) -
                                                              dd_value(Mat2::identity(), g, coset(rat(7, 11), 0), P));
}

TEST(Compare, PsiCoboundary) {
    CocycleParams P;
    TestFunction f = coset(rat(1, 11), 0);
    EXPECT_EQ(psi_delta_coboundary(Mat2::identity(), Mat2::diag(2, 3), coset(rat(1, 3), rat(1, 5)), P),
              12 * (psi_delta(7, P.delta, act_right(coset(rat(1, 3), rat(1, 5)), Mat2::diag(2, 3)), P.Nset()) -
                    psi_delta(7, P.delta, coset(rat(1, 3), rat(1, 5)), P.Nset())));
    EXPECT_EQ(psi_delta_coboundary(Mat2::identity(), Mat2{1, 0, 15, 1}, coset(rat(1, 3), rat(1, 5)), P), 0);
    Mat2 g{1, 0, 5, 1};
    EXPECT_EQ(psi_delta_coboundary(Mat2::identity(), g, f, P), 12 * psi_delta_difference(f, g, P));
}

TEST(Compare, VanishesOnPinnedAndRandomInputs) {
    CocycleParams P;
    EXPECT_EQ(compare_main(Mat2::identity(), Mat2{1, 0, 5, 1}, coset(rat(1, 11), 0), P), 0);
    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        TestFunction f = random_p_function(rng, 11);
        Mat2 a = random_gamma0(rng, 5, 30), b = random_gamma0(rng, 5, 30);
        EXPECT_EQ(compare_main(a, b, f, P), 0);
    }
}

// Upper-triangular elements fix infinity: dd vanishes and compare reduces to the Psi^delta coboundary.
TEST(Compare, ConsistentOnUpperTriangularPowers) {
    CocycleParams P;
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
        TestFunction f = random_p_function(rng, 11);
        Mat2 g = Mat2::T(Rational(rng.uniform(-5, 5))) * Mat2::UL(rng.pick(std::vector<long>{2, 3}));
        EXPECT_EQ(dd_value(Mat2::identity(), g, f, P), 0);
        EXPECT_EQ(compare_main(Mat2::identity(), g, f, P), 0);
    }
}

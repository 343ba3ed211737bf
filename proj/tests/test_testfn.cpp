#include "drc/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace drc;

namespace {

TestFunction coset(Rational a, Rational b) { return TestFunction::coset({a, b}); }

Lattice random_sublattice(Rng& rng, const Lattice& L) {
    Mat2 m{Rational(rng.uniform(1, 6)), Rational(rng.uniform(0, 5)), 0, Rational(rng.uniform(1, 6))};
    return Lattice(m * L.basis());
}

}  // namespace

TEST(TestFunction, CanonicalizeExamples) {
    Term plus{1, {{0, 0}, Lattice()}}, minus{-1, {{0, 0}, Lattice()}};
    EXPECT_TRUE(TestFunction::canonicalize({plus, minus}).is_zero());
    EXPECT_EQ(TestFunction::canonicalize({}).lattice(), Lattice());

    TestFunction z = TestFunction::canonicalize({plus});
    auto fine = z.refine(Lattice::scalar(2));
    ASSERT_EQ(fine.size(), 4u);
    for (const auto& t : fine) EXPECT_EQ(t.coeff, 1);
    EXPECT_EQ(TestFunction::canonicalize(fine), z);

    TestFunction m = TestFunction::canonicalize({{2, {{rat(1, 3), 0}, Lattice()}}, {3, {{rat(1, 3), 0}, Lattice()}}});
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.terms().begin()->second, 5);
}

TEST(TestFunction, ActRightExamples) {
    EXPECT_EQ(act_right(coset(rat(1, 2), 0), Mat2::T()), coset(rat(1, 2), rat(1, 2)));
    EXPECT_EQ(act_right(coset(rat(1, 3), 0), Mat2::S()), coset(0, rat(2, 3)));
    TestFunction f = coset(rat(1, 5), rat(2, 7));
    EXPECT_EQ(act_right(f, Mat2::identity()), f);
}

TEST(TestFunction, ActAdelicExamples) {
    Rational a = rat(1, 3), b = rat(2, 5);
    EXPECT_EQ(act_adelic(coset(a, b), Mat2::D(7), {7}), coset(7 * a, 7 * b));
    EXPECT_EQ(act_adelic(coset(rat(1, 11), rat(1, 2)), Mat2::LR(5), {5, 7}), coset(rat(1, 11), rat(5, 2)));
    Rng rng(2);
    PrimeSet S{7};
    TestFunctionShape sh;
    for (int t = 0; t < 50; ++t) {
        TestFunction f = random_test_function(rng, sh);
        Mat2 g = word_product(random_gs_word(rng, S, 6));
        EXPECT_EQ(act_adelic(f, g, S), act_right(f, g));
        EXPECT_EQ(act_adelic(f, g, {}), act_right(f, g));
    }
}

TEST(TestFunction, Predicates) {
    EXPECT_TRUE(is_away_from_zero(coset(rat(1, 3), 0)));
    EXPECT_FALSE(is_away_from_zero(coset(0, 0)));
    EXPECT_FALSE(is_away_from_zero(coset(1, 2)));
    EXPECT_TRUE(prime_support_ok(coset(rat(1, 3), rat(1, 5)), {7}));
    EXPECT_FALSE(prime_support_ok(coset(rat(1, 7), 0), {7}));
    EXPECT_FALSE(prime_support_ok(TestFunction::coset({7, 7}, Lattice::scalar(49)), {7}));
}

TEST(TestFunction, CanonicalFormUnderRefinementAndPermutation) {
    Rng rng(8);
    for (int t = 0; t < 100; ++t) {
        TestFunction f = random_test_function(rng, {});
        Lattice finer = random_sublattice(rng, f.lattice());
        auto terms = f.refine(finer);
        std::shuffle(terms.begin(), terms.end(), rng.engine());
        // split one term into two pieces with coefficients summing to the original
        if (!terms.empty()) {
            Term extra = terms.front();
            extra.coeff = 2;
            terms.front().coeff -= 2;
            terms.push_back(extra);
        }
        EXPECT_EQ(TestFunction::canonicalize(terms), f);
        EXPECT_EQ(TestFunction::canonicalize(f.term_list()), f);
    }
}

TEST(TestFunction, RefinementIdentityPointwise) {
    Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        TestFunction f = random_test_function(rng, {});
        Lattice finer = random_sublattice(rng, f.lattice());
        ASSERT_LE(lattice_index(f.lattice(), finer), 36);
        TestFunction g = TestFunction::canonicalize(f.refine(finer));
        for (int k = 0; k < 20; ++k) {
            Vec2 x{rat(rng.uniform(-60, 60), 60), rat(rng.uniform(-60, 60), 60)};
            EXPECT_EQ(f(x), g(x));
        }
    }
}

TEST(TestFunction, RightActionContravariance) {
    Rng rng(4);
    PrimeSet S{7};
    for (int t = 0; t < 100; ++t) {
        TestFunction f = random_test_function(rng, {});
        Mat2 g1 = word_product(random_gs_word(rng, S, 4)), g2 = word_product(random_gs_word(rng, S, 4));
        EXPECT_EQ(act_right(act_right(f, g1), g2), act_right(f, g1 * g2));
    }
}

TEST(TestFunction, LinearStructure) {
    TestFunction f = coset(rat(1, 2), 0), g = coset(0, rat(1, 3));
    EXPECT_EQ((f + g) - g, f);
    EXPECT_TRUE((f - f).is_zero());
    EXPECT_EQ((Int(3) * f).terms().begin()->second, 3);
}

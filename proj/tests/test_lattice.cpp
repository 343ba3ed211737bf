#include "drc/random.hpp"

#include <gtest/gtest.h>

using namespace drc;

namespace {

Lattice rows(long a, long b, long c, long d) { return Lattice(Mat2{a, b, c, d}); }

}  // namespace

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(parse_rational("6/-4"), rat(-3, 2));
    EXPECT_EQ(parse_rational(" -2 "), -2);
    EXPECT_EQ(to_string(rat(4, 6)), "2/3");
    EXPECT_EQ(to_string(Rational(-5)), "-5");
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("x"), std::invalid_argument);
    EXPECT_EQ(frac(rat(-1, 3)), rat(2, 3));
    EXPECT_EQ(floor_q(rat(-1, 3)), -1);
}

TEST(Lattice, HnfExamples) {
    EXPECT_EQ(rows(1, 0, 0, 1).basis(), Mat2::identity());
    EXPECT_EQ(rows(0, 1, 1, 0).basis(), Mat2::identity());
    Lattice L = rows(2, 0, 1, 1);
    EXPECT_EQ(L, rows(1, 1, 0, 2));
    for (long i = -6; i <= 6; ++i)
        for (long j = -6; j <= 6; ++j) {
            Vec2 v{Rational(2 * i + j), Rational(j)};
            EXPECT_TRUE(L.contains(v));
        }
    EXPECT_FALSE(L.contains(Vec2{1, 0}));
}

TEST(Lattice, HnfIsCompleteUnderBasisChange) {
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        Mat2 B{rat(rng.uniform(-9, 9), rng.uniform(1, 6)), rat(rng.uniform(-9, 9), rng.uniform(1, 6)),
               rat(rng.uniform(-9, 9), rng.uniform(1, 6)), rat(rng.uniform(-9, 9), rng.uniform(1, 6))};
        if (B.det() == 0) continue;
        Lattice L(B);
        Mat2 U = word_product(sl2z_word(Mat2{1, Rational(rng.uniform(-4, 4)), 0, 1} * Mat2::S() * Mat2{1, Rational(rng.uniform(-4, 4)), 0, 1}));
        EXPECT_EQ(Lattice(U * B), L);
        EXPECT_EQ(Lattice(L.basis()), L);
        EXPECT_EQ(Lattice(L.basis()).basis(), L.basis());
    }
}

TEST(Lattice, IntersectExamples) {
    Lattice Z2, twoZ2 = Lattice::scalar(2);
    EXPECT_EQ(lattice_intersect(Z2, Z2), Z2);
    EXPECT_EQ(lattice_intersect(Z2, twoZ2), twoZ2);
    EXPECT_EQ(lattice_intersect(rows(1, 0, 0, 3), rows(2, 0, 0, 1)), rows(2, 0, 0, 3));
}

TEST(Lattice, IntersectLaws) {
    Rng rng(5);
    TestFunctionShape sh;
    sh.lattice_prob = 1.0;
    for (int t = 0; t < 50; ++t) {
        Lattice A = random_lattice(rng, sh), B = random_lattice(rng, sh), C = random_lattice(rng, sh);
        EXPECT_EQ(lattice_intersect(A, B), lattice_intersect(B, A));
        EXPECT_EQ(lattice_intersect(lattice_intersect(A, B), C), lattice_intersect(A, lattice_intersect(B, C)));
        long n = rng.uniform(1, 6), m = rng.uniform(1, 6);
        EXPECT_TRUE(lattice_intersect(Lattice::scalar(n), Lattice::scalar(m)).contains(Lattice::scalar(n * m)));
    }
}

TEST(Lattice, MinScalingIndex) {
    EXPECT_EQ(min_scaling_index(Lattice()), 1);
    EXPECT_EQ(min_scaling_index(Lattice::scalar(rat(1, 2))), 1);
    EXPECT_EQ(min_scaling_index(rows(1, 0, 0, 3)), 3);
}

TEST(Lattice, CosetRepresentatives) {
    EXPECT_EQ(coset_representatives(Lattice(), Lattice()).size(), 1u);
    auto four = coset_representatives(Lattice(), Lattice::scalar(2));
    ASSERT_EQ(four.size(), 4u);
    std::set<Vec2> got(four.begin(), four.end());
    EXPECT_EQ(got, (std::set<Vec2>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    auto three = coset_representatives(Lattice(), rows(1, 0, 0, 3));
    std::set<Vec2> t3(three.begin(), three.end());
    EXPECT_EQ(t3, (std::set<Vec2>{{0, 0}, {0, 1}, {0, 2}}));
    EXPECT_THROW(coset_representatives(Lattice::scalar(2), Lattice()), NotSublattice);
}

TEST(Words, Sl2zExamples) {
    EXPECT_TRUE(sl2z_word(Mat2::identity()).empty());
    Word s = sl2z_word(Mat2::S());
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(word_str(s), "S");
    Mat2 M{2, 1, 1, 1};
    EXPECT_EQ(word_product(sl2z_word(M)), M);
    EXPECT_THROW(sl2z_word(Mat2{2, 0, 0, 1}), NotInSL2Z);
}

TEST(Words, Sl2zLengthBound) {
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        long c = rng.uniform(-1000000, 1000000), d = rng.uniform(-1000000, 1000000);
        if (std::gcd(c, d) != 1) continue;
        Int x, y;
        xgcd(Int(d), Int(c), x, y);  // d x + c y = 1
        Mat2 M{Rational(x), Rational(-y), Rational(c), Rational(d)};
        ASSERT_EQ(M.det(), 1);
        Word w = sl2z_word(M);
        EXPECT_EQ(word_product(w), M);
        long big = std::max({std::labs(c), std::labs(d), std::labs(to_long(x)), std::labs(to_long(y))});
        long bits = 0;
        while (big >> bits) ++bits;
        EXPECT_LE(static_cast<long>(w.size()), 10 * bits);
    }
}

TEST(Words, GsDecomposeExamples) {
    Word w = gs_decompose(Mat2::UL(5), {7});
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0].kind, Atom::Kind::Diag);
    EXPECT_EQ(w[0].u, 5);
    EXPECT_EQ(w[0].v, 1);
    EXPECT_THROW(gs_decompose(Mat2::UL(7), {7}), NotInGS);
}

TEST(Words, GsDecomposeReconstructs) {
    Rng rng(17);
    PrimeSet S{7};
    for (int t = 0; t < 200; ++t) {
        Word w = random_gs_word(rng, S, 6);
        Mat2 g = word_product(w);
        EXPECT_EQ(word_product(gs_decompose(g, S)), g);
        EXPECT_EQ(word_product(gs_decompose(g, S, 2)), g);
    }
}

TEST(Words, GnnDecomposeExamples) {
    Mat2 g{1, 0, 5, 1};
    Word w = gnn_decompose(g, 5, {5, 7});
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0].kind, Atom::Kind::Block);
    Word d = gnn_decompose(Mat2::D(rat(1, 3)), 5, {5, 7});
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].kind, Atom::Kind::Diag);
    Mat2 h = g * Mat2::UL(2);
    Word two = gnn_decompose(h, 5, {5, 7});
    EXPECT_EQ(two.size(), 2u);
    EXPECT_EQ(word_product(two), h);
}

TEST(Words, GnnDecomposeReconstructs) {
    Rng rng(19);
    for (int t = 0; t < 100; ++t) {
        Mat2 g = random_gamma0(rng, 5, 50) * Mat2::diag(Rational(rng.pick(std::vector<long>{1, 2, 3})), 1) *
                 random_gamma0(rng, 5, 20);
        EXPECT_EQ(word_product(gnn_decompose(g, 5, {5, 7})), g);
    }
}

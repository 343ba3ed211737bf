#include "drc/qseries.hpp"
#include "drc/random.hpp"

#include <gtest/gtest.h>

using namespace drc;

namespace {

CycloNumber one(long m = 1) { return CycloNumber(m, 1); }

QExpansion poly_q(std::vector<long> coeffs) {
    std::vector<CycloNumber> cs;
    for (long c : coeffs) cs.push_back(CycloNumber(1, c));
    return QExpansion::from_coeffs(0, 1, cs);
}

}  // namespace

TEST(Cyclo, Examples) {
    EXPECT_EQ(detail::cyclotomic_poly(6), (std::vector<long>{1, -1, 1}));
    EXPECT_EQ(detail::euler_phi(12), 4);
    CycloNumber z3 = CycloNumber::zeta(rat(1, 3), 3);
    EXPECT_EQ(z3.pow(3), one(3));
    EXPECT_TRUE((one(3) + z3 + z3 * z3).is_zero());
    CycloNumber w = one(5) - CycloNumber::zeta(rat(1, 5), 5);
    EXPECT_EQ(w * w.inv(), one(5));
    EXPECT_THROW(CycloNumber(5).inv(), DivisionByZero);
    EXPECT_THROW(CycloNumber::zeta(rat(1, 7), 5), ConductorOverflow);
    EXPECT_EQ(CycloNumber::zeta(rat(1, 2), 4), CycloNumber(4, -1));
}

TEST(Cyclo, ProductOfOneMinusRoots) {
    for (long m = 2; m <= 15; ++m) {
        CycloNumber prod = one(m);
        for (long k = 1; k < m; ++k) prod = prod * (one(m) - CycloNumber::power_of_root(k, m));
        EXPECT_EQ(prod, CycloNumber(m, m)) << "m=" << m;
    }
}

TEST(QExp, Arithmetic) {
    QExpansion a = poly_q({1, 1, 0, 0, 0}), b = poly_q({1, -1, 0, 0, 0});
    EXPECT_FALSE(first_mismatch(a * b, poly_q({1, 0, -1, 0, 0})));
    QExpansion geo = b.inv();
    EXPECT_FALSE(first_mismatch(geo, poly_q({1, 1, 1, 1, 1})));
    QExpansion m = QExpansion::monomial(rat(1, 12), one(), 5) * QExpansion::monomial(rat(-1, 12), one(), 5);
    EXPECT_EQ(m.leading_exponent(), 0);
    EXPECT_FALSE(first_mismatch(m, QExpansion::constant(one(), 5)));
    EXPECT_THROW(QExpansion::constant(CycloNumber(1), 3).inv(), NonUnitLeading);
}

TEST(QExp, TAction) {
    QExpansion x = QExpansion::monomial(rat(1, 3), one(3), 4);
    EXPECT_EQ(x.t_act().leading(), CycloNumber::zeta(rat(1, 3), 3));
    QExpansion y = QExpansion::monomial(2, one(3), 4);
    EXPECT_EQ(y.t_act().leading(), one(3));
}

TEST(Theta, LeadingOrders) {
    EXPECT_EQ(theta_expansion(0, rat(1, 3), 5).normalized().leading_exponent(), rat(1, 12));
    EXPECT_EQ(theta_expansion(rat(1, 2), 0, 5).normalized().leading_exponent(), rat(-1, 6));
    EXPECT_THROW(theta_expansion(0, 0, 5), ZeroCoset);
}

TEST(U, LowOrderCoefficients) {
    QExpansion u = u_expansion(0, rat(1, 3), 6);
    EXPECT_EQ(u.leading_exponent(), 0);
    EXPECT_EQ(u.leading(), one(u.conductor()));
    // -(zeta^{1/3} + zeta^{-1/3}) = 1
    auto c1 = u.coeff(1);
    ASSERT_TRUE(c1.has_value());
    EXPECT_EQ(*c1, one(u.conductor()));
}

TEST(KatoSiegel, Orders) {
    EXPECT_EQ(ks_order(7, 0, rat(1, 2)), 4);
    EXPECT_EQ(ks_order(7, rat(1, 2), 0), -2);
    EXPECT_EQ(ks_unit_expansion(7, 0, rat(1, 2), 6).normalized().leading_exponent(), 4);
}

TEST(DCyc, Examples) {
    EXPECT_EQ(dcyc_value(0, rat(1, 2)), CycloNumber(4, 2));
    EXPECT_EQ(dcyc_value(rat(1, 3), rat(1, 5)), one(30));
    CycloNumber prod = dcyc_value(0, rat(1, 3), 6) * dcyc_value(0, rat(2, 3), 6);
    EXPECT_EQ(prod, CycloNumber(6, 3));
}

TEST(Verify, Examples) {
    EXPECT_TRUE(verify_theta_decomposition(rat(1, 3), rat(1, 5), 10).pass);
    EXPECT_TRUE(verify_theta_decomposition(rat(5, 4), rat(7, 3), 8).pass);
    EXPECT_TRUE(verify_theta_decomposition(rat(9, 4), rat(1, 3), 8).pass);
    EXPECT_TRUE(verify_ks_decomposition(7, rat(1, 3), 0, 10).pass);
    EXPECT_TRUE(verify_ks_decomposition(7, 0, rat(1, 4), 10).pass);
    EXPECT_TRUE(verify_u_distribution(rat(1, 5), rat(1, 7), 2, 8).pass);
    EXPECT_TRUE(verify_u_t_invariance(rat(1, 4), rat(1, 3), 10).pass);
}

TEST(EtaDelta, Identity) {
    CocycleParams P;
    for (long p : {2, 3}) {
        P.p = p;
        EXPECT_TRUE(eta_delta_identity(P, 20).pass) << "p=" << p;
    }
    P.delta = {};
    EXPECT_THROW(eta_delta_identity(P, 10), ParamsInvalid);
}

TEST(Precision, LowerPrecisionAgreesWithHigher) {
    Rng rng(31);
    for (int t = 0; t < 10; ++t) {
        Rational a = rat(rng.uniform(0, 11), 12), b = rat(rng.uniform(1, 9), 10);
        QExpansion lo = theta_expansion(a, b, 6), hi = theta_expansion(a, b, 15);
        EXPECT_FALSE(first_mismatch(lo, hi));
        EXPECT_LE(lo.abs_precision(), hi.abs_precision());
        QExpansion ulo = u_expansion(a, b, 6), uhi = u_expansion(a, b, 15);
        EXPECT_FALSE(first_mismatch(ulo, uhi));
    }
}

TEST(KatoSiegel, RepresentativeIndependence) {
    Rng rng(32);
    for (int t = 0; t < 10; ++t) {
        long den = rng.pick(std::vector<long>{2, 3, 4, 5});
        Rational a = rat(rng.uniform(0, den - 1), den), b = rat(rng.uniform(1, den - 1), den);
        long i = rng.uniform(-2, 2), j = rng.uniform(-2, 2);
        EXPECT_EQ(ks_order(7, a, b), ks_order(7, a + i, b + j));
        EXPECT_TRUE(verify_ks_decomposition(7, a + i, b + j, 6).pass);
    }
}

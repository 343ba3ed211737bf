#pragma once

// Double-precision engines for the Eisenstein period identities: Hurwitz and periodic zeta,
// cyclotomic logarithms, Mellin transforms of E_1(a,b) and the Stevens value at s = 1.

#include "drc/cocycle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace drc {

using ComplexF = std::complex<double>;

struct PoleAtOne : std::domain_error {
    PoleAtOne() : std::domain_error("zeta has a pole at s = 1") {}
};
struct DivergentParameters : std::domain_error {
    DivergentParameters() : std::domain_error("series diverges for these parameters") {}
};
struct LogOfZero : std::domain_error {
    LogOfZero() : std::domain_error("logarithm of zero") {}
};

inline constexpr double kPi = std::numbers::pi;

namespace detail {

/// Lanczos approximation (g = 7, 9 terms) with reflection for Re z < 1/2.
inline ComplexF gamma_c(ComplexF z) {
    static const double g = 7;
    static const double coef[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                   771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                   -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma_c(1.0 - z));
    z -= 1.0;
    ComplexF x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
    ComplexF t = z + g + 0.5;
    return std::sqrt(2 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

/// Euler-Maclaurin for sum_{k>=0} (x+k)^{-s}, any x > 0.
inline ComplexF hurwitz_any(ComplexF s, double x) {
    if (std::abs(s - 1.0) < 1e-300) throw PoleAtOne();
    const int N = 40, P = 8;
    static const double b2j[P + 1] = {0,           1.0 / 6,   -1.0 / 30,    1.0 / 42,   -1.0 / 30,
                                      5.0 / 66,    -691.0 / 2730, 7.0 / 6, -3617.0 / 510};
    ComplexF sum = 0;
    for (int k = 0; k < N; ++k) sum += std::pow(ComplexF(x + k), -s);
    double a = x + N;
    ComplexF apow = std::pow(ComplexF(a), -s);
    sum += apow * a / (s - 1.0) + 0.5 * apow;
    // term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * a^{-s-2j+1}
    ComplexF rise = s, fact = 1;
    ComplexF ap = apow / a;
    for (int j = 1; j <= P; ++j) {
        fact = fact * static_cast<double>((2 * j - 1) * (2 * j));
        sum += b2j[j] / fact * rise * ap;
        rise *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
        ap /= a * a;
    }
    return sum;
}

/// Representative of x mod Z in (0, 1].
inline double unit_interval_rep(const Rational& x) {
    Rational f = frac(x);
    return f == 0 ? 1.0 : f.get_d();
}

}  // namespace detail

/// zeta(s, x) = sum_{k = x mod Z, k > 0} k^{-s}, x in (0, 1].
inline ComplexF hurwitz_zeta(ComplexF s, const Rational& x) {
    if (x <= 0 || x > 1) throw std::invalid_argument("hurwitz_zeta needs x in (0,1]");
    return detail::hurwitz_any(s, x.get_d());
}

/// log|1 - e^{2 pi i x}|.
inline double rclog(const Rational& x) {
    if (is_integer(x)) throw LogOfZero();
    return std::log(2 * std::sin(kPi * frac(x).get_d()));
}

/// Principal log(1 - e^{2 pi i x}).
inline ComplexF clog(const Rational& x) {
    if (is_integer(x)) throw LogOfZero();
    double t = 2 * kPi * frac(x).get_d();
    return std::log(ComplexF(1 - std::cos(t), -std::sin(t)));
}

/// Z(s, x) = sum_{n>=1} e^{2 pi i n x} n^{-s} via Z = q^{-s} sum_{r=1}^{q} e^{2 pi i r x} zeta(s, r/q), x = k/q.
/// At s = 1 (x not an integer) returns -log(1 - e^{2 pi i x}).
inline ComplexF periodic_zeta(ComplexF s, const Rational& x) {
    if (s == ComplexF(1, 0)) {
        if (is_integer(x)) throw DivergentParameters();
        return -clog(x);
    }
    if (s.real() <= 1) throw DivergentParameters();
    Rational xf = frac(x);
    long q = to_long(xf.get_den()), k = to_long(xf.get_num());
    ComplexF total = 0;
    for (long r = 1; r <= q; ++r) {
        double ang = 2 * kPi * static_cast<double>((r * k) % q) / static_cast<double>(q);
        total += std::polar(1.0, ang) * hurwitz_zeta(s, rat(r, q));
    }
    return std::pow(ComplexF(static_cast<double>(q)), -s) * total;
}

/// Direct partial sum of the periodic zeta series with Kahan compensation.
inline ComplexF periodic_zeta_direct(ComplexF s, const Rational& x, long terms = 100000) {
    if (s.real() <= 1) throw DivergentParameters();
    double xf = frac(x).get_d();
    ComplexF sum = 0, comp = 0;
    for (long n = 1; n <= terms; ++n) {
        ComplexF y = std::polar(1.0, 2 * kPi * std::fmod(static_cast<double>(n) * xf, 1.0)) *
                         std::pow(ComplexF(static_cast<double>(n)), -s) -
                     comp;
        ComplexF t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

/// Mellin transform of E_D(a,b) along the imaginary axis, Re s > 2:
/// D^{1-s} Gamma(s) (2 pi)^{1-s} [zeta(s-1, a) Z(s, b) + zeta(s-1, -a) Z(s, -b)].
inline ComplexF mellin_E1(const Rational& a, const Rational& b, ComplexF s, long D = 1) {
    if (s.real() <= 2) throw DivergentParameters();
    if (D < 1) throw std::invalid_argument("D must be positive");
    ComplexF pre = std::pow(ComplexF(static_cast<double>(D)), 1.0 - s) * detail::gamma_c(s) *
                   std::pow(ComplexF(2 * kPi), 1.0 - s);
    ComplexF plus = detail::hurwitz_any(s - 1.0, detail::unit_interval_rep(a)) * periodic_zeta(s, b);
    ComplexF minus = detail::hurwitz_any(s - 1.0, detail::unit_interval_rep(-a)) * periodic_zeta(s, -b);
    return pre * (plus + minus);
}

/// Twisted double series for the integral of E_D(a,b) y^{s-1} from alpha/beta to i infinity:
/// sum over x = +-a mod Z, x > 0 of x^{1-s} Z(s, +-b + D x alpha/beta), the first `terms` x summed directly and
/// (optionally) the rest per residue class mod beta through Hurwitz zeta.
inline ComplexF shifted_period_series(long alpha, long beta, const Rational& a, const Rational& b, double s, long D,
                                      long terms = 2000, bool tail = true) {
    if (s <= 2) throw DivergentParameters();
    ComplexF pre = std::pow(static_cast<double>(D), 1.0 - s) * detail::gamma_c(s) * std::pow(2 * kPi, 1.0 - s);
    Rational tw = Rational(D * alpha) / Rational(beta);
    ComplexF total = 0;
    for (int sign : {1, -1}) {
        Rational x0 = frac(Rational(sign) * a);
        if (x0 == 0) x0 = 1;
        Rational bb = Rational(sign) * b;
        std::vector<ComplexF> zc(static_cast<std::size_t>(beta));
        for (long l = 0; l < beta; ++l) zc[static_cast<std::size_t>(l)] = periodic_zeta(s, bb + tw * (x0 + Rational(l)));
        double x0d = x0.get_d();
        for (long n = 0; n < terms; ++n)
            total += std::pow(x0d + static_cast<double>(n), 1.0 - s) * zc[static_cast<std::size_t>(n % beta)];
        if (!tail) continue;
        for (long l = 0; l < beta; ++l) {
            long n0 = terms + ((l - terms) % beta + beta) % beta;
            double start = (x0d + static_cast<double>(n0)) / static_cast<double>(beta);
            total += std::pow(static_cast<double>(beta), 1.0 - s) * detail::hurwitz_any(s - 1.0, start) *
                     zc[static_cast<std::size_t>(l)];
        }
    }
    return pre * total;
}

/// |series - beta^{1-s} sum_{l < beta/D} M(E_1(R_l, Q_l), s)| with R_l = (a+l)/(beta/D), Q_l = b + (D alpha/beta)(a+l).
inline double verify_shifted_period(long alpha, long beta, const Rational& a, const Rational& b, double s, long D) {
    if (beta <= 0 || D <= 0 || beta % D) throw std::invalid_argument("need beta > 0 and D | beta");
    if (std::gcd(alpha, beta) != 1) throw std::invalid_argument("alpha and beta must be coprime");
    ComplexF lhs = shifted_period_series(alpha, beta, a, b, s, D);
    long bp = beta / D;
    Rational r = Rational(D * alpha) / Rational(beta);
    ComplexF rhs = 0;
    for (long l = 0; l < bp; ++l) rhs += mellin_E1(helper_R(a, l, Rational(bp)), helper_Q(a, b, l, r), s, 1);
    rhs *= std::pow(static_cast<double>(beta), 1.0 - s);
    return std::abs(lhs - rhs);
}

struct StevensValue {
    Rational rational_part;  // (B1 x B1)(f)
    double rclog_part = 0;   // (delta0 x RClog)(f|S - f)
    ComplexF value() const { return rational_part.get_d() + ComplexF(0, rclog_part / (2 * kPi)); }
};

/// (1/2 pi i) M(E_1(a,b), 1) = (B1 x B1)(f) - (1/2 pi i)(delta0 x RClog)(f|S - f).
inline StevensValue stevens_value(const Rational& a, const Rational& b) {
    detail::check_nonzero_coset(a, b);
    StevensValue v;
    v.rational_part = bernoulli(1, a) * bernoulli(1, b);
    TestFunction fS = act_right(TestFunction::coset({a, b}), Mat2::S());
    const Vec2& w = fS.terms().begin()->first;
    if (is_integer(w[0])) v.rclog_part += rclog(w[1]);
    if (is_integer(a)) v.rclog_part -= rclog(b);
    return v;
}

/// The same value from the s -> 1 limit of the Mellin transform: zeta(0, x) = 1/2 - x, Z(1, y) = -Clog(y),
/// and for b in Z the simple pole of Z(s, 0) against the zero of zeta(s-1, x) + zeta(s-1, 1-x), resolved by
/// zeta'(0, x) = log Gamma(x) - log(2 pi)/2.
inline ComplexF stevens_continuation(const Rational& a, const Rational& b) {
    detail::check_nonzero_coset(a, b);
    double xp = detail::unit_interval_rep(a), xm = detail::unit_interval_rep(-a);
    ComplexF m;
    if (is_integer(b)) {
        m = std::lgamma(xp) + std::lgamma(xm) - std::log(2 * kPi);
    } else {
        m = (0.5 - xp) * periodic_zeta(1.0, b) + (0.5 - xm) * periodic_zeta(1.0, -b);
    }
    return m / ComplexF(0, 2 * kPi);
}

/// Dedekind sum C(alpha, beta, a, b) recovered from Stevens-route periods of dlog u: the continuation values at
/// (R_l, Q_l) plus the RClog boundary terms, whose imaginary parts must cancel.
inline ComplexF dedekind_C_numeric(const Int& alpha, const Rational& beta, const Rational& a, const Rational& b) {
    if (!is_integer(beta) || beta <= 0) throw NonIntegerBeta();
    long n = to_long(beta.get_num());
    Rational r = Rational(alpha) / beta;
    ComplexF total = 0;
    for (long l = 0; l < n; ++l) {
        Rational R = helper_R(a, l, beta), Q = helper_Q(a, b, l, r);
        total += stevens_continuation(R, Q);
        double corr = 0;
        if (is_integer(R)) corr += rclog(Q);
        if (is_integer(Q)) corr -= rclog(R);
        total -= corr / ComplexF(0, 2 * kPi);
    }
    return total;
}

/// |exact DR^delta(Id, gamma)(f) - Psi^delta difference - numeric period assembly|, gamma in Gamma_0(N).
inline double dr_delta_numeric_crosscheck(const Mat2& gamma, const TestFunction& f, const CocycleParams& P) {
    if (!in_gamma0(gamma, P.N)) throw NotInGNN();
    Rational exact = dr_delta_value(Mat2::identity(), gamma, f, P);
    ComplexF numeric = psi_delta_difference(f, gamma, P).get_d();
    Cusp cusp = Cusp::of(gamma);
    if (!cusp.infinite) {
        Rational cq(P.c);
        for (const auto& pc : detail::z2_pieces(f))
            for (auto [D, n] : P.delta) {
                if (n == 0) continue;
                if (cusp.beta % D != 0) throw CuspNotInOrbit();
                Rational bd = Rational(cusp.beta) / Rational(D), Dq(D);
                ComplexF part = Rational(cq * cq).get_d() * dedekind_C_numeric(cusp.alpha, bd, pc.a, pc.b * Dq) -
                                dedekind_C_numeric(cusp.alpha, bd, pc.a * cq, pc.b * cq * Dq);
                numeric += static_cast<double>(n) * pc.coeff.get_d() * part;
            }
    }
    return std::abs(exact.get_d() - numeric);
}

}  // namespace drc

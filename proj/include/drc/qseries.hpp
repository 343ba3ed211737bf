#pragma once

// q-expansions of theta(a,b), the theta-unit distribution u, Kato-Siegel units and their decompositions.

#include "drc/cocycle.hpp"
#include "drc/qexp.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace drc {

namespace detail {

/// q^order * scalar * zeta^zexp * prod (1 - zeta^x)^k * prod (1 - zeta^x q^y)^k, kept unexpanded.
struct ProductForm {
    Rational order = 0;
    Rational scalar = 1;
    Rational zexp = 0;
    std::vector<std::pair<Rational, long>> cyc;
    std::vector<Binomial> factors;

    /// Multiply by (1 - zeta^x q^y)^k for any sign of y.
    void add_factor(const Rational& y, const Rational& x, long k = 1) {
        if (y > 0) {
            factors.push_back({y, x, k});
        } else if (y == 0) {
            if (is_integer(x)) throw ZeroCoset();
            cyc.push_back({frac(x), k});
        } else {
            // 1 - w q^y = -w q^y (1 - w^{-1} q^{-y})
            order += Rational(k) * y;
            zexp += Rational(k) * (x + Rational(1, 2));
            factors.push_back({-y, -x, k});
        }
    }

    ProductForm& operator*=(const ProductForm& o) {
        order += o.order;
        scalar *= o.scalar;
        zexp += o.zexp;
        cyc.insert(cyc.end(), o.cyc.begin(), o.cyc.end());
        factors.insert(factors.end(), o.factors.begin(), o.factors.end());
        return *this;
    }

    ProductForm pow(long k) const {
        ProductForm r = *this;
        r.order *= Rational(k);
        r.scalar = pow_q(scalar, k);
        r.zexp *= Rational(k);
        for (auto& c : r.cyc) c.second *= k;
        for (auto& f : r.factors) f.k *= k;
        return r;
    }

    /// tau -> D tau.
    ProductForm substitute(long D) const {
        ProductForm r = *this;
        r.order *= Rational(D);
        for (auto& f : r.factors) f.y *= Rational(D);
        return r;
    }

    CycloNumber constant(long m) const {
        CycloNumber r = CycloNumber::zeta(frac(zexp), m);
        for (const auto& [x, k] : cyc) r = r * (CycloNumber(m, 1) - CycloNumber::zeta(x, m)).pow(k);
        return scalar * r;
    }

    /// Expansion to relative precision `prec`; n is the exponent grid.
    QExpansion expand(long m, long prec, long n = 1) const {
        for (const auto& f : factors) n = to_long(lcm(Int(n), f.y.get_den()));
        std::vector<Binomial> live;
        for (const auto& f : factors)
            if (f.y < Rational(prec)) live.push_back(f);
        return QExpansion::monomial(order, constant(m), prec, n).times_binomials(live);
    }
};

/// Literal product for theta(a,b): q^{1/12}(t^{1/2} - t^{-1/2}) prod_{n>0}(1 - q^n t)(1 - q^n/t), t = q^a zeta^b.
inline ProductForm theta_form(const Rational& a, const Rational& b, long prec) {
    check_nonzero_coset(a, b);
    ProductForm P;
    // t^{1/2} - t^{-1/2} = -zeta^{-b/2} q^{-a/2} (1 - q^a zeta^b)
    P.order = Rational(1, 12) - a / 2;
    P.zexp = Rational(1, 2) - b / 2;
    P.add_factor(a, b);
    Rational absa = a < 0 ? Rational(-a) : a;
    long top = to_long(floor_q(absa)) + prec + 1;
    for (long n = 1; n <= top; ++n) {
        P.add_factor(Rational(n) + a, b);
        P.add_factor(Rational(n) - a, -b);
    }
    return P;
}

/// Unit part u([(a,b)+Z^2]): factors over y in a+Z, y != 0.
inline ProductForm u_form(const Rational& a, const Rational& b, long prec) {
    check_nonzero_coset(a, b);
    Rational a0 = frac(a), b0 = frac(b);
    ProductForm P;
    for (long n = 0; n <= prec + 1; ++n) {
        Rational yp = a0 + Rational(n), yn = Rational(n) - a0;
        if (yp > 0) P.factors.push_back({yp, b0, 1});
        if (yn > 0) P.factors.push_back({yn, -b0, 1});
    }
    return P;
}

/// Kato-Siegel unit (-1)^{(c-1)/2} theta(a,b)^{c^2} theta(ca,cb)^{-1}, literal representatives.
inline ProductForm ks_form(long c, const Rational& a, const Rational& b, long prec) {
    check_smoothing_integer(c);
    check_nonzero_coset(a, b);
    Int cc(c);
    if (gcd(a.get_den(), cc) != 1 || gcd(b.get_den(), cc) != 1)
        throw std::invalid_argument("coset denominators must be prime to c");
    Rational cq(c);
    ProductForm P = theta_form(a, b, prec).pow(c * c);
    P *= theta_form(cq * a, cq * b, prec).pow(-1);
    if (((c - 1) / 2) % 2) P.scalar = -P.scalar;
    return P;
}

inline long lcm_l(long x, long y) { return to_long(lcm(Int(x), Int(y))); }

}  // namespace detail

/// Working conductor for expansions attached to the offsets (a_i, b_i).
inline long working_conductor(const std::vector<Vec2>& vs) {
    long m = 4;
    for (const auto& v : vs) {
        m = detail::lcm_l(m, 2 * to_long(v[1].get_den()));
        m = detail::lcm_l(m, to_long(v[0].get_den()));
    }
    return m;
}

inline QExpansion theta_expansion(const Rational& a, const Rational& b, long prec) {
    return detail::theta_form(a, b, prec).expand(working_conductor({{a, b}}), prec);
}

inline QExpansion u_expansion(const Rational& a, const Rational& b, long prec) {
    return detail::u_form(a, b, prec).expand(working_conductor({{a, b}}), prec);
}

inline QExpansion ks_unit_expansion(long c, const Rational& a, const Rational& b, long prec) {
    return detail::ks_form(c, a, b, prec).expand(working_conductor({{a, b}}), prec);
}

/// DCyc([(a,b)+Z^2]) = (1 - zeta^b)^{delta_0(a)}.
inline CycloNumber dcyc_value(const Rational& a, const Rational& b, long m = 0) {
    detail::check_nonzero_coset(a, b);
    if (m == 0) m = working_conductor({{a, b}});
    if (!is_integer(a)) return CycloNumber(m, 1);
    return CycloNumber(m, 1) - CycloNumber::zeta(frac(b), m);
}

/// Result of an identity check: pass flag and the first exponent where the two sides differ.
struct QCheck {
    bool pass = true;
    std::optional<Rational> mismatch;
    std::string detail;
};

inline QCheck compare_expansions(const QExpansion& lhs, const QExpansion& rhs, const std::string& what = {}) {
    QCheck r;
    r.mismatch = first_mismatch(lhs, rhs);
    r.pass = !r.mismatch;
    if (!r.pass) r.detail = what;
    return r;
}

/// theta(a,b) = q^{(B2(<a>) - a^2)/2} zeta^{-B1(b)(1+floor a) + b/2} DCyc(f) u(f), a, b >= 0.
inline QCheck verify_theta_decomposition(const Rational& a, const Rational& b, long prec) {
    if (a < 0 || b < 0) throw std::invalid_argument("theta decomposition needs a, b >= 0");
    long m = working_conductor({{a, b}});
    QExpansion lhs = detail::theta_form(a, b, prec).expand(m, prec);
    Rational order = (bernoulli_poly(2, frac(a)) - a * a) / 2;
    Rational zexp = -bernoulli_poly(1, b) * (Rational(1) + Rational(floor_q(a))) + b / 2;
    CycloNumber lead = CycloNumber::zeta(frac(zexp), m) * dcyc_value(a, b, m);
    QExpansion rhs = qexp_mul(QExpansion::monomial(order, lead, prec), detail::u_form(a, b, prec).expand(m, prec));
    return compare_expansions(lhs, rhs, "theta decomposition");
}

/// 1/2 (B2 x B0)_c(f) on [(a,b)+Z^2].
inline Rational ks_order(long c, const Rational& a, const Rational& b) {
    static const Dist2 b2b0 = make_tensor(bernoulli_dist(2), bernoulli_dist(0));
    return eval(c_smooth(b2b0, c), TestFunction::coset({a, b})) / 2;
}

/// zeta^{pi_c(f)} DCyc_c(f) with DCyc_c(f) = DCyc(a,b)^{c^2} / DCyc(ca,cb).
inline CycloNumber ks_leading(long c, const Rational& a, const Rational& b, long m) {
    Rational cq(c);
    Rational pic = eval(pi_c_dist(c), TestFunction::coset({a, b}));
    CycloNumber dc = dcyc_value(a, b, m).pow(c * c) / dcyc_value(cq * a, cq * b, m);
    return CycloNumber::zeta(frac(pic), m) * dc;
}

/// u_c(f) = u(a,b)^{c^2} u(ca,cb)^{-1}.
inline QExpansion u_c_expansion(long c, const Rational& a, const Rational& b, long prec, long m) {
    Rational cq(c);
    detail::ProductForm P = detail::u_form(a, b, prec).pow(c * c);
    P *= detail::u_form(cq * a, cq * b, prec).pow(-1);
    return P.expand(m, prec);
}

/// Checks the q-order, the leading coefficient and the unit part of the Kato-Siegel unit.
inline QCheck verify_ks_decomposition(long c, const Rational& a, const Rational& b, long prec) {
    long m = working_conductor({{a, b}});
    QExpansion ks = detail::ks_form(c, a, b, prec).expand(m, prec).normalized();
    QCheck r;
    Rational ord = ks_order(c, a, b);
    if (ks.leading_exponent() != ord) {
        r.pass = false;
        r.mismatch = ks.leading_exponent();
        r.detail = "q-order " + to_string(ks.leading_exponent()) + " expected " + to_string(ord);
        return r;
    }
    CycloNumber lead = ks_leading(c, a, b, m);
    if (!(ks.leading() == lead)) {
        r.pass = false;
        r.mismatch = ord;
        r.detail = "leading coefficient";
        return r;
    }
    QExpansion unit = lead.inv() * ks.shifted(-ord);
    return compare_expansions(unit, u_c_expansion(c, a, b, prec, m), "unit part");
}

/// Distribution relation u(n x) = prod_{i,j<n} u(x + (i,j)/n); the right side is built by multiplying
/// the translates into u(x) one binomial factor at a time.
inline QCheck verify_u_distribution(const Rational& a, const Rational& b, long n, long prec) {
    Rational nq(n);
    detail::check_nonzero_coset(nq * a, nq * b);
    std::vector<Vec2> offs;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) offs.push_back({a + rat(i, n), b + rat(j, n)});
    offs.push_back({nq * a, nq * b});
    long m = working_conductor(offs);
    offs.pop_back();
    QExpansion lhs = detail::u_form(nq * a, nq * b, prec).expand(m, prec);
    QExpansion rhs = QExpansion::constant(CycloNumber(m, 1), prec);
    for (const auto& v : offs) {
        if (is_integer(v[0]) && is_integer(v[1])) continue;
        detail::ProductForm P = detail::u_form(v[0], v[1], prec);
        std::vector<Binomial> live;
        for (const auto& f : P.factors)
            if (f.y < Rational(prec)) live.push_back(f);
        rhs = rhs.times_binomials(live);
    }
    return compare_expansions(lhs, rhs, "u distribution relation");
}

/// u(f | T) = u(f) | T on a single coset.
inline QCheck verify_u_t_invariance(const Rational& a, const Rational& b, long prec) {
    TestFunction fT = act_right(TestFunction::coset({a, b}), Mat2::T(1));
    Vec2 v = fT.terms().begin()->first;
    long m = working_conductor({{a, b}, v});
    QExpansion lhs = detail::u_form(v[0], v[1], prec).expand(m, prec);
    QExpansion rhs = detail::u_form(a, b, prec).expand(m, prec).t_act();
    return compare_expansions(lhs, rhs, "T-invariance");
}

/// Factored mu_KS^delta(f) = prod_D prod_pieces ks(f^D)(D tau)^{n_D coeff}, using invariance under scalars.
inline detail::ProductForm ks_delta_form(const CocycleParams& P, const TestFunction& f, long prec) {
    P.validate();
    detail::ProductForm out;
    for (auto [D, nD] : P.delta) {
        if (nD == 0) continue;
        for (const auto& pc : detail::z2_pieces(delta_twist(f, D, P.Nset())))
            out *= detail::ks_form(P.c, pc.a, pc.b, prec).substitute(D).pow(nD * to_long(pc.coeff));
    }
    return out;
}

/// Ord_q mu_KS^delta(f), read off the expansion.
inline Rational ks_delta_order(const CocycleParams& P, const TestFunction& f) {
    std::vector<Vec2> vs;
    for (const auto& pc : detail::z2_pieces(f)) vs.push_back({pc.a, pc.b});
    QExpansion e = ks_delta_form(P, f, 2).expand(working_conductor(vs), 2).normalized();
    if (e.leading().is_zero()) throw std::logic_error("expansion vanished to working precision");
    return e.leading_exponent();
}

/// mu_KS^delta(f) = (eta^delta(tau)/eta^delta(p tau))^{2(c^2-1)} for f = sum over (i/p, j/p), i != 0.
inline QCheck eta_delta_identity(const CocycleParams& P, long prec) {
    P.validate();
    long p = P.p, c = P.c;
    std::vector<Term> terms;
    for (long i = 1; i < p; ++i)
        for (long j = 0; j < p; ++j) terms.push_back({Int(1), {{rat(i, p), rat(j, p)}, Lattice()}});
    TestFunction f = TestFunction::canonicalize(terms);
    long m = working_conductor({{rat(1, p), rat(1, p)}});

    // left side: product of individual Kato-Siegel expansions in the series ring
    QExpansion lhs = QExpansion::constant(CycloNumber(m, 1), prec);
    for (auto [D, nD] : P.delta) {
        if (nD == 0) continue;
        for (const auto& pc : detail::z2_pieces(delta_twist(f, D, P.Nset()))) {
            QExpansion k = detail::ks_form(c, pc.a, pc.b, prec).expand(m, prec).substitute(D).truncated(prec);
            long e = nD * to_long(pc.coeff);
            QExpansion base = e < 0 ? qexp_inv(k) : k;
            for (long r = 0; r < std::labs(e); ++r) lhs = qexp_mul(lhs, base);
        }
    }

    // right side: eta quotient prod_D prod_k (1-q^{Dk})^{2 n_D (c^2-1)} (1-q^{pDk})^{-2 n_D (c^2-1)}
    std::vector<Binomial> fs;
    for (auto [D, nD] : P.delta)
        for (long k = 1; k * D < prec; ++k) {
            long e = 2 * nD * (c * c - 1);
            fs.push_back({Rational(k * D), 0, e});
            if (k * D * p < prec) fs.push_back({Rational(k * D * p), 0, -e});
        }
    QExpansion rhs = QExpansion::constant(CycloNumber(m, 1), prec).times_binomials(fs);
    return compare_expansions(lhs, rhs, "eta-delta identity");
}

}  // namespace drc

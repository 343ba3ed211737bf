#pragma once

/*
 * Three cocycles evaluated on (g0, g1, f):
 *
 *  - the Dedekind-Rademacher cocycle DR on G_S, S = primes(c), fixed by its
 *    values on diagonal matrices, T and S and extended by the cocycle rule
 *        DR(Id, w1 w2)(f) = DR(Id, w1)(f) + DR(Id, w2)(f | w1);
 *  - its delta-smoothed variant DR^delta on G_S(N), S = primes(cN), given in
 *    closed form on Gamma_0(N) by Dedekind sums;
 *  - the Darmon-Dasgupta cocycle, given on cusps by a -12 scaled double
 *    Bernoulli sum.
 *
 * Homogeneous pairs (g0, g1) are always reduced to (Id, g0^{-1} g1) acting on f | g0.
 */

#include "drc/dedekind.hpp"
#include "drc/dist.hpp"
#include "drc/word.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace drc {

struct NotSSupported : std::invalid_argument {
    NotSSupported() : std::invalid_argument("test function is not standard at the required primes") {}
};
struct NonIntegerResult : std::logic_error {
    explicit NonIntegerResult(const std::string& v) : std::logic_error("cocycle value is not an integer: " + v) {}
};
struct CuspNotInOrbit : std::invalid_argument {
    CuspNotInOrbit() : std::invalid_argument("cusp denominator is not divisible by N") {}
};
struct ParamsInvalid : std::invalid_argument {
    explicit ParamsInvalid(const std::string& why) : std::invalid_argument("invalid cocycle parameters: " + why) {}
};

struct CocycleParams {
    long c = 7;
    long N = 5;
    long p = 11;
    Delta delta{{1, 5}, {5, -1}};

    void validate() const {
        if (c <= 1 || c % 2 == 0 || c % 3 == 0) throw ParamsInvalid("c must be > 1 and prime to 6");
        if (N <= 1 || std::gcd(N, c) != 1) throw ParamsInvalid("N must be > 1 and prime to c");
        if (!is_prime(p) || N % p == 0 || c % p == 0) throw ParamsInvalid("p must be a prime not dividing cN");
        try {
            check_delta(delta);
        } catch (const DeltaNotAdmissible&) {
            throw ParamsInvalid("delta is not admissible");
        }
        for (auto [D, n] : delta)
            if (N % D != 0) throw ParamsInvalid("every D in delta must divide N");
    }

    PrimeSet S() const { return prime_factors(Int(c)); }
    PrimeSet Nset() const { return prime_factors(Int(c) * N); }
};

// ---------------------------------------------------------------------------
// DR on G_S

namespace detail {

inline const Dist2& b2b0() {
    static const Dist2 d = make_tensor(bernoulli_dist(2), bernoulli_dist(0));
    return d;
}
inline const Dist2& b1b1() {
    static const Dist2 d = make_tensor(bernoulli_dist(1), bernoulli_dist(1));
    return d;
}

}  // namespace detail

/// DR(Id, T)(f) = -1/2 (B2 x B0)_c(f | T) + Psi(f | T - f).
inline Rational dr_T_value(const TestFunction& f, long c) {
    TestFunction fT = act_right(f, Mat2::T());
    Dist2 psi = psi_dist(c);
    return Rational(-1, 2) * eval(c_smooth(detail::b2b0(), c), fT) + eval(psi, fT) - eval(psi, f);
}

/// DR(Id, S)(f) = (B1 x B1)_c(f) + Psi(f | S - f).
inline Rational dr_S_value(const TestFunction& f, long c) {
    Dist2 psi = psi_dist(c);
    return eval(c_smooth(detail::b1b1(), c), f) + eval(psi, act_right(f, Mat2::S())) - eval(psi, f);
}

/// DR(Id, T^k)(f) = -k/2 (B2 x B0)_c(f) + Psi(f | T^k - f): the k-fold sum telescopes and
/// B2 x B0 is T-invariant.
inline Rational dr_T_power_value(const TestFunction& f, const Int& k, long c) {
    if (k == 0) return 0;
    Dist2 psi = psi_dist(c);
    return rat(-k, Int(2)) * eval(c_smooth(detail::b2b0(), c), f) + eval(psi, act_right(f, Mat2::T(Rational(k)))) -
           eval(psi, f);
}

inline Rational dr_word_value(const Word& w, const TestFunction& f, long c);

/// Value of DR(Id, atom) on f.
inline Rational dr_generator_value(const Atom& atom, const TestFunction& f, long c) {
    check_smoothing_integer(c);
    if (!is_away_from_zero(f)) throw SupportAtZero();
    if (!prime_support_ok(f, prime_factors(Int(c)))) throw NotSSupported();
    switch (atom.kind) {
        case Atom::Kind::Diag: return 0;
        case Atom::Kind::T: return dr_T_power_value(f, atom.k, c);
        case Atom::Kind::S:
            if (atom.e == 1) return dr_S_value(f, c);
            // DR(Id, S^-1)(f) = -DR(Id, S)(f | S^-1)
            return -dr_S_value(act_right(f, Mat2::S().inverse()), c);
        case Atom::Kind::Block: return dr_word_value(sl2z_word(atom.block), f, c);
    }
    return 0;
}

/// Folds DR(Id, w1...wn)(f) over the atoms of a word.
inline Rational dr_word_value(const Word& w, const TestFunction& f, long c) {
    Rational total = 0;
    TestFunction g = f;
    for (const auto& a : w) {
        total += dr_generator_value(a, g, c);
        g = act_right(g, a.matrix());
    }
    return total;
}

/// DR(g0, g1)(f) without the integrality assertion.
inline Rational dr_value_unchecked(const Mat2& g0, const Mat2& g1, const TestFunction& f, long c) {
    PrimeSet S = prime_factors(Int(c));
    if (!in_GS(g0, S) || !in_GS(g1, S)) throw NotInGS();
    Mat2 h = g0.inverse() * g1;
    return dr_word_value(gs_decompose(h, S), act_right(f, g0), c);
}

inline Rational dr_value(const Mat2& g0, const Mat2& g1, const TestFunction& f, long c) {
    Rational v = dr_value_unchecked(g0, g1, f, c);
    if (!is_integer(v)) throw NonIntegerResult(to_string(v));
    return v;
}

// ---------------------------------------------------------------------------
// DR^delta on G_S(N)

namespace detail {

struct Piece {
    Int coeff;
    Rational a, b;
};

/// Splits f into Z^2-cosets after rescaling by the scaling index of its lattice.
inline std::vector<Piece> z2_pieces(const TestFunction& f) {
    std::vector<Piece> out;
    if (f.is_zero()) return out;
    Int n = f.lattice().min_scaling_index();
    Rational nq(n);
    std::vector<Vec2> reps = coset_representatives(f.lattice(), Lattice::scalar(nq));
    for (const auto& [v, c] : f.terms())
        for (const auto& w : reps) {
            Vec2 u = v + w;
            out.push_back({c, frac(u[0] / nq), frac(u[1] / nq)});
        }
    return out;
}

inline void check_standard(const TestFunction& f, const PrimeSet& primes) {
    if (!is_away_from_zero(f)) throw SupportAtZero();
    if (!prime_support_ok(f, primes)) throw NotSSupported();
}

}  // namespace detail

/// 12 * Psi^delta(f | gamma - f) / 12, i.e. Psi^delta(f | gamma) - Psi^delta(f).
inline Rational psi_delta_difference(const TestFunction& f, const Mat2& gamma, const CocycleParams& P) {
    PrimeSet T = P.Nset();
    return psi_delta(P.c, P.delta, act_right(f, gamma), T) - psi_delta(P.c, P.delta, f, T);
}

/// sum_D n_D (c^2 C(alpha, beta/D, a, bD) - C(alpha, beta/D, ac, bcD)) on a Z^2-coset.
inline Rational drdelta_dedekind_part(const Cusp& cusp, const Rational& a, const Rational& b, const CocycleParams& P) {
    if (cusp.infinite) return 0;
    Rational cq(P.c), total = 0;
    for (auto [D, n] : P.delta) {
        if (n == 0) continue;
        if (cusp.beta % D != 0) throw CuspNotInOrbit();
        Rational bd = Rational(cusp.beta) / Rational(D), Dq(D);
        total += Rational(n) * (cq * cq * dedekind_C(cusp.alpha, bd, a, b * Dq) -
                                dedekind_C(cusp.alpha, bd, a * cq, b * cq * Dq));
    }
    return total;
}

/// DR^delta(Id, gamma)(f) for gamma in Gamma_0(N).
inline Rational drdelta_gamma0_value(const Mat2& gamma, const TestFunction& f, const CocycleParams& P) {
    if (!in_gamma0(gamma, P.N)) throw NotInGNN();
    detail::check_standard(f, P.Nset());
    Rational total = psi_delta_difference(f, gamma, P);
    Cusp cusp = Cusp::of(gamma);
    if (cusp.infinite) return total;
    for (const auto& pc : detail::z2_pieces(f)) total += Rational(pc.coeff) * drdelta_dedekind_part(cusp, pc.a, pc.b, P);
    return total;
}

inline Rational drdelta_word_value(const Word& w, const TestFunction& f, const CocycleParams& P) {
    Rational total = 0;
    TestFunction g = f;
    for (const auto& a : w) {
        switch (a.kind) {
            case Atom::Kind::Diag: break;
            case Atom::Kind::T:
            case Atom::Kind::S:
            case Atom::Kind::Block: total += drdelta_gamma0_value(a.matrix(), g, P); break;
        }
        g = act_right(g, a.matrix());
    }
    return total;
}

inline Rational dr_delta_value(const Mat2& g0, const Mat2& g1, const TestFunction& f, const CocycleParams& P) {
    PrimeSet T = P.Nset();
    if (!in_GSN(g0, P.N, T) || !in_GSN(g1, P.N, T)) throw NotInGNN();
    Mat2 h = g0.inverse() * g1;
    return drdelta_word_value(gnn_decompose(h, P.N, T), act_right(f, g0), P);
}

// ---------------------------------------------------------------------------
// Darmon-Dasgupta cocycle

namespace detail {

/// Lattice and offsets standard at every prime except p.
inline bool p_supported(const TestFunction& f, long p) {
    auto only_p = [p](const Int& n) { return split_primes(n, {p}).second == 1; };
    const Mat2& h = f.lattice().basis();
    Rational dt = h.det();
    if (!only_p(dt.get_num()) || !only_p(dt.get_den())) return false;
    for (const Rational* x : {&h.a, &h.b, &h.c, &h.d})
        if (!only_p(x->get_den())) return false;
    for (const auto& [v, c] : f.terms())
        if (!only_p(v[0].get_den()) || !only_p(v[1].get_den())) return false;
    return true;
}

}  // namespace detail

/// mu_DD{inf -> alpha/beta}(f) = -12 sum_l B1((alpha/beta)(l+a)+b) sum_D n_D B1((D/beta)(l+a)), summed over Z^2-cosets.
inline Rational dd_cusp_value(const Cusp& cusp, const TestFunction& f, const CocycleParams& P) {
    if (cusp.infinite) return 0;
    if (cusp.beta % P.N != 0) throw CuspNotInOrbit();
    if (!is_away_from_zero(f)) throw SupportAtZero();
    if (!detail::p_supported(f, P.p)) throw NotSSupported();
    long beta = to_long(cusp.beta);
    Rational r = Rational(cusp.alpha) / Rational(cusp.beta), inv_beta = Rational(1) / Rational(cusp.beta);
    Rational total = 0;
    for (const auto& pc : detail::z2_pieces(f)) {
        Rational s = 0;
        for (long ell = 0; ell < beta; ++ell) {
            Rational x = pc.a + Rational(ell), inner = 0;
            for (auto [D, n] : P.delta) inner += Rational(n) * bernoulli(1, Rational(D) * inv_beta * x);
            if (inner != 0) s += bernoulli(1, r * x + pc.b) * inner;
        }
        total += Rational(pc.coeff) * s;
    }
    return Rational(-12) * total;
}

inline Rational dd_value(const Mat2& g0, const Mat2& g1, const TestFunction& f, const CocycleParams& P) {
    return dd_cusp_value(Cusp::of(g1), f, P) - dd_cusp_value(Cusp::of(g0), f, P);
}

/// c^2 dd(f) - dd(D(c) f), the adelic D(c) acting away from the primes of c.
inline Rational dd_c_smoothed(const Mat2& g0, const Mat2& g1, const TestFunction& f, const CocycleParams& P) {
    Rational cq(P.c);
    TestFunction fc = act_adelic(f, Mat2::D(cq), P.S());
    return cq * cq * dd_value(g0, g1, f, P) - dd_value(g0, g1, fc, P);
}

/// 12 Psi^delta(f' | gamma - f') with gamma = g0^{-1} g1 and f' = f | g0.
inline Rational psi_delta_coboundary(const Mat2& g0, const Mat2& g1, const TestFunction& f, const CocycleParams& P) {
    Mat2 h = g0.inverse() * g1;
    return Rational(12) * psi_delta_difference(act_right(f, g0), h, P);
}

/// 12 DR^delta + (mu_DD)_c - 12 Psi^delta coboundary; vanishes identically.
inline Rational compare_main(const Mat2& g0, const Mat2& g1, const TestFunction& f, const CocycleParams& P) {
    return Rational(12) * dr_delta_value(g0, g1, f, P) + dd_c_smoothed(g0, g1, f, P) -
           psi_delta_coboundary(g0, g1, f, P);
}

}  // namespace drc

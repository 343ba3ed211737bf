#pragma once

// Dedekind-Bernoulli sums C(alpha, beta, a, b) and their index helpers.

#include "drc/dist.hpp"

#include <stdexcept>

namespace drc {

struct NonIntegerBeta : std::invalid_argument {
    NonIntegerBeta() : std::invalid_argument("beta must be a positive integer") {}
};

/// Cusp alpha/beta in lowest terms with beta > 0, or infinity.
struct Cusp {
    bool infinite = true;
    Int alpha = 1;
    Int beta = 0;

    static Cusp infinity() { return {}; }
    static Cusp finite(Int a, Int b) {
        if (b == 0) return infinity();
        if (b < 0) {
            a = -a;
            b = -b;
        }
        Int g = gcd(a, b);
        return {false, a / g, b / g};
    }
    /// Image of i*infinity under g, i.e. a/c.
    static Cusp of(const Mat2& g) {
        if (g.c == 0) return infinity();
        Rational r = g.a / g.c;
        return finite(r.get_num(), r.get_den());
    }
};

inline Rational helper_R(const Rational& a, const Int& ell, const Rational& beta) {
    if (beta <= 0) throw std::invalid_argument("beta must be positive");
    return (a + Rational(ell)) / beta;
}

inline Rational helper_Q(const Rational& a, const Rational& b, const Int& ell, const Rational& r) {
    return b + r * (a + Rational(ell));
}

/// sum_{l < beta} B1((a+l)/beta) B1(b + (alpha/beta)(a+l)), periodified B1.
inline Rational dedekind_C(const Int& alpha, const Rational& beta, const Rational& a, const Rational& b) {
    if (!is_integer(beta) || beta <= 0) throw NonIntegerBeta();
    long n = to_long(beta.get_num());
    Rational r = Rational(alpha) / beta, s = 0;
    for (long ell = 0; ell < n; ++ell)
        s += bernoulli(1, helper_R(a, ell, beta)) * bernoulli(1, helper_Q(a, b, ell, r));
    return s;
}

}  // namespace drc

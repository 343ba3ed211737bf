#pragma once

// 2x2 rational matrices acting on row vectors from the right.

#include "drc/rational.hpp"

#include <array>
#include <ostream>
#include <stdexcept>

namespace drc {

using Vec2 = std::array<Rational, 2>;

struct Mat2 {
    Rational a = 1, b = 0, c = 0, d = 1;

    Mat2() = default;
    Mat2(Rational a_, Rational b_, Rational c_, Rational d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Mat2 identity() { return {}; }
    static Mat2 S() { return {0, -1, 1, 0}; }
    static Mat2 T(const Rational& k = 1) { return {1, k, 0, 1}; }
    static Mat2 diag(const Rational& u, const Rational& v) { return {u, 0, 0, v}; }
    static Mat2 UL(const Rational& x) { return diag(x, 1); }
    static Mat2 LR(const Rational& x) { return diag(1, x); }
    static Mat2 D(const Rational& x) { return diag(x, x); }

    Rational det() const { return a * d - b * c; }
    Rational trace() const { return a + d; }

    Mat2 inverse() const {
        Rational dt = det();
        if (dt == 0) throw std::domain_error("singular matrix");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    bool is_integral() const { return is_integer(a) && is_integer(b) && is_integer(c) && is_integer(d); }
    bool is_diagonal() const { return b == 0 && c == 0; }
    bool is_upper() const { return c == 0; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }
    friend std::ostream& operator<<(std::ostream& os, const Mat2& m) {
        return os << "[[" << to_string(m.a) << "," << to_string(m.b) << "],[" << to_string(m.c) << ","
                  << to_string(m.d) << "]]";
    }
};

inline Vec2 operator*(const Vec2& v, const Mat2& m) { return {v[0] * m.a + v[1] * m.c, v[0] * m.b + v[1] * m.d}; }
inline Vec2 operator+(const Vec2& v, const Vec2& w) { return {v[0] + w[0], v[1] + w[1]}; }
inline Vec2 operator-(const Vec2& v, const Vec2& w) { return {v[0] - w[0], v[1] - w[1]}; }
inline Vec2 operator*(const Rational& s, const Vec2& v) { return {s * v[0], s * v[1]}; }

inline Mat2 pow(const Mat2& m, long e) {
    Mat2 base = e < 0 ? m.inverse() : m, out;
    for (long k = e < 0 ? -e : e; k > 0; k >>= 1) {
        if (k & 1) out = out * base;
        base = base * base;
    }
    return out;
}

inline bool in_sl2z(const Mat2& m) { return m.is_integral() && m.det() == 1; }

inline bool in_gamma0(const Mat2& m, long N) { return in_sl2z(m) && m.c.get_num() % N == 0; }

/// Entries integral at `primes` and determinant a positive unit there.
inline bool in_GS(const Mat2& m, const PrimeSet& primes) {
    Rational dt = m.det();
    return dt > 0 && unit_at(dt, primes) && integral_at(m.a, primes) && integral_at(m.b, primes) &&
           integral_at(m.c, primes) && integral_at(m.d, primes);
}

/// G_S(N): in G_S and lower-left entry divisible by N at the primes of N.
inline bool in_GSN(const Mat2& m, long N, const PrimeSet& primes) {
    if (!in_GS(m, primes)) return false;
    if (m.c == 0) return true;
    for (long p : prime_factors(N)) {
        long need = 0;
        for (long n = N; n % p == 0; n /= p) ++need;
        if (valuation(m.c, p) < need) return false;
    }
    return true;
}

}  // namespace drc

#pragma once

/*
 * Exact rationals backed by GMP.
 *
 * mpq_class keeps values canonical (reduced, positive denominator) after every
 * arithmetic operator, so it is used directly as the rational type. This header
 * adds the number-theoretic helpers the rest of the library leans on: floor,
 * fractional part, prime sets, valuations and "p/q" string conversion.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace drc {

using Int = mpz_class;
using Rational = mpq_class;
using PrimeSet = std::set<long>;

inline Rational rat(long n) { return Rational(n); }

inline Rational rat(long n, long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline Rational rat(const Int& n, const Int& d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline Int floor_q(const Rational& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

/// Fractional part in [0,1).
inline Rational frac(const Rational& x) { return x - Rational(floor_q(x)); }

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// Nonnegative remainder of a modulo m (m > 0).
inline Int mod(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (r < 0) r += abs(m);
    return r;
}

/// Returns g = gcd(a,b) and sets x,y with a*x + b*y = g.
inline Int xgcd(const Int& a, const Int& b, Int& x, Int& y) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline long to_long(const Int& n) {
    if (!n.fits_slong_p()) throw std::overflow_error("integer does not fit in a machine word");
    return n.get_si();
}

/// Prime factors of |n| (n != 0), by trial division.
inline PrimeSet prime_factors(Int n) {
    PrimeSet out;
    n = abs(n);
    for (long p = 2; Int(p) * p <= n; ++p) {
        if (n % p == 0) {
            out.insert(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.insert(to_long(n));
    return out;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

/// ell-adic valuation of a nonzero rational.
inline long valuation(const Rational& x, long ell) {
    if (x == 0) throw std::domain_error("valuation of zero");
    long v = 0;
    Int n = x.get_num(), d = x.get_den();
    while (n % ell == 0) { n /= ell; ++v; }
    while (d % ell == 0) { d /= ell; --v; }
    return v;
}

/// True when no prime of `primes` divides the denominator of x.
inline bool integral_at(const Rational& x, const PrimeSet& primes) {
    for (long p : primes)
        if (x.get_den() % p == 0) return false;
    return true;
}

/// True when x is nonzero and neither numerator nor denominator meets `primes`.
inline bool unit_at(const Rational& x, const PrimeSet& primes) {
    if (x == 0) return false;
    for (long p : primes)
        if (x.get_den() % p == 0 || x.get_num() % p == 0) return false;
    return true;
}

/// Splits a positive integer into the part supported on `primes` and the rest.
inline std::pair<Int, Int> split_primes(Int n, const PrimeSet& primes) {
    n = abs(n);
    Int in = 1;
    for (long p : primes) {
        while (n % p == 0) { n /= p; in *= p; }
    }
    return {in, n};
}

inline std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// Parses "p", "p/q", "-p/q" (surrounding blanks allowed).
inline Rational parse_rational(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (ch != ' ' && ch != '\t') s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw std::invalid_argument("bad rational literal: " + raw);
        return Rational(Int(strip_plus(s)));
    }
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!valid_int(n) || !valid_int(d)) throw std::invalid_argument("bad rational literal: " + raw);
    Int den(strip_plus(d));
    if (den == 0) throw std::invalid_argument("zero denominator: " + raw);
    return rat(Int(strip_plus(n)), den);
}

inline Rational pow_q(const Rational& x, long e) {
    if (e == 0) return 1;
    if (e < 0) {
        if (x == 0) throw std::domain_error("zero to a negative power");
        return pow_q(Rational(1) / x, -e);
    }
    Int n, d;
    mpz_pow_ui(n.get_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
    return rat(n, d);
}

inline double to_double(const Rational& x) { return x.get_d(); }

}  // namespace drc

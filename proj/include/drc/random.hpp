#pragma once

// Seeded generators for randomized suites: test functions, words and group elements.

#include "drc/testfn.hpp"
#include "drc/word.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace drc {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }
    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[static_cast<std::size_t>(uniform(0, static_cast<long>(xs.size()) - 1))];
    }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

struct TestFunctionShape {
    std::vector<long> primes{2, 3, 5, 11};  // allowed denominator primes
    int max_exponent = 2;
    int max_terms = 3;
    int max_coeff = 3;
    double lattice_prob = 0.3;  // chance of a non-Z^2 lattice
};

namespace detail {

inline Int random_denominator(Rng& rng, const TestFunctionShape& sh) {
    Int d = 1;
    long k = rng.uniform(1, 2);
    for (long i = 0; i < k; ++i) {
        long p = rng.pick(sh.primes);
        long e = rng.uniform(0, sh.max_exponent);
        for (long j = 0; j < e; ++j) d *= p;
    }
    return d;
}

inline Rational random_unit(Rng& rng, const TestFunctionShape& sh) {
    long p = rng.pick(sh.primes);
    switch (rng.uniform(0, 2)) {
        case 0: return 1;
        case 1: return Rational(p);
        default: return Rational(1, p);
    }
}

}  // namespace detail

/// Z^2 diag(x, y) T^k with x, y in {1, p, 1/p}: small scaling index, only the shape's primes.
inline Lattice random_lattice(Rng& rng, const TestFunctionShape& sh) {
    if (!rng.coin(sh.lattice_prob)) return Lattice();
    Rational x = detail::random_unit(rng, sh), y = detail::random_unit(rng, sh);
    return Lattice(Mat2::diag(x, y) * Mat2::T(rng.uniform(0, 3)));
}

/// 1..max_terms cosets of one random lattice with small coefficients, rejected until nonzero and
/// away from zero.
inline TestFunction random_test_function(Rng& rng, const TestFunctionShape& sh = {}) {
    for (;;) {
        std::vector<Term> terms;
        long n = rng.uniform(1, sh.max_terms);
        Lattice L = random_lattice(rng, sh);
        for (long i = 0; i < n; ++i) {
            Int d = detail::random_denominator(rng, sh);
            Vec2 v{Rational(rng.uniform(0, to_long(d) * 2)) / Rational(d),
                   Rational(rng.uniform(0, to_long(d) * 2)) / Rational(d)};
            long c = 0;
            while (c == 0) c = rng.uniform(-sh.max_coeff, sh.max_coeff);
            terms.push_back({Int(c), {L.reduce(v), L}});
        }
        TestFunction f = TestFunction::canonicalize(terms);
        if (!f.is_zero() && is_away_from_zero(f)) return f;
    }
}

/// Random word of at most `max_len` atoms over S^{+-1}, T^k (|k| <= 5) and positive diagonal
/// entries n^{+-1} with 2 <= n <= 25 prime to S.
inline Word random_gs_word(Rng& rng, const PrimeSet& S, int max_len = 8) {
    std::vector<Rational> units{1};
    for (long n = 2; n <= 25; ++n)
        if (unit_at(Rational(n), S)) {
            units.push_back(Rational(n));
            units.push_back(Rational(1, n));
        }
    Word w;
    long len = rng.uniform(1, max_len);
    for (long i = 0; i < len; ++i) {
        switch (rng.uniform(0, 2)) {
            case 0: w.push_back(Atom::s(rng.coin() ? 1 : -1)); break;
            case 1: {
                long k = 0;
                while (k == 0) k = rng.uniform(-5, 5);
                w.push_back(Atom::t(k));
                break;
            }
            default: {
                Rational u = rng.pick(units), v = rng.pick(units);
                if (u == 1 && v == 1) u = units.back();
                w.push_back(Atom::diag(u, v));
            }
        }
    }
    return w;
}

/// Random element of Gamma_0(N) with entries bounded by `bound` in absolute value.
inline Mat2 random_gamma0(Rng& rng, long N, long bound = 50) {
    for (;;) {
        long c = N * rng.uniform(-bound / N, bound / N);
        long d = rng.uniform(-bound, bound);
        if (d == 0 || std::gcd(c, d) != 1) continue;
        // a d - b c = 1
        Int x, y;
        xgcd(Int(d), Int(c), x, y);  // d x + c y = 1
        Int a = x, b = -y;
        if (c != 0) {
            // shift (a, b) by (c, d) t to make a small
            Int t = floor_q(rat(-a, Int(c)) + Rational(1, 2));
            a += t * c;
            b += t * d;
        } else {
            a = d;  // d = +-1
            b = rng.uniform(-bound, bound);
        }
        if (abs(a) > bound || abs(b) > bound) continue;
        Mat2 g{Rational(a), Rational(b), Rational(c), Rational(d)};
        if (g.det() == 1) return g;
    }
}

}  // namespace drc

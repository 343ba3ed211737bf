#pragma once

/*
 * Distributions on Q and Q^2 given by a base function on Q/Z (resp. Q^2/Z^2)
 * and a weight recording how the diagonal torus acts on values: diag(u,v)
 * multiplies a value by u^j v^k, so the scalar t acts by t^(j+k).
 *
 * A base function sigma is evaluated on a coset [v + L] by choosing the least
 * n with n Z^2 inside L and summing sigma((v + w)/n) over w in L / n Z^2, scaled
 * by n^(j+k).
 */

#include "drc/testfn.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace drc {

struct DegreeTooLarge : std::invalid_argument {
    DegreeTooLarge() : std::invalid_argument("Bernoulli degree above 12") {}
};
struct SupportAtZero : std::invalid_argument {
    SupportAtZero() : std::invalid_argument("test function is not supported away from zero") {}
};
struct BadSmoothingInteger : std::invalid_argument {
    BadSmoothingInteger() : std::invalid_argument("smoothing integer c must satisfy c > 1 and gcd(c,6) = 1") {}
};
struct BadScalingFactor : std::invalid_argument {
    BadScalingFactor() : std::invalid_argument("scaling factor must be nonzero and prime to the working primes") {}
};
struct ZeroCoset : std::invalid_argument {
    ZeroCoset() : std::invalid_argument("coset is the zero class of Q^2/Z^2") {}
};
struct DeltaNotAdmissible : std::invalid_argument {
    DeltaNotAdmissible() : std::invalid_argument("delta must be nonempty with sum of n_D * D equal to 0") {}
};

inline constexpr int kMaxBernoulliDegree = 12;

/// Bernoulli numbers B_0..B_12 with B_1 = -1/2.
inline const std::array<Rational, kMaxBernoulliDegree + 1>& bernoulli_numbers() {
    static const std::array<Rational, kMaxBernoulliDegree + 1> B = [] {
        std::array<Rational, kMaxBernoulliDegree + 1> b;
        b[0] = 1;
        for (int m = 1; m <= kMaxBernoulliDegree; ++m) {
            // sum_{k<=m} C(m+1,k) B_k = 0
            Rational s = 0;
            Int binom = 1;
            for (int k = 0; k < m; ++k) {
                s += Rational(binom) * b[static_cast<std::size_t>(k)];
                binom = binom * (m + 1 - k) / (k + 1);
            }
            b[static_cast<std::size_t>(m)] = -s / Rational(m + 1);
        }
        return b;
    }();
    return B;
}

/// Bernoulli polynomial B_r(x), not periodified.
inline Rational bernoulli_poly(int r, const Rational& x) {
    if (r < 0) throw std::invalid_argument("negative Bernoulli degree");
    if (r > kMaxBernoulliDegree) throw DegreeTooLarge();
    const auto& B = bernoulli_numbers();
    Rational s = 0, xp = 1;
    Int binom = 1;  // C(r, r-k) built from k = r downwards
    std::vector<Rational> powers(static_cast<std::size_t>(r) + 1);
    for (int i = 0; i <= r; ++i) {
        powers[static_cast<std::size_t>(i)] = xp;
        xp *= x;
    }
    for (int k = 0; k <= r; ++k) {
        s += Rational(binom) * B[static_cast<std::size_t>(k)] * powers[static_cast<std::size_t>(r - k)];
        binom = binom * (r - k) / (k + 1);
    }
    return s;
}

/// Periodified Bernoulli function; the degree 1 function vanishes on integers.
inline Rational bernoulli(int r, const Rational& x) {
    if (r == 1 && is_integer(x)) return 0;
    return bernoulli_poly(r, frac(x));
}

/// <x> - 1/2.
inline Rational b1_frac(const Rational& x) { return frac(x) - Rational(1, 2); }

inline Rational delta0(const Rational& x) { return is_integer(x) ? 1 : 0; }

namespace detail {
inline void check_nonzero_coset(const Rational& a, const Rational& b) {
    if (is_integer(a) && is_integer(b)) throw ZeroCoset();
}
}  // namespace detail

inline void check_smoothing_integer(long c) {
    if (c <= 1 || c % 2 == 0 || c % 3 == 0) throw BadSmoothingInteger();
}

struct Weight {
    int j = 0;
    int k = 0;
    int total() const { return j + k; }
};

/// Distribution on Q given by a base function on Q/Z of weight j.
struct Dist1 {
    std::string name;
    std::function<Rational(const Rational&)> sigma;
    int weight = 0;
    bool away_from_zero_only = false;
    long dilation = 1;  // distribution relation holds for scalings prime to this
    // Optional closed form: sigma(x) = sum_i poly[i] <dilation x>^i off the integers, at_integers on them.
    std::vector<Rational> poly;
    Rational at_integers = 0;
    bool has_poly = false;
};

struct TensorTerm;

/// Distribution on Q^2 given by a base function on Q^2/Z^2. When `tensor` is nonempty the
/// distribution equals that sum of products of rank-1 distributions and is evaluated through it.
struct Dist2 {
    std::string name;
    std::function<Rational(const Rational&, const Rational&)> sigma;
    Weight weight;
    bool away_from_zero_only = false;
    std::vector<TensorTerm> tensor;
};

struct TensorTerm {
    Rational coeff;
    Dist1 x, y;
};

/// x -> sigma(c x), again a distribution of the same weight on scalings prime to c.
inline Dist1 dilate(const Dist1& mu, long c) {
    auto s = mu.sigma;
    Rational cq(c);
    return {mu.name + "(" + std::to_string(c) + "x)", [s, cq](const Rational& x) -> Rational { return s(frac(cq * x)); },
            mu.weight, mu.away_from_zero_only, mu.dilation * c, mu.poly, mu.at_integers, mu.has_poly};
}

inline Dist1 bernoulli_dist(int r) {
    if (r < 0) throw std::invalid_argument("negative Bernoulli degree");
    if (r > kMaxBernoulliDegree) throw DegreeTooLarge();
    Dist1 d;
    d.name = "B" + std::to_string(r);
    d.sigma = [r](const Rational& x) { return bernoulli(r, x); };
    d.weight = r - 1;
    const auto& B = bernoulli_numbers();
    d.poly.assign(static_cast<std::size_t>(r) + 1, Rational(0));
    Int binom = 1;  // C(r, i)
    for (int i = 0; i <= r; ++i) {
        d.poly[static_cast<std::size_t>(i)] = Rational(binom) * B[static_cast<std::size_t>(r - i)];
        binom = binom * (r - i) / (i + 1);
    }
    d.at_integers = r == 1 ? Rational(0) : B[static_cast<std::size_t>(r)];
    d.has_poly = true;
    return d;
}

inline Dist1 delta0_dist() {
    Dist1 d;
    d.name = "delta0";
    d.sigma = [](const Rational& x) { return delta0(x); };
    d.at_integers = 1;
    d.has_poly = true;
    return d;
}

/// The non-periodified degree 1 Bernoulli function, B1 - delta0/2.
inline Dist1 b1frac_dist() {
    Dist1 d;
    d.name = "B1frac";
    d.sigma = [](const Rational& x) { return b1_frac(x); };
    d.poly = {Rational(-1, 2), Rational(1)};
    d.at_integers = Rational(-1, 2);
    d.has_poly = true;
    return d;
}

inline Dist2 make_tensor(const Dist1& s1, const Dist1& s2) {
    auto f1 = s1.sigma, f2 = s2.sigma;
    return {s1.name + "x" + s2.name, [f1, f2](const Rational& a, const Rational& b) -> Rational { return f1(a) * f2(b); },
            {s1.weight, s2.weight}, s1.away_from_zero_only || s2.away_from_zero_only, {{Rational(1), s1, s2}}};
}

inline Rational sigma_pi_c(long c, const Rational& a, const Rational& b) {
    check_smoothing_integer(c);
    Rational cq(c);
    return b1_frac(b * cq) * (cq * b1_frac(a) - b1_frac(a * cq));
}

inline Rational sigma_psi(long c, const Rational& a, const Rational& b) {
    check_smoothing_integer(c);
    Rational cq(c);
    return sigma_pi_c(c, a, b) +
           Rational(1, 2) * (cq * cq * delta0(a) * bernoulli(1, b) - delta0(cq * a) * bernoulli(1, cq * b));
}

namespace detail {

inline std::vector<TensorTerm> pi_c_tensor(long c) {
    Dist1 b1f = b1frac_dist(), b1fc = dilate(b1f, c);
    return {{Rational(c), b1f, b1fc}, {Rational(-1), b1fc, b1fc}};
}

}  // namespace detail

inline Dist2 pi_c_dist(long c) {
    check_smoothing_integer(c);
    return {"pi_" + std::to_string(c), [c](const Rational& a, const Rational& b) { return sigma_pi_c(c, a, b); },
            {0, 0}, true, detail::pi_c_tensor(c)};
}

inline Dist2 psi_dist(long c) {
    check_smoothing_integer(c);
    auto t = detail::pi_c_tensor(c);
    Dist1 d0 = delta0_dist(), b1 = bernoulli_dist(1);
    Rational cq(c);
    t.push_back({cq * cq / 2, d0, b1});
    t.push_back({Rational(-1, 2), dilate(d0, c), dilate(b1, c)});
    return {"Psi_" + std::to_string(c), [c](const Rational& a, const Rational& b) { return sigma_psi(c, a, b); },
            {0, 0}, true, std::move(t)};
}

/// Rank-1 evaluation on the coset [x + m Z] (m > 0 rational).
inline Rational eval1(const Dist1& mu, const Rational& x, const Rational& m = 1) {
    if (m <= 0) throw std::invalid_argument("rank-1 lattice generator must be positive");
    if (mu.away_from_zero_only && is_integer(x / m)) throw SupportAtZero();
    if (gcd(m.get_den(), Int(mu.dilation)) == 1) return pow_q(m, mu.weight) * mu.sigma(frac(x / m));
    Int n = m.get_num();  // least n with nZ inside mZ
    long q = to_long(m.get_den());
    Rational nq(n), s = 0;
    for (long k = 0; k < q; ++k) s += mu.sigma(frac((x + Rational(k) * m) / nq));
    return s * pow_q(nq, mu.weight);
}

namespace detail {

inline Int from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    Int hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u));
    Int r = (hi << 64) + lo;
    return neg ? Int(-r) : r;
}

inline int bit_length(const Int& n) { return n == 0 ? 0 : static_cast<int>(mpz_sizeinbase(n.get_mpz_t(), 2)); }

/// sum_{j<k} sx(u + j us) sy(v + j vs) for piecewise polynomial factors, by integer moment sums.
/// Returns false when the moments might not fit in 128 bits.
inline bool box_sum_poly(const Dist1& sx, const Dist1& sy, const Rational& u, const Rational& us, const Rational& v,
                         const Rational& vs, long k, Rational& out) {
    Rational cu = frac(Rational(sx.dilation) * u), cus = frac(Rational(sx.dilation) * us);
    Rational cv = frac(Rational(sy.dilation) * v), cvs = frac(Rational(sy.dilation) * vs);
    Int Lx = lcm(cu.get_den(), cus.get_den()), Ly = lcm(cv.get_den(), cvs.get_den());
    int dx = static_cast<int>(sx.poly.size()), dy = static_cast<int>(sy.poly.size());
    int bits = bit_length(Lx) * std::max(dx - 1, 0) + bit_length(Ly) * std::max(dy - 1, 0) + bit_length(Int(k)) + 2;
    if (bit_length(Lx) > 61 || bit_length(Ly) > 61 || bits > 125) return false;
    long lx = to_long(Lx), ly = to_long(Ly);
    long X = to_long(Rational(cu * Rational(Lx)).get_num()), BX = to_long(Rational(cus * Rational(Lx)).get_num());
    long Y = to_long(Rational(cv * Rational(Ly)).get_num()), BY = to_long(Rational(cvs * Rational(Ly)).get_num());
    std::vector<__int128> M(static_cast<std::size_t>(std::max(dx, 1) * std::max(dy, 1)), 0);
    std::vector<__int128> ZX(static_cast<std::size_t>(std::max(dy, 1)), 0), ZY(static_cast<std::size_t>(std::max(dx, 1)), 0);
    __int128 Z0 = 0;
    std::vector<__int128> px(static_cast<std::size_t>(std::max(dx, 1))), py(static_cast<std::size_t>(std::max(dy, 1)));
    for (long j = 0; j < k; ++j) {
        if (X != 0 || Y != 0) {
            __int128 p = 1;
            for (int i = 0; i < dx; ++i, p *= X) px[static_cast<std::size_t>(i)] = p;
            p = 1;
            for (int i = 0; i < dy; ++i, p *= Y) py[static_cast<std::size_t>(i)] = p;
        }
        if (X != 0 && Y != 0) {
            for (int i = 0; i < dx; ++i)
                for (int l = 0; l < dy; ++l) M[static_cast<std::size_t>(i * dy + l)] += px[static_cast<std::size_t>(i)] * py[static_cast<std::size_t>(l)];
        } else if (X == 0 && Y != 0) {
            for (int l = 0; l < dy; ++l) ZX[static_cast<std::size_t>(l)] += py[static_cast<std::size_t>(l)];
        } else if (X != 0) {
            for (int i = 0; i < dx; ++i) ZY[static_cast<std::size_t>(i)] += px[static_cast<std::size_t>(i)];
        } else {
            ++Z0;
        }
        X += BX;
        if (X >= lx) X -= lx;
        Y += BY;
        if (Y >= ly) Y -= ly;
    }
    std::vector<Rational> ix(static_cast<std::size_t>(std::max(dx, 1))), iy(static_cast<std::size_t>(std::max(dy, 1)));
    for (int i = 0; i < dx; ++i) ix[static_cast<std::size_t>(i)] = sx.poly[static_cast<std::size_t>(i)] / pow_q(Rational(Lx), i);
    for (int l = 0; l < dy; ++l) iy[static_cast<std::size_t>(l)] = sy.poly[static_cast<std::size_t>(l)] / pow_q(Rational(Ly), l);
    Rational s = 0;
    for (int i = 0; i < dx; ++i)
        for (int l = 0; l < dy; ++l) {
            __int128 m = M[static_cast<std::size_t>(i * dy + l)];
            if (m != 0) s += ix[static_cast<std::size_t>(i)] * iy[static_cast<std::size_t>(l)] * Rational(from_i128(m));
        }
    if (sx.at_integers != 0)
        for (int l = 0; l < dy; ++l)
            if (ZX[static_cast<std::size_t>(l)] != 0) s += sx.at_integers * iy[static_cast<std::size_t>(l)] * Rational(from_i128(ZX[static_cast<std::size_t>(l)]));
    if (sy.at_integers != 0)
        for (int i = 0; i < dx; ++i)
            if (ZY[static_cast<std::size_t>(i)] != 0) s += sy.at_integers * ix[static_cast<std::size_t>(i)] * Rational(from_i128(ZY[static_cast<std::size_t>(i)]));
    s += sx.at_integers * sy.at_integers * Rational(from_i128(Z0));
    out = s;
    return true;
}

/// Sum of products over [v + L] split into boxes (x + aZ) x (y + k d Z), L with HNF rows (a,0), (c,d).
inline Rational eval_tensor(const std::vector<TensorTerm>& tensor, const TestFunction& f) {
    const Mat2& h = f.lattice().basis();
    Rational a = h.a, c = h.c, d = h.d;
    Int k = Rational(c / a).get_den();
    Rational kd = Rational(k) * d, total = 0;
    for (const auto& [v, coeff] : f.terms()) {
        Rational s = 0;
        for (const auto& t : tensor) {
            // Box j contributes a^wx sx((v0 + j c)/a) (kd)^wy sy((v1 + j d)/(kd)).
            Rational part;
            bool fast = t.x.has_poly && t.y.has_poly && k.fits_slong_p() &&
                        gcd(a.get_den(), Int(t.x.dilation)) == 1 && gcd(kd.get_den(), Int(t.y.dilation)) == 1 &&
                        box_sum_poly(t.x, t.y, v[0] / a, c / a, v[1] / kd, Rational(1) / Rational(k), to_long(k), part);
            if (fast) {
                s += t.coeff * pow_q(a, t.x.weight) * pow_q(kd, t.y.weight) * part;
                continue;
            }
            for (Int j = 0; j < k; ++j) {
                Rational ex = eval1(t.x, v[0] + Rational(j) * c, a);
                if (ex != 0) s += t.coeff * ex * eval1(t.y, v[1] + Rational(j) * d, kd);
            }
        }
        total += Rational(coeff) * s;
    }
    return total;
}

}  // namespace detail

inline Rational eval_enumerated(const Dist2& mu, const TestFunction& f);

/// Evaluates a rank-2 distribution on a test function.
inline Rational eval(const Dist2& mu, const TestFunction& f) {
    if (f.is_zero()) return 0;
    if (mu.away_from_zero_only && !is_away_from_zero(f)) throw SupportAtZero();
    if (!mu.tensor.empty()) return detail::eval_tensor(mu.tensor, f);
    return eval_enumerated(mu, f);
}

/// Evaluation by enumerating L / nZ^2 for the least n with nZ^2 inside L.
inline Rational eval_enumerated(const Dist2& mu, const TestFunction& f) {
    if (f.is_zero()) return 0;
    const Lattice& L = f.lattice();
    Int n = L.min_scaling_index();
    Rational nq(n);
    std::vector<Vec2> reps = coset_representatives(L, Lattice::scalar(nq));
    Rational total = 0;
    for (const auto& [v, c] : f.terms()) {
        Rational s = 0;
        for (const auto& w : reps) {
            Vec2 u = v + w;
            s += mu.sigma(frac(u[0] / nq), frac(u[1] / nq));
        }
        total += Rational(c) * s;
    }
    return total * pow_q(nq, mu.weight.total());
}

/// Checks sum over w with t w = v of sigma(w) equals t^(-j-k) sigma(v).
inline bool validate_distribution_relation(const Dist2& mu, long t, const Vec2& v, const PrimeSet& S = {}) {
    if (t == 0) throw BadScalingFactor();
    for (long p : S)
        if (t % p == 0) throw BadScalingFactor();
    long at = t < 0 ? -t : t;
    Rational tq(t), lhs = 0;
    for (long i = 0; i < at; ++i)
        for (long j = 0; j < at; ++j) lhs += mu.sigma(frac((v[0] + i) / tq), frac((v[1] + j) / tq));
    Rational rhs = pow_q(tq, -mu.weight.total()) * mu.sigma(frac(v[0]), frac(v[1]));
    return lhs == rhs;
}

inline bool validate_distribution_relation(const Dist1& mu, long t, const Rational& v, const PrimeSet& S = {}) {
    if (t == 0) throw BadScalingFactor();
    for (long p : S)
        if (t % p == 0) throw BadScalingFactor();
    long at = t < 0 ? -t : t;
    Rational tq(t), lhs = 0;
    for (long i = 0; i < at; ++i) lhs += mu.sigma(frac((v + i) / tq));
    return lhs == pow_q(tq, -mu.weight) * mu.sigma(frac(v));
}

/// c-smoothing at the level of base functions: c^2 sigma(x) - c^(-j-k) sigma(c x).
inline Dist2 c_smooth(const Dist2& mu, long c) {
    if (c <= 1) throw BadSmoothingInteger();
    auto s = mu.sigma;
    Rational cq(c), tw = pow_q(cq, -mu.weight.total());
    std::vector<TensorTerm> t;
    for (const auto& term : mu.tensor) {
        t.push_back({cq * cq * term.coeff, term.x, term.y});
        t.push_back({-tw * term.coeff, dilate(term.x, c), dilate(term.y, c)});
    }
    return {mu.name + "_c" + std::to_string(c),
            [s, cq, tw](const Rational& a, const Rational& b) -> Rational {
                return cq * cq * s(a, b) - tw * s(frac(cq * a), frac(cq * b));
            },
            mu.weight, mu.away_from_zero_only, std::move(t)};
}

/// c-smoothing evaluated through the adelic action of D(c) away from S.
inline Rational c_smooth_eval(const Dist2& mu, long c, const PrimeSet& S, const TestFunction& f) {
    if (c <= 1) throw BadSmoothingInteger();
    Rational cq(c);
    return cq * cq * eval(mu, f) -
           pow_q(cq, -mu.weight.total()) * eval(mu, act_adelic(f, Mat2::D(cq), S));
}

/// Admissible delta: nonempty, positive D, sum of n_D * D equal to zero.
using Delta = std::map<long, long>;

inline void check_delta(const Delta& delta) {
    if (delta.empty()) throw DeltaNotAdmissible();
    long s = 0;
    for (auto [D, n] : delta) {
        if (D <= 0) throw DeltaNotAdmissible();
        s += D * n;
    }
    if (s != 0) throw DeltaNotAdmissible();
}

/// f^D: the adelic action of LR(D) away from `T`.
inline TestFunction delta_twist(const TestFunction& f, long D, const PrimeSet& T) {
    return act_adelic(f, Mat2::LR(Rational(D)), T);
}

/// Psi^delta(f) = sum_D n_D Psi(f^D), with f^D computed away from the primes `T` of cN.
inline Rational psi_delta(long c, const Delta& delta, const TestFunction& f, const PrimeSet& T) {
    check_delta(delta);
    Dist2 psi = psi_dist(c);
    Rational total = 0;
    for (auto [D, n] : delta) {
        if (n == 0) continue;
        total += Rational(n) * eval(psi, delta_twist(f, D, T));
    }
    return total;
}

}  // namespace drc

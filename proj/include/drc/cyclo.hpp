#pragma once

// Exact arithmetic in Q(zeta_m), stored in the power basis 1, z, ..., z^{phi(m)-1} mod Phi_m.

#include "drc/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace drc {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero in cyclotomic field") {}
};

struct ConductorOverflow : std::invalid_argument {
    ConductorOverflow() : std::invalid_argument("root of unity does not lie in the working cyclotomic field") {}
};

namespace detail {

using Poly = std::vector<Rational>;  // low degree first

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Integer coefficients of the m-th cyclotomic polynomial, cached.
inline const std::vector<long>& cyclotomic_poly(long m) {
    static std::map<long, std::vector<long>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // x^m - 1 divided by Phi_d for every proper divisor d
    std::vector<long> num(static_cast<std::size_t>(m + 1), 0);
    num[0] = -1;
    num[static_cast<std::size_t>(m)] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d) continue;
        const auto& den = cyclotomic_poly(d);
        std::size_t dn = den.size() - 1;
        std::vector<long> q(num.size() - dn, 0);
        for (std::size_t i = num.size() - 1; i + 1 > dn; --i) {
            long c = num[i];  // Phi_d is monic
            q[i - dn] = c;
            if (c)
                for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
            if (i == dn) break;
        }
        num = q;
    }
    return cache.emplace(m, num).first->second;
}

inline long euler_phi(long m) { return static_cast<long>(cyclotomic_poly(m).size()) - 1; }

/// Reduce a polynomial in place modulo Phi_m; result has exactly phi(m) entries.
inline void reduce_mod_phi(Poly& p, long m) {
    const auto& phi = cyclotomic_poly(m);
    std::size_t deg = phi.size() - 1;
    for (std::size_t i = p.size(); i-- > deg;) {
        if (p[i] == 0) continue;
        Rational c = p[i];
        for (std::size_t j = 0; j <= deg; ++j)
            if (phi[j]) p[i - deg + j] -= c * phi[j];
    }
    p.resize(deg);
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

/// Quotient and remainder of a by b (b nonzero, trimmed).
inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    Poly q(a.size() - b.size() + 1);
    for (std::size_t i = a.size(); i-- >= b.size();) {
        Rational c = a[i] / b.back();
        q[i - b.size() + 1] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] -= c * b[j];
        if (i == b.size() - 1) break;
    }
    trim(a);
    return {q, a};
}

}  // namespace detail

class CycloNumber {
public:
    CycloNumber() : CycloNumber(1) {}
    explicit CycloNumber(long m, const Rational& r = 0) : m_(m), c_(static_cast<std::size_t>(detail::euler_phi(m))) {
        if (m < 1) throw std::invalid_argument("conductor must be positive");
        c_[0] = r;
    }

    /// zeta^x = e^{2 pi i x}; x must lie in (1/m)Z.
    static CycloNumber zeta(const Rational& x, long m) {
        Rational k = x * Rational(m);
        if (!is_integer(k)) throw ConductorOverflow();
        return power_of_root(to_long(mod(k.get_num(), Int(m))), m);
    }

    /// zeta_m^k for 0 <= k < m.
    static CycloNumber power_of_root(long k, long m) {
        detail::Poly p(static_cast<std::size_t>(std::max(k + 1, detail::euler_phi(m))));
        p[static_cast<std::size_t>(k)] = 1;
        return from_poly(std::move(p), m);
    }

    /// Polynomial in zeta_m of any degree; reduced here.
    static CycloNumber from_poly(detail::Poly p, long m) {
        CycloNumber r(m);
        detail::reduce_mod_phi(p, m);
        r.c_ = std::move(p);
        return r;
    }

    long conductor() const { return m_; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    /// Same number viewed in Q(zeta_M), m | M.
    CycloNumber lift(long M) const {
        if (M == m_) return *this;
        if (M % m_) throw ConductorOverflow();
        long s = M / m_;
        detail::Poly p(static_cast<std::size_t>(std::max<long>(static_cast<long>(c_.size() - 1) * s + 1, detail::euler_phi(M))));
        for (std::size_t i = 0; i < c_.size(); ++i) p[i * static_cast<std::size_t>(s)] = c_[i];
        return from_poly(std::move(p), M);
    }

    friend CycloNumber operator+(const CycloNumber& x, const CycloNumber& y) { return combine(x, y, 1); }
    friend CycloNumber operator-(const CycloNumber& x, const CycloNumber& y) { return combine(x, y, -1); }
    CycloNumber operator-() const {
        CycloNumber r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend CycloNumber operator*(const CycloNumber& x, const CycloNumber& y) {
        long M = to_long(lcm(Int(x.m_), Int(y.m_)));
        CycloNumber a = x.lift(M), b = y.lift(M);
        return from_poly(detail::poly_mul(a.c_, b.c_), M);
    }
    friend CycloNumber operator*(const Rational& s, const CycloNumber& x) {
        CycloNumber r = x;
        for (auto& v : r.c_) v *= s;
        return r;
    }
    friend bool operator==(const CycloNumber& x, const CycloNumber& y) {
        if (x.m_ == y.m_) return x.c_ == y.c_;
        long M = to_long(lcm(Int(x.m_), Int(y.m_)));
        return x.lift(M).c_ == y.lift(M).c_;
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_m.
    CycloNumber inv() const {
        if (is_zero()) throw DivisionByZero();
        const auto& phi = detail::cyclotomic_poly(m_);
        detail::Poly r0(phi.begin(), phi.end()), r1 = c_, s0, s1{Rational(1)};
        detail::trim(r1);
        // invariant: s_i * x == r_i  (mod Phi_m)
        while (r1.size() > 1) {
            auto [q, r] = detail::poly_divmod(r0, r1);
            detail::Poly qs = detail::poly_mul(q, s1), s2(std::max(s0.size(), qs.size()));
            for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
            for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        Rational k = r1[0];
        for (auto& v : s1) v /= k;
        return from_poly(std::move(s1), m_);
    }

    friend CycloNumber operator/(const CycloNumber& x, const CycloNumber& y) { return x * y.inv(); }

    CycloNumber pow(long e) const {
        if (e < 0) return inv().pow(-e);
        CycloNumber r(m_, 1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    /// "a0 + a1*z + ..." with z = zeta_m.
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += "(" + drc::to_string(c_[i]) + ")";
            if (i) s += "*z" + std::to_string(m_) + "^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    static CycloNumber combine(const CycloNumber& x, const CycloNumber& y, int sign) {
        long M = to_long(lcm(Int(x.m_), Int(y.m_)));
        CycloNumber a = x.lift(M), b = y.lift(M);
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += sign > 0 ? b.c_[i] : Rational(-b.c_[i]);
        return a;
    }

    long m_;
    std::vector<Rational> c_;
};

inline CycloNumber cyclo_mul(const CycloNumber& x, const CycloNumber& y) { return x * y; }
inline CycloNumber cyclo_inv(const CycloNumber& x) { return x.inv(); }

namespace detail {

/// Element of the group ring Q[Z/m]: zeta-shifts are rotations, reduction to Q(zeta_m) is deferred.
struct GroupRingElt {
    std::vector<Rational> c;

    explicit GroupRingElt(long m = 1) : c(static_cast<std::size_t>(m)) {}
    static GroupRingElt from(const CycloNumber& x) {
        GroupRingElt g(x.conductor());
        for (std::size_t i = 0; i < x.coords().size(); ++i) g.c[i] = x.coords()[i];
        return g;
    }
    /// this += s * zeta^k * y
    void add_shifted(const GroupRingElt& y, long k, const Rational& s) {
        std::size_t m = c.size();
        for (std::size_t i = 0; i < m; ++i)
            if (y.c[i] != 0) c[(i + static_cast<std::size_t>(k)) % m] += s * y.c[i];
    }
    bool is_zero() const {
        for (const auto& v : c)
            if (v != 0) return false;
        return true;
    }
    CycloNumber reduce() const { return CycloNumber::from_poly(c, static_cast<long>(c.size())); }
};

}  // namespace detail

}  // namespace drc

#pragma once

// Truncated q-expansions sum_k c_k q^{e + k/n} + O(q^{e + L/n}) with coefficients in Q(zeta_m).

#include "drc/cyclo.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace drc {

struct NonUnitLeading : std::domain_error {
    NonUnitLeading() : std::domain_error("leading coefficient is not invertible") {}
};

/// (1 - zeta^x q^y)^k with y > 0.
struct Binomial {
    Rational y;
    Rational x;
    long k = 1;
};

class QExpansion {
public:
    QExpansion() = default;

    /// Constant `c` known to relative precision `prec` (in powers of q).
    static QExpansion constant(const CycloNumber& c, long prec, long n = 1) {
        return monomial(0, c, prec, n);
    }
    /// c q^e + O(q^{e + prec}).
    static QExpansion monomial(const Rational& e, const CycloNumber& c, long prec, long n = 1) {
        if (prec < 1 || n < 1) throw std::invalid_argument("precision and exponent denominator must be positive");
        QExpansion r;
        r.m_ = c.conductor();
        r.n_ = n;
        r.e_ = e;
        r.c_.assign(static_cast<std::size_t>(prec * n), CycloNumber(r.m_));
        r.c_[0] = c;
        return r;
    }
    /// Coefficient list starting at exponent e with step 1/n.
    static QExpansion from_coeffs(const Rational& e, long n, std::vector<CycloNumber> coeffs) {
        if (coeffs.empty() || n < 1) throw std::invalid_argument("empty expansion");
        QExpansion r;
        r.n_ = n;
        r.e_ = e;
        r.m_ = 1;
        for (const auto& c : coeffs) r.m_ = to_long(lcm(Int(r.m_), Int(c.conductor())));
        for (auto& c : coeffs) c = c.lift(r.m_);
        r.c_ = std::move(coeffs);
        return r;
    }

    long conductor() const { return m_; }
    long exp_den() const { return n_; }
    const Rational& leading_exponent() const { return e_; }
    std::size_t length() const { return c_.size(); }
    /// Relative precision in powers of q.
    Rational rel_precision() const { return rat(static_cast<long>(c_.size()), n_); }
    /// Exponent of the first unknown coefficient.
    Rational abs_precision() const { return e_ + rel_precision(); }
    const std::vector<CycloNumber>& coeffs() const { return c_; }
    const CycloNumber& leading() const { return c_.front(); }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    /// Coefficient of q^x, or nullopt beyond the known precision.
    std::optional<CycloNumber> coeff(const Rational& x) const {
        Rational k = (x - e_) * Rational(n_);
        if (x >= abs_precision()) return std::nullopt;
        if (!is_integer(k) || k < 0) return CycloNumber(m_);
        return c_[static_cast<std::size_t>(to_long(k.get_num()))];
    }

    /// Drop leading zero coefficients (precision shrinks accordingly).
    QExpansion normalized() const {
        QExpansion r = *this;
        std::size_t z = 0;
        while (z + 1 < r.c_.size() && r.c_[z].is_zero()) ++z;
        if (z == 0) return r;
        r.c_.erase(r.c_.begin(), r.c_.begin() + static_cast<long>(z));
        r.e_ += rat(static_cast<long>(z), n_);
        return r;
    }

    /// Same series on a finer exponent grid 1/n' and working field Q(zeta_m').
    QExpansion refined(long n2, long m2) const {
        if (n2 % n_ || m2 % m_) throw std::invalid_argument("refinement must divide");
        long s = n2 / n_;
        QExpansion r;
        r.n_ = n2;
        r.m_ = m2;
        r.e_ = e_;
        r.c_.assign(c_.size() * static_cast<std::size_t>(s), CycloNumber(m2));
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * static_cast<std::size_t>(s)] = c_[i].lift(m2);
        return r;
    }

    QExpansion truncated(const Rational& rel_prec) const {
        QExpansion r = *this;
        Rational L = rel_prec * Rational(n_);
        long l = to_long(floor_q(L));
        if (l < static_cast<long>(r.c_.size())) r.c_.resize(static_cast<std::size_t>(std::max(l, 1L)), CycloNumber(m_));
        return r;
    }

    friend QExpansion operator*(const QExpansion& A, const QExpansion& B) {
        long n = to_long(lcm(Int(A.n_), Int(B.n_))), m = to_long(lcm(Int(A.m_), Int(B.m_)));
        QExpansion a = A.refined(n, m), b = B.refined(n, m);
        std::size_t L = std::min(a.c_.size(), b.c_.size());
        QExpansion r;
        r.n_ = n;
        r.m_ = m;
        r.e_ = a.e_ + b.e_;
        std::vector<detail::Poly> acc(L);
        for (std::size_t i = 0; i < L; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < L; ++j) {
                if (b.c_[j].is_zero()) continue;
                detail::Poly p = detail::poly_mul(a.c_[i].coords(), b.c_[j].coords());
                auto& t = acc[i + j];
                if (t.size() < p.size()) t.resize(p.size());
                for (std::size_t k = 0; k < p.size(); ++k) t[k] += p[k];
            }
        }
        r.c_.reserve(L);
        for (auto& p : acc) {
            if (p.size() < static_cast<std::size_t>(detail::euler_phi(m))) p.resize(static_cast<std::size_t>(detail::euler_phi(m)));
            r.c_.push_back(CycloNumber::from_poly(std::move(p), m));
        }
        return r;
    }

    friend QExpansion operator*(const CycloNumber& s, const QExpansion& A) {
        QExpansion r = A;
        long m = to_long(lcm(Int(A.m_), Int(s.conductor())));
        r.m_ = m;
        for (auto& c : r.c_) c = c.lift(m) * s;
        return r;
    }

    /// q^t * A.
    QExpansion shifted(const Rational& t) const {
        QExpansion r = *this;
        r.e_ += t;
        return r;
    }

    /// Multiplicative inverse; the leading coefficient must be nonzero.
    QExpansion inv() const {
        if (c_.empty() || c_.front().is_zero()) throw NonUnitLeading();
        CycloNumber l0 = c_.front().inv();
        std::size_t L = c_.size();
        std::vector<CycloNumber> b(L, CycloNumber(m_));
        b[0] = l0;
        for (std::size_t k = 1; k < L; ++k) {
            CycloNumber s(m_);
            for (std::size_t j = 1; j <= k; ++j)
                if (!c_[j].is_zero()) s = s + c_[j] * b[k - j];
            b[k] = -(s * l0);
        }
        QExpansion r;
        r.n_ = n_;
        r.m_ = m_;
        r.e_ = -e_;
        r.c_ = std::move(b);
        return r;
    }

    /// Right action of T: q^x -> zeta^x q^x.
    QExpansion t_act() const {
        QExpansion r = *this;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            Rational x = e_ + rat(static_cast<long>(k), n_);
            if (!c_[k].is_zero()) r.c_[k] = c_[k] * CycloNumber::zeta(frac(x), m_);
        }
        return r;
    }

    /// q -> q^D.
    QExpansion substitute(long D) const {
        if (D < 1) throw std::invalid_argument("substitution exponent must be positive");
        QExpansion r;
        r.n_ = n_;
        r.m_ = m_;
        r.e_ = e_ * Rational(D);
        r.c_.assign(c_.size() * static_cast<std::size_t>(D), CycloNumber(m_));
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * static_cast<std::size_t>(D)] = c_[i];
        return r;
    }

    /// Multiply by prod (1 - zeta^x q^y)^k. Coefficient work happens in Q[Z/m] and is reduced once.
    QExpansion times_binomials(const std::vector<Binomial>& fs) const {
        long n = n_;
        for (const auto& f : fs) {
            if (f.y <= 0) throw std::invalid_argument("binomial exponent must be positive");
            n = to_long(lcm(Int(n), f.y.get_den()));
        }
        long m = m_;
        for (const auto& f : fs) m = to_long(lcm(Int(m), f.x.get_den()));
        QExpansion a = refined(n, m);
        std::size_t L = a.c_.size();
        std::vector<detail::GroupRingElt> g;
        g.reserve(L);
        for (const auto& c : a.c_) g.push_back(detail::GroupRingElt::from(c));
        for (const auto& f : fs) {
            if (f.k == 0) continue;
            std::size_t s = static_cast<std::size_t>(to_long(Rational(f.y * Rational(n)).get_num()));
            if (s >= L) continue;
            long sh = to_long(mod(Rational(frac(f.x) * Rational(m)).get_num(), Int(m)));
            long terms = static_cast<long>((L - 1) / s);
            if (std::labs(f.k) <= terms) {
                for (long rep = 0; rep < std::labs(f.k); ++rep) {
                    if (f.k > 0) {
                        // multiply by (1 - w q^y), in place from the top
                        for (std::size_t i = L; i-- > s;) g[i].add_shifted(g[i - s], sh, Rational(-1));
                    } else {
                        // divide by (1 - w q^y), in place from the bottom
                        for (std::size_t i = s; i < L; ++i) g[i].add_shifted(g[i - s], sh, Rational(1));
                    }
                }
            } else {
                // generalized binomial series: sum_j C(k,j) (-w)^j q^{jy}
                std::vector<detail::GroupRingElt> out = g;
                Rational cj = 1;
                for (long j = 1; j <= terms; ++j) {
                    cj = cj * Rational(f.k - j + 1) / Rational(j);
                    Rational coef = (j % 2) ? Rational(-cj) : cj;
                    long shj = (sh * j) % m;
                    std::size_t off = static_cast<std::size_t>(j) * s;
                    for (std::size_t i = off; i < L; ++i)
                        if (!g[i - off].is_zero()) out[i].add_shifted(g[i - off], shj, coef);
                }
                g = std::move(out);
            }
        }
        for (std::size_t i = 0; i < L; ++i) a.c_[i] = g[i].reduce();
        return a;
    }

    /// First exponent (within common precision) where A and B differ, aligning leading exponents.
    friend std::optional<Rational> first_mismatch(const QExpansion& A, const QExpansion& B) {
        Rational lo = A.e_ < B.e_ ? A.e_ : B.e_;
        Rational hi = A.abs_precision() < B.abs_precision() ? A.abs_precision() : B.abs_precision();
        long n = to_long(lcm(Int(A.n_), Int(B.n_)));
        Rational step = rat(1, n);
        // exponents of A and B lie on e + (1/n)Z; scan the union of both grids
        for (const QExpansion* S : {&A, &B}) {
            for (Rational x = S->e_; x < hi; x += step) {
                if (x < lo) continue;
                auto a = A.coeff(x), b = B.coeff(x);
                if (a && b && !(*a == *b)) return x;
            }
        }
        return std::nullopt;
    }

    std::string to_string(std::size_t max_terms = 8) const {
        std::string s;
        std::size_t shown = 0;
        for (std::size_t k = 0; k < c_.size() && shown < max_terms; ++k) {
            if (c_[k].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "[" + c_[k].to_string() + "]q^" + drc::to_string(e_ + rat(static_cast<long>(k), n_));
            ++shown;
        }
        return (s.empty() ? "0" : s) + " + O(q^" + drc::to_string(abs_precision()) + ")";
    }

private:
    long m_ = 1;
    long n_ = 1;
    Rational e_ = 0;
    std::vector<CycloNumber> c_;
};

inline QExpansion qexp_mul(const QExpansion& A, const QExpansion& B) { return A * B; }
inline QExpansion qexp_inv(const QExpansion& A) { return A.inv(); }

}  // namespace drc

#pragma once

/*
 * Test functions on Q^2: finite integer combinations of characteristic
 * functions of affine lattice cosets [v + L].
 *
 * Canonical form: all terms share the period lattice of the function (the
 * largest lattice under which it is translation invariant), offsets are
 * reduced into the HNF box of that lattice, and no coefficient is zero. Two
 * term lists describing the same function V -> Z therefore canonicalize to
 * identical objects.
 */

#include "drc/lattice.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace drc {

struct AffineCoset {
    Vec2 v{0, 0};
    Lattice lattice;
};

struct Term {
    Int coeff;
    AffineCoset coset;
};

class TestFunction {
public:
    using TermMap = std::map<Vec2, Int>;

    TestFunction() = default;

    /// Single coset [v + L] with the given coefficient.
    static TestFunction coset(const Vec2& v, const Lattice& L = Lattice(), const Int& coeff = 1) {
        return canonicalize({Term{coeff, {v, L}}});
    }

    static TestFunction canonicalize(const std::vector<Term>& terms) {
        TestFunction f;
        if (terms.empty()) return f;
        Lattice common = terms.front().coset.lattice;
        for (const auto& t : terms) common = lattice_intersect(common, t.coset.lattice);
        f.lat_ = common;
        for (const auto& t : terms) {
            if (t.coeff == 0) continue;
            if (t.coset.lattice == common) {
                f.terms_[common.reduce(t.coset.v)] += t.coeff;
                continue;
            }
            for (const auto& w : coset_representatives(t.coset.lattice, common))
                f.terms_[common.reduce(t.coset.v + w)] += t.coeff;
        }
        f.drop_zeros();
        f.coarsen();
        return f;
    }

    const Lattice& lattice() const { return lat_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    std::vector<Term> term_list() const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& [v, c] : terms_) out.push_back({c, {v, lat_}});
        return out;
    }

    /// Value at a point of Q^2.
    Int operator()(const Vec2& x) const {
        auto it = terms_.find(lat_.reduce(x));
        return it == terms_.end() ? Int(0) : it->second;
    }

    /// Same function written over a finer lattice (not canonical).
    std::vector<Term> refine(const Lattice& finer) const {
        std::vector<Term> out;
        for (const auto& [v, c] : terms_)
            for (const auto& w : coset_representatives(lat_, finer)) out.push_back({c, {finer.reduce(v + w), finer}});
        return out;
    }

    friend TestFunction operator+(const TestFunction& f, const TestFunction& g) {
        auto t = f.term_list();
        for (auto& x : g.term_list()) t.push_back(std::move(x));
        return canonicalize(t);
    }
    friend TestFunction operator-(const TestFunction& f) {
        TestFunction g = f;
        for (auto& kv : g.terms_) kv.second = -kv.second;
        return g;
    }
    friend TestFunction operator-(const TestFunction& f, const TestFunction& g) { return f + (-g); }
    friend TestFunction operator*(const Int& k, const TestFunction& f) {
        if (k == 0) return {};
        TestFunction g = f;
        for (auto& kv : g.terms_) kv.second *= k;
        return g;
    }

    friend bool operator==(const TestFunction& f, const TestFunction& g) {
        return f.lat_ == g.lat_ && f.terms_ == g.terms_;
    }
    friend bool operator!=(const TestFunction& f, const TestFunction& g) { return !(f == g); }

private:
    Lattice lat_;
    TermMap terms_;

    void drop_zeros() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second == 0 ? terms_.erase(it) : std::next(it);
        if (terms_.empty()) lat_ = Lattice();
    }

    // Replace the lattice by the full period lattice of the function.
    void coarsen() {
        if (terms_.empty()) return;
        const auto& [v0, c0] = *terms_.begin();
        std::vector<Vec2> gens{lat_.row(0), lat_.row(1)};
        for (const auto& [v, c] : terms_) {
            if (c != c0 || v == v0) continue;
            Vec2 d = v - v0;
            bool period = true;
            for (const auto& [w, cw] : terms_) {
                auto it = terms_.find(lat_.reduce(w + d));
                if (it == terms_.end() || it->second != cw) {
                    period = false;
                    break;
                }
            }
            if (period) gens.push_back(d);
        }
        if (gens.size() == 2) return;
        Lattice P(gens);
        TermMap coarse;
        for (const auto& [v, c] : terms_) coarse.emplace(P.reduce(v), c);
        lat_ = P;
        terms_ = std::move(coarse);
    }
};

/// f | g : each coset [v + L] goes to [v g + L g].
inline TestFunction act_right(const TestFunction& f, const Mat2& g) {
    if (g.det() == 0) throw std::domain_error("singular matrix");
    if (f.is_zero()) return f;
    Lattice L = f.lattice().act(g);
    std::vector<Term> out;
    for (const auto& [v, c] : f.terms()) out.push_back({c, {v * g, L}});
    return TestFunction::canonicalize(out);
}

namespace detail {

inline Int lcm_den(const Vec2& x) { return lcm(x[0].get_den(), x[1].get_den()); }

/// Lattice equal to A away from `T` and to B at the primes of `T`.
inline Lattice glue_lattice(const Lattice& A, const Lattice& B, const PrimeSet& T) {
    if (A == B) return A;
    Lattice W = lattice_intersect(A, B), U = lattice_sum(A, B);
    Int n = lcm(lcm_den(W.coords(U.row(0))), lcm_den(W.coords(U.row(1))));
    auto [nT, nO] = split_primes(n, T);
    Rational qT(nT), qO(nO);
    return Lattice(std::vector<Vec2>{W.row(0), W.row(1), qT * A.row(0), qT * A.row(1), qO * B.row(0), qO * B.row(1)});
}

/// Integer e with e = 0 mod m0 and e = 1 mod m1 (coprime moduli).
inline Int crt01(const Int& m0, const Int& m1) {
    if (m1 == 1) return 0;
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), m0.get_mpz_t(), m1.get_mpz_t()) == 0)
        throw std::logic_error("crt moduli are not coprime");
    return m0 * inv;
}

}  // namespace detail

/// Action of g at every prime outside `T`, identity at the primes of `T`.
inline TestFunction act_adelic(const TestFunction& f, const Mat2& g, const PrimeSet& T) {
    if (g.det() == 0) throw std::domain_error("singular matrix");
    if (f.is_zero()) return f;
    if (T.empty()) return act_right(f, g);
    const Lattice& B = f.lattice();
    Lattice A = B.act(g);
    Lattice L = detail::glue_lattice(A, B, T);
    std::vector<Term> out;
    for (const auto& [v, c] : f.terms()) {
        Vec2 d = v * g - v;
        Int pT = split_primes(detail::lcm_den(B.coords(d)), T).first;
        Int rO = split_primes(detail::lcm_den(A.coords(d)), T).second;
        Int e = detail::crt01(pT, rO);
        out.push_back({c, {v + Rational(e) * d, L}});
    }
    return TestFunction::canonicalize(out);
}

inline bool is_away_from_zero(const TestFunction& f) {
    for (const auto& [v, c] : f.terms())
        if (v[0] == 0 && v[1] == 0) return false;
    return true;
}

/// Every term is standard at every prime of S: lattice locally Z^2 and offset locally integral.
inline bool prime_support_ok(const TestFunction& f, const PrimeSet& S) {
    for (long ell : S) {
        if (!standard_at(f.lattice(), ell)) return false;
        for (const auto& [v, c] : f.terms())
            if (!integral_at(v[0], {ell}) || !integral_at(v[1], {ell})) return false;
    }
    return true;
}

}  // namespace drc

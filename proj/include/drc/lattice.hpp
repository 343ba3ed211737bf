#pragma once

/*
 * Rank-2 lattices in Q^2, stored in row Hermite normal form.
 *
 * The rows of the basis span the lattice. The canonical form is lower
 * triangular: rows (a, 0) and (c, d) with a, d > 0 and 0 <= c < a. Two lattices
 * are equal exactly when their canonical bases coincide.
 */

#include "drc/matrix.hpp"

#include <stdexcept>
#include <vector>

namespace drc {

struct SingularBasis : std::invalid_argument {
    SingularBasis() : std::invalid_argument("lattice basis is singular") {}
};

struct NotSublattice : std::invalid_argument {
    NotSublattice() : std::invalid_argument("second lattice is not contained in the first") {}
};

namespace detail {

struct IRow {
    Int x, y;
};

/// Integer HNF of the row span of `rows`; returns rows (a,0),(c,d).
inline std::pair<IRow, IRow> integer_hnf(const std::vector<IRow>& rows) {
    bool have_pivot = false;
    IRow piv{0, 0};
    Int a = 0;
    for (const auto& r : rows) {
        if (r.y == 0) {
            a = gcd(a, r.x);
            continue;
        }
        if (!have_pivot) {
            piv = r;
            have_pivot = true;
            continue;
        }
        Int u, v;
        Int g = xgcd(piv.y, r.y, u, v);
        IRow merged{u * piv.x + v * r.x, g};
        Int kill_x = (r.y / g) * piv.x - (piv.y / g) * r.x;
        a = gcd(a, kill_x);
        piv = merged;
    }
    if (!have_pivot || a == 0) throw SingularBasis();
    if (piv.y < 0) {
        piv.x = -piv.x;
        piv.y = -piv.y;
    }
    a = abs(a);
    piv.x = mod(piv.x, a);
    return {{a, 0}, piv};
}

}  // namespace detail

class Lattice {
public:
    /// Z^2.
    Lattice() : h_(Mat2::identity()), inv_(Mat2::identity()) {}

    /// Lattice spanned by the rows of `basis`.
    explicit Lattice(const Mat2& basis) : Lattice(std::vector<Vec2>{{basis.a, basis.b}, {basis.c, basis.d}}) {}

    /// Lattice spanned by an arbitrary generating set of rank 2.
    explicit Lattice(const std::vector<Vec2>& gens) {
        Int L = 1;
        for (const auto& g : gens) L = lcm(L, lcm(g[0].get_den(), g[1].get_den()));
        std::vector<detail::IRow> rows;
        rows.reserve(gens.size());
        for (const auto& g : gens) {
            Rational x = g[0] * L, y = g[1] * L;
            rows.push_back({x.get_num(), y.get_num()});
        }
        auto [r1, r2] = detail::integer_hnf(rows);
        h_ = Mat2(rat(r1.x, L), 0, rat(r2.x, L), rat(r2.y, L));
        inv_ = h_.inverse();
    }

    static Lattice scalar(const Rational& s) { return Lattice(Mat2::D(s)); }

    const Mat2& basis() const { return h_; }
    Vec2 row(int i) const { return i == 0 ? Vec2{h_.a, h_.b} : Vec2{h_.c, h_.d}; }

    /// Covolume (positive determinant of the basis).
    Rational covolume() const { return h_.a * h_.d; }

    bool contains(const Vec2& v) const {
        Vec2 w = v * inv_;
        return is_integer(w[0]) && is_integer(w[1]);
    }

    bool contains(const Lattice& other) const { return contains(other.row(0)) && contains(other.row(1)); }

    /// Coordinates of v in the canonical basis.
    Vec2 coords(const Vec2& v) const { return v * inv_; }

    /// Image of the lattice under v -> v*g.
    Lattice act(const Mat2& g) const {
        if (g.det() == 0) throw std::domain_error("singular matrix");
        return Lattice(h_ * g);
    }

    /// Canonical representative of v modulo the lattice: coordinates in the half-open HNF box.
    Vec2 reduce(const Vec2& v) const {
        Vec2 w = v;
        Int k = floor_q(w[1] / h_.d);
        w = w - Rational(k) * row(1);
        k = floor_q(w[0] / h_.a);
        w = w - Rational(k) * row(0);
        return w;
    }

    /// Least n > 0 with n Z^2 contained in the lattice.
    Int min_scaling_index() const {
        return lcm(lcm(inv_.a.get_den(), inv_.b.get_den()), lcm(inv_.c.get_den(), inv_.d.get_den()));
    }

    /// Dual lattice with respect to the standard pairing.
    Lattice dual() const { return Lattice(Mat2(inv_.a, inv_.c, inv_.b, inv_.d)); }

    friend bool operator==(const Lattice& x, const Lattice& y) { return x.h_ == y.h_; }
    friend bool operator!=(const Lattice& x, const Lattice& y) { return !(x == y); }
    friend bool operator<(const Lattice& x, const Lattice& y) {
        if (x.h_.a != y.h_.a) return x.h_.a < y.h_.a;
        if (x.h_.c != y.h_.c) return x.h_.c < y.h_.c;
        return x.h_.d < y.h_.d;
    }

private:
    Mat2 h_;
    Mat2 inv_;
};

inline Lattice hnf_reduce(const Mat2& basis) { return Lattice(basis); }

inline Lattice lattice_sum(const Lattice& x, const Lattice& y) {
    return Lattice(std::vector<Vec2>{x.row(0), x.row(1), y.row(0), y.row(1)});
}

inline Lattice lattice_intersect(const Lattice& x, const Lattice& y) {
    return lattice_sum(x.dual(), y.dual()).dual();
}

inline Int min_scaling_index(const Lattice& L) { return L.min_scaling_index(); }

/// Index [big : small]; requires small inside big.
inline Int lattice_index(const Lattice& big, const Lattice& small) {
    if (!big.contains(small)) throw NotSublattice();
    Rational r = small.covolume() / big.covolume();
    return r.get_num();
}

/// Representatives of big / small, one per coset, all lying in big.
inline std::vector<Vec2> coset_representatives(const Lattice& big, const Lattice& small) {
    if (!big.contains(small)) throw NotSublattice();
    Vec2 r0 = big.coords(small.row(0)), r1 = big.coords(small.row(1));
    auto [h1, h2] = detail::integer_hnf({{r0[0].get_num(), r0[1].get_num()}, {r1[0].get_num(), r1[1].get_num()}});
    long na = to_long(h1.x), nd = to_long(h2.y);
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(na * nd));
    Vec2 e0 = big.row(0), e1 = big.row(1);
    for (long i = 0; i < na; ++i)
        for (long j = 0; j < nd; ++j) out.push_back(Rational(i) * e0 + Rational(j) * e1);
    return out;
}

/// True when the lattice localised at ell equals Z_ell^2.
inline bool standard_at(const Lattice& L, long ell) {
    const Mat2& h = L.basis();
    // Z_ell^2 = L_ell iff the basis matrix lies in GL_2(Z_ell).
    Rational dt = h.det();
    return valuation(dt, ell) == 0 && integral_at(h.a, {ell}) && integral_at(h.b, {ell}) &&
           integral_at(h.c, {ell}) && integral_at(h.d, {ell});
}

}  // namespace drc

#pragma once

// Generator words for SL_2(Z), G_S and G_S(N), and the decompositions producing them.

#include "drc/matrix.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace drc {

struct NotInSL2Z : std::invalid_argument {
    NotInSL2Z() : std::invalid_argument("matrix is not in SL2(Z)") {}
};
struct NotInGS : std::invalid_argument {
    NotInGS() : std::invalid_argument("matrix is not in G_S for the given prime set") {}
};
struct NotInGNN : std::invalid_argument {
    NotInGNN() : std::invalid_argument("matrix is not in G_S(N) for the given level and prime set") {}
};

struct Atom {
    enum class Kind { Diag, T, S, Block };
    Kind kind = Kind::T;
    Rational u = 1, v = 1;  // Diag
    Int k = 0;              // T^k
    int e = 1;              // S^e, e = +1 or -1
    Mat2 block;             // Block: an explicit SL2(Z) / Gamma_0(N) element

    static Atom diag(Rational u, Rational v) {
        if (u <= 0 || v <= 0) throw std::invalid_argument("diagonal atom entries must be positive");
        Atom a;
        a.kind = Kind::Diag;
        a.u = std::move(u);
        a.v = std::move(v);
        return a;
    }
    static Atom t(Int k) {
        Atom a;
        a.kind = Kind::T;
        a.k = std::move(k);
        return a;
    }
    static Atom s(int e = 1) {
        if (e != 1 && e != -1) throw std::invalid_argument("S atom exponent must be +1 or -1");
        Atom a;
        a.kind = Kind::S;
        a.e = e;
        return a;
    }
    static Atom blk(Mat2 m) {
        Atom a;
        a.kind = Kind::Block;
        a.block = std::move(m);
        return a;
    }

    Mat2 matrix() const {
        switch (kind) {
            case Kind::Diag: return Mat2::diag(u, v);
            case Kind::T: return Mat2::T(Rational(k));
            case Kind::S: return e == 1 ? Mat2::S() : Mat2::S().inverse();
            case Kind::Block: return block;
        }
        return {};
    }

    std::string str() const {
        switch (kind) {
            case Kind::Diag: return "D(" + to_string(u) + "," + to_string(v) + ")";
            case Kind::T: return "T^" + k.get_str();
            case Kind::S: return e == 1 ? "S" : "S^-1";
            case Kind::Block: {
                const Mat2& m = block;
                return "B[" + to_string(m.a) + "," + to_string(m.b) + "," + to_string(m.c) + "," + to_string(m.d) + "]";
            }
        }
        return "?";
    }
};

using Word = std::vector<Atom>;

inline Mat2 word_product(const Word& w) {
    Mat2 m;
    for (const auto& a : w) m = m * a.matrix();
    return m;
}

inline std::string word_str(const Word& w) {
    std::string s;
    for (const auto& a : w) s += (s.empty() ? "" : " ") + a.str();
    return s.empty() ? "Id" : s;
}

/// Continued-fraction word in S and T whose product is M.
inline Word sl2z_word(const Mat2& M) {
    if (!in_sl2z(M)) throw NotInSL2Z();
    Word w;
    Int a = M.a.get_num(), b = M.b.get_num(), c = M.c.get_num(), d = M.d.get_num();
    while (c != 0) {
        // R = T^q * S * R'' with R'' = S^{-1} T^{-q} R.
        // nearest-integer remainder, ties toward nonnegative: |c| at least halves each step
        Int ac = abs(c);
        Int r = mod(a, ac);
        if (2 * r > ac) r -= ac;
        Int q = (a - r) / c;
        if (q != 0) w.push_back(Atom::t(q));
        w.push_back(Atom::s(1));
        Int na = c, nb = d, nc = -(a - q * c), nd = -(b - q * d);
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    // Remaining factor is +-T^k.
    if (a == 1) {
        if (b != 0) w.push_back(Atom::t(b));
    } else {
        w.push_back(Atom::s(1));
        w.push_back(Atom::s(1));
        if (b != 0) w.push_back(Atom::t(-b));
    }
    return w;
}

namespace detail {

struct ColumnSplit {
    Mat2 m1;        // integral, det 1, first column proportional to gamma's
    Mat2 upper;     // m1^{-1} * gamma, upper triangular
};

inline ColumnSplit split_first_column(const Mat2& g) {
    Int b0 = lcm(g.a.get_den(), g.c.get_den());
    Int A = Rational(g.a * b0).get_num(), C = Rational(g.c * b0).get_num();
    Int gg = gcd(A, C);
    A /= gg;
    C /= gg;
    Int x, y;
    if (A == 0) {
        x = -C;
        y = 0;
    } else {
        Int u, v;
        xgcd(A, C, u, v);  // A u + C v = 1
        y = u;
        x = -v;
        Int absA = abs(A);
        Int xr = mod(x, absA);
        Int k = (xr - x) / A;  // x + k A = xr
        x = xr;
        y = y + k * C;
    }
    Mat2 m1{Rational(A), Rational(x), Rational(C), Rational(y)};
    return {m1, m1.inverse() * g};
}

/// Upper-triangular [[u1, b],[0, u2]] = diag(u1/alpha, u2) T^k diag(alpha, 1).
inline Word upper_word(const Mat2& up, const Int& alpha_scale) {
    Word w;
    Rational ratio = up.b / up.a;
    Int alpha = ratio.get_den() * alpha_scale;
    Rational k = ratio * Rational(alpha);
    Rational du = up.a / Rational(alpha);
    if (!(du == 1 && up.d == 1)) w.push_back(Atom::diag(du, up.d));
    if (k != 0) w.push_back(Atom::t(k.get_num()));
    if (alpha != 1) w.push_back(Atom::diag(Rational(alpha), 1));
    return w;
}

}  // namespace detail

/// Word over S, T and positive diagonal atoms multiplying to gamma in G_S.
/// `alpha_scale` (a positive integer prime to S) selects among admissible choices.
inline Word gs_decompose(const Mat2& g, const PrimeSet& S, const Int& alpha_scale = 1) {
    if (!in_GS(g, S)) throw NotInGS();
    if (alpha_scale <= 0 || !unit_at(Rational(alpha_scale), S))
        throw std::invalid_argument("alpha scale must be a positive unit away from S");
    auto sp = detail::split_first_column(g);
    Word w = in_sl2z(sp.m1) && sp.m1 == Mat2::identity() ? Word{} : sl2z_word(sp.m1);
    for (auto& a : detail::upper_word(sp.upper, alpha_scale)) w.push_back(a);
    return w;
}

/// Word over Gamma_0(N) blocks, T powers and positive diagonal atoms multiplying to gamma in G_S(N).
inline Word gnn_decompose(const Mat2& g, long N, const PrimeSet& primes, const Int& alpha_scale = 1) {
    if (!in_GSN(g, N, primes)) throw NotInGNN();
    auto sp = detail::split_first_column(g);
    Word w;
    if (sp.m1 != Mat2::identity()) w.push_back(Atom::blk(sp.m1));
    for (auto& a : detail::upper_word(sp.upper, alpha_scale)) w.push_back(a);
    return w;
}

}  // namespace drc

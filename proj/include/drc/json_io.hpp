#pragma once

// JSON encodings for rationals, matrices, lattices, test functions, words and cocycle parameters.

#include "drc/cocycle.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace drc {

using Json = nlohmann::ordered_json;

/// Malformed input; `path` points at the offending field ("/f/0/v/1").
struct SchemaError : std::invalid_argument {
    std::string path;
    SchemaError(std::string p, const std::string& what) : std::invalid_argument(p + ": " + what), path(std::move(p)) {}
};

namespace io {

inline std::string sub(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string sub(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(sub(path, key), "missing field");
    return *it;
}

inline Json rational(const Rational& x) { return to_string(x); }

inline Rational to_rational(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(Int(j.dump()));
    if (!j.is_string()) throw SchemaError(path, "expected a rational string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path, e.what());
    }
}

inline Int to_integer(const Json& j, const std::string& path) {
    Rational x = to_rational(j, path);
    if (!is_integer(x)) throw SchemaError(path, "expected an integer");
    return x.get_num();
}

inline long to_small(const Json& j, const std::string& path) {
    Int n = to_integer(j, path);
    if (!n.fits_slong_p()) throw SchemaError(path, "integer out of range");
    return n.get_si();
}

inline double to_double(const Json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    return to_rational(j, path).get_d();
}

inline Json vec(const Vec2& v) { return Json::array({rational(v[0]), rational(v[1])}); }

inline Vec2 to_vec(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected a pair of rationals");
    return {to_rational(j[0], sub(path, 0)), to_rational(j[1], sub(path, 1))};
}

/// Row-major list of four rational strings.
inline Json matrix(const Mat2& m) {
    return Json::array({rational(m.a), rational(m.b), rational(m.c), rational(m.d)});
}

/// Accepts the flat four-entry form or a 2x2 nested array.
inline Mat2 to_matrix(const Json& j, const std::string& path) {
    if (j.is_array() && j.size() == 4)
        return {to_rational(j[0], sub(path, 0)), to_rational(j[1], sub(path, 1)), to_rational(j[2], sub(path, 2)),
                to_rational(j[3], sub(path, 3))};
    if (j.is_array() && j.size() == 2) {
        Vec2 r0 = to_vec(j[0], sub(path, 0)), r1 = to_vec(j[1], sub(path, 1));
        return {r0[0], r0[1], r1[0], r1[1]};
    }
    throw SchemaError(path, "expected a matrix (4 rationals, row-major)");
}

inline Json lattice(const Lattice& L) { return Json::array({vec(L.row(0)), vec(L.row(1))}); }

inline Lattice to_lattice(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected a 2x2 basis");
    Vec2 r0 = to_vec(j[0], sub(path, 0)), r1 = to_vec(j[1], sub(path, 1));
    Mat2 b{r0[0], r0[1], r1[0], r1[1]};
    if (b.det() == 0) throw SchemaError(path, "singular lattice basis");
    return Lattice(b);
}

inline Json test_function(const TestFunction& f) {
    Json out = Json::array();
    for (const auto& t : f.term_list())
        out.push_back({{"v", vec(t.coset.v)}, {"lattice", lattice(t.coset.lattice)}, {"coeff", t.coeff.get_str()}});
    return out;
}

/// Array of {"v": [..], "lattice": [[..],[..]] (default Z^2), "coeff": n (default 1)}.
inline TestFunction to_test_function(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of cosets");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string p = sub(path, i);
        Vec2 v = to_vec(field(j[i], "v", p), sub(p, "v"));
        Lattice L = j[i].contains("lattice") ? to_lattice(j[i]["lattice"], sub(p, "lattice")) : Lattice();
        Int c = j[i].contains("coeff") ? to_integer(j[i]["coeff"], sub(p, "coeff")) : Int(1);
        terms.push_back({c, {L.reduce(v), L}});
    }
    return TestFunction::canonicalize(terms);
}

inline Json atom(const Atom& a) {
    switch (a.kind) {
        case Atom::Kind::Diag: return {{"atom", "D"}, {"u", rational(a.u)}, {"v", rational(a.v)}};
        case Atom::Kind::T: return {{"atom", "T"}, {"k", a.k.get_str()}};
        case Atom::Kind::S: return {{"atom", "S"}, {"e", a.e}};
        case Atom::Kind::Block: return {{"atom", "B"}, {"m", matrix(a.block)}};
    }
    return {};
}

inline Atom to_atom(const Json& j, const std::string& path) {
    const Json& tag = field(j, "atom", path);
    if (!tag.is_string()) throw SchemaError(sub(path, "atom"), "expected one of D, T, S, B");
    std::string t = tag.get<std::string>();
    try {
        if (t == "D") return Atom::diag(to_rational(field(j, "u", path), sub(path, "u")), to_rational(field(j, "v", path), sub(path, "v")));
        if (t == "T") return Atom::t(to_integer(field(j, "k", path), sub(path, "k")));
        if (t == "S") return Atom::s(j.contains("e") ? static_cast<int>(to_small(j["e"], sub(path, "e"))) : 1);
        if (t == "B") return Atom::blk(to_matrix(field(j, "m", path), sub(path, "m")));
    } catch (const SchemaError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path, e.what());
    }
    throw SchemaError(sub(path, "atom"), "unknown atom tag " + t);
}

inline Json word(const Word& w) {
    Json out = Json::array();
    for (const auto& a : w) out.push_back(atom(a));
    return out;
}

inline Word to_word(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of atoms");
    Word w;
    for (std::size_t i = 0; i < j.size(); ++i) w.push_back(to_atom(j[i], sub(path, i)));
    return w;
}

inline Json delta(const Delta& d) {
    Json out = Json::object();
    for (auto [D, n] : d) out[std::to_string(D)] = n;
    return out;
}

/// {"1": 5, "5": -1} or the string form "1:5,5:-1".
inline Delta to_delta(const Json& j, const std::string& path) {
    Delta d;
    if (j.is_string()) {
        std::stringstream ss(j.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto colon = item.find(':');
            if (colon == std::string::npos) throw SchemaError(path, "expected D:n pairs");
            try {
                d[std::stol(item.substr(0, colon))] += std::stol(item.substr(colon + 1));
            } catch (const std::logic_error&) {
                throw SchemaError(path, "bad D:n pair " + item);
            }
        }
        return d;
    }
    if (!j.is_object()) throw SchemaError(path, "expected an object of D: n");
    for (auto it = j.begin(); it != j.end(); ++it) {
        long D = 0;
        try {
            D = std::stol(it.key());
        } catch (const std::logic_error&) {
            throw SchemaError(sub(path, it.key()), "key must be an integer");
        }
        d[D] += to_small(it.value(), sub(path, it.key()));
    }
    return d;
}

inline Json params(const CocycleParams& P) {
    return {{"c", P.c}, {"N", P.N}, {"p", P.p}, {"delta", delta(P.delta)}};
}

/// Missing fields keep their defaults; the result is validated.
inline CocycleParams to_params(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    CocycleParams P;
    if (j.contains("c")) P.c = to_small(j["c"], sub(path, "c"));
    if (j.contains("N")) P.N = to_small(j["N"], sub(path, "N"));
    if (j.contains("p")) P.p = to_small(j["p"], sub(path, "p"));
    if (j.contains("delta")) P.delta = to_delta(j["delta"], sub(path, "delta"));
    P.validate();
    return P;
}

inline Json complex(const std::complex<double>& z) { return Json::array({z.real(), z.imag()}); }

}  // namespace io
}  // namespace drc

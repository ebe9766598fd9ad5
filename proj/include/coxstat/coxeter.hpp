#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "coxstat/errors.hpp"
#include "coxstat/rational.hpp"

namespace coxstat {

enum class Family : std::uint8_t { A, B, D, I2, H3, H4, F4, E6, E7, E8 };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::D: return "D";
        case Family::I2: return "I2";
        case Family::H3: return "H3";
        case Family::H4: return "H4";
        case Family::F4: return "F4";
        case Family::E6: return "E6";
        case Family::E7: return "E7";
        case Family::E8: return "E8";
    }
    return "?";
}

inline bool is_exceptional(Family f) {
    return f == Family::H3 || f == Family::H4 || f == Family::F4 ||
           f == Family::E6 || f == Family::E7 || f == Family::E8;
}

/// One irreducible factor of the classification: A_p (p>=1), B_p (p>=2),
/// D_p (p>=4), I2(m) (m>=3) or an exceptional type. `parameter` is p or m
/// and is 0 for exceptional types.
struct IrreducibleType {
    Family family = Family::A;
    int parameter = 0;

    int rank() const {
        switch (family) {
            case Family::A:
            case Family::B:
            case Family::D: return parameter;
            case Family::I2: return 2;
            case Family::H3: return 3;
            case Family::H4: return 4;
            case Family::F4: return 4;
            case Family::E6: return 6;
            case Family::E7: return 7;
            case Family::E8: return 8;
        }
        return 0;
    }

    BigInt order() const {
        auto factorial = [](int n) {
            BigInt r = 1;
            for (int i = 2; i <= n; ++i) r *= i;
            return r;
        };
        switch (family) {
            case Family::A: return factorial(parameter + 1);
            case Family::B: return (BigInt(1) << parameter) * factorial(parameter);
            case Family::D: return (BigInt(1) << (parameter - 1)) * factorial(parameter);
            case Family::I2: return 2 * parameter;
            case Family::H3: return 120;
            case Family::H4: return 14400;
            case Family::F4: return 1152;
            case Family::E6: return 51840;
            case Family::E7: return 2903040;
            case Family::E8: return BigInt(696729600);
        }
        return 1;
    }

    std::string name() const {
        if (family == Family::I2) return "I2(" + std::to_string(parameter) + ")";
        if (is_exceptional(family)) return family_name(family);
        return std::string(family_name(family)) + std::to_string(parameter);
    }

    friend bool operator==(const IrreducibleType& x, const IrreducibleType& y) {
        return x.family == y.family && x.parameter == y.parameter;
    }
};

inline IrreducibleType make_irreducible(Family f, int parameter = 0) {
    switch (f) {
        case Family::A:
            if (parameter < 1) throw ParameterOutOfRange("A_p requires p >= 1");
            break;
        case Family::B:
            if (parameter < 2) throw ParameterOutOfRange("B_p requires p >= 2");
            break;
        case Family::D:
            if (parameter < 4) throw ParameterOutOfRange("D_p requires p >= 4");
            break;
        case Family::I2:
            if (parameter < 3) throw ParameterOutOfRange("I2(m) requires m >= 3");
            break;
        default:
            parameter = 0; // exceptional types carry no parameter
            break;
    }
    return IrreducibleType{f, parameter};
}

/// Direct product of irreducible factors, in the given order. The empty
/// product is the trivial group (rank 0, order 1).
struct CoxeterGroup {
    std::vector<IrreducibleType> factors;

    int rank() const {
        int r = 0;
        for (const auto& f : factors) r += f.rank();
        return r;
    }
    BigInt order() const {
        BigInt o = 1;
        for (const auto& f : factors) o *= f.order();
        return o;
    }
    std::string name() const {
        if (factors.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) s += "x";
            s += factors[i].name();
        }
        return s;
    }
    friend bool operator==(const CoxeterGroup& x, const CoxeterGroup& y) {
        return x.factors == y.factors;
    }
};

// ---------------------------------------------------------------------------
// Coxeter matrices

/// Sentinel for an infinite bond m_st = oo. Never produced for the finite
/// types handled here; present so the type covers the general definition.
inline constexpr int coxeter_infinity = 0;

/// Symmetric matrix of bond orders m_st over the generators of one
/// irreducible type, with m_ss = 1. Generator ordering:
///   A_p:  adjacent transpositions left to right
///   B_p:  sign generator first, then adjacent transpositions
///   D_p:  the (negate-two-and-swap) generator first, then transpositions;
///         it commutes with the first transposition and braids with the second
///   I2:   the two reflections
///   H3/H4: chain with the 5-bond first (5,3[,3])
///   F4:   chain 3,4,3
///   E6/E7/E8: Bourbaki numbering (chain 1-3-4-5-...-n with node 2 on node 4)
struct CoxeterMatrix {
    int rank = 0;
    std::vector<int> m; // row-major rank x rank

    int at(int i, int j) const { return m[static_cast<std::size_t>(i) * rank + j]; }
    int& at(int i, int j) { return m[static_cast<std::size_t>(i) * rank + j]; }
};

inline CoxeterMatrix coxeter_matrix(const IrreducibleType& t) {
    const int r = t.rank();
    CoxeterMatrix cm;
    cm.rank = r;
    cm.m.assign(static_cast<std::size_t>(r) * r, 2);
    for (int i = 0; i < r; ++i) cm.at(i, i) = 1;
    auto bond = [&](int i, int j, int v) { cm.at(i, j) = v; cm.at(j, i) = v; };
    switch (t.family) {
        case Family::A:
            for (int i = 0; i + 1 < r; ++i) bond(i, i + 1, 3);
            break;
        case Family::B:
            bond(0, 1, 4);
            for (int i = 1; i + 1 < r; ++i) bond(i, i + 1, 3);
            break;
        case Family::D:
            if (r >= 3) bond(0, 2, 3);
            for (int i = 1; i + 1 < r; ++i) bond(i, i + 1, 3);
            break;
        case Family::I2:
            bond(0, 1, t.parameter);
            break;
        case Family::H3:
        case Family::H4:
            bond(0, 1, 5);
            for (int i = 1; i + 1 < r; ++i) bond(i, i + 1, 3);
            break;
        case Family::F4:
            bond(0, 1, 3);
            bond(1, 2, 4);
            bond(2, 3, 3);
            break;
        case Family::E6:
        case Family::E7:
        case Family::E8:
            bond(0, 2, 3);
            bond(1, 3, 3);
            for (int i = 2; i + 1 < r; ++i) bond(i, i + 1, 3);
            break;
    }
    return cm;
}

// ---------------------------------------------------------------------------
// Group specification strings: factors joined by "x", e.g. "A4xI2(5)xB3".
// Case-insensitive, whitespace ignored. "" and "1" denote the trivial group.

namespace detail {

inline IrreducibleType parse_factor(const std::string& tok, std::size_t pos) {
    auto fail = [&](const std::string& why) -> IrreducibleType {
        throw ParseError("factor '" + tok + "' at position " + std::to_string(pos) + ": " + why);
    };
    if (tok.empty()) return fail("empty factor");
    auto number = [&](std::size_t from, std::size_t to) -> int {
        if (from >= to) fail("missing parameter");
        long v = 0;
        for (std::size_t i = from; i < to; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(tok[i]))) fail("bad parameter digits");
            v = v * 10 + (tok[i] - '0');
            if (v > 1000000) fail("parameter too large");
        }
        return static_cast<int>(v);
    };
    const char head = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
    if (head == 'I') {
        // I2(m)
        if (tok.size() < 5 || tok[1] != '2' || tok[2] != '(' || tok.back() != ')')
            fail("expected I2(m)");
        return make_irreducible(Family::I2, number(3, tok.size() - 1));
    }
    if (head == 'A') return make_irreducible(Family::A, number(1, tok.size()));
    if (head == 'B') return make_irreducible(Family::B, number(1, tok.size()));
    if (head == 'D') return make_irreducible(Family::D, number(1, tok.size()));
    if (head == 'H' || head == 'E' || head == 'F') {
        const int n = number(1, tok.size());
        if (head == 'H' && n == 3) return make_irreducible(Family::H3);
        if (head == 'H' && n == 4) return make_irreducible(Family::H4);
        if (head == 'F' && n == 4) return make_irreducible(Family::F4);
        if (head == 'E' && n == 6) return make_irreducible(Family::E6);
        if (head == 'E' && n == 7) return make_irreducible(Family::E7);
        if (head == 'E' && n == 8) return make_irreducible(Family::E8);
        fail("no such exceptional type");
    }
    return fail("unknown family");
}

} // namespace detail

inline CoxeterGroup parse_group(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    CoxeterGroup g;
    if (s.empty() || s == "1") return g;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = start;
        while (end < s.size() && s[end] != 'x' && s[end] != 'X') ++end;
        g.factors.push_back(detail::parse_factor(s.substr(start, end - start), start));
        if (end == s.size()) break;
        start = end + 1;
        if (start == s.size())
            throw ParseError("trailing 'x' at position " + std::to_string(end));
    }
    return g;
}

} // namespace coxstat

#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "coxstat/coxeter.hpp"
#include "coxstat/reflection.hpp"

namespace coxstat {

// Components of a group element, one per irreducible factor.
//
// A_p:  one-line permutation of {1..p+1}
// B_p:  signed permutation, img[i] = w(i+1) in {+-1..+-p}
// D_p:  signed permutation with an even number of negative values
// I2:   (k, side) with k in {0..m}; side picks which generator a reduced
//       word starts with; k=0 and k=m are the unique words of that length
//       and carry side=0 canonically
// exceptional: exact matrix in the reflection representation

struct APerm { std::vector<std::int32_t> img; };
struct BPerm { std::vector<std::int32_t> img; };
struct DPerm { std::vector<std::int32_t> img; };
struct Dihedral {
    std::int32_t m = 3;
    std::int32_t k = 0;
    std::int8_t side = 0;
};

using Component = std::variant<APerm, BPerm, DPerm, Dihedral, ReflMatrix>;

struct GroupElement {
    std::vector<Component> parts;
    friend bool operator==(const GroupElement&, const GroupElement&);
};

namespace detail {

inline bool component_equal(const Component& x, const Component& y) {
    if (x.index() != y.index()) return false;
    return std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            const auto& b = std::get<T>(y);
            if constexpr (std::is_same_v<T, Dihedral>)
                return a.m == b.m && a.k == b.k && a.side == b.side;
            else if constexpr (std::is_same_v<T, ReflMatrix>)
                return a == b;
            else
                return a.img == b.img;
        },
        x);
}

} // namespace detail

inline bool operator==(const GroupElement& x, const GroupElement& y) {
    if (x.parts.size() != y.parts.size()) return false;
    for (std::size_t i = 0; i < x.parts.size(); ++i)
        if (!detail::component_equal(x.parts[i], y.parts[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// dihedral helpers: (rotation j mod m, reflection flag) arithmetic with
// closed-form conversion to and from the (k, side) normal form

namespace detail {

struct RotRefl { std::int32_t j; bool refl; };

inline RotRefl dihedral_to_rot(const Dihedral& d) {
    const std::int32_t m = d.m, k = d.k;
    if (k % 2 == 0) {
        // even words are rotations: (st)^{k/2} = r^{k/2}, (ts)^{k/2} = r^{-k/2}
        std::int32_t j = (k / 2) % m;
        if (d.side == 1) j = (m - j) % m;
        return {j, false};
    }
    // odd words are reflections r^j s with j = (k-1)/2 (s-start) or
    // j = m-1-(k-1)/2 (t-start)
    std::int32_t j = (k - 1) / 2;
    if (d.side == 1) j = m - 1 - j;
    return {(j % m + m) % m, true};
}

inline Dihedral dihedral_from_rot(std::int32_t m, RotRefl x) {
    Dihedral d;
    d.m = m;
    if (!x.refl) {
        const std::int32_t j = (x.j % m + m) % m;
        const std::int32_t ks = 2 * j, kt = 2 * (m - j);
        if (j == 0) { d.k = 0; d.side = 0; return d; }
        if (ks < kt) { d.k = ks; d.side = 0; }
        else if (kt < ks) { d.k = kt; d.side = 1; }
        else { d.k = m; d.side = 0; } // j = m/2, the longest element (m even)
        return d;
    }
    const std::int32_t j = (x.j % m + m) % m;
    const std::int32_t ks = 2 * j + 1, kt = 2 * (m - 1 - j) + 1;
    if (ks < kt) { d.k = ks; d.side = 0; }
    else if (kt < ks) { d.k = kt; d.side = 1; }
    else { d.k = m; d.side = 0; } // the longest element (m odd)
    return d;
}

inline RotRefl rot_mul(std::int32_t m, RotRefl a, RotRefl b) {
    // s r^j = r^{-j} s
    if (!a.refl) return {static_cast<std::int32_t>(((a.j + (b.refl ? b.j : b.j)) % m + m) % m), b.refl};
    return {static_cast<std::int32_t>(((a.j - b.j) % m + m) % m), !b.refl};
}

} // namespace detail

// ---------------------------------------------------------------------------
// identity / generators

inline Component identity_component(const IrreducibleType& t) {
    switch (t.family) {
        case Family::A: {
            APerm a;
            a.img.resize(t.parameter + 1);
            for (int i = 0; i <= t.parameter; ++i) a.img[i] = i + 1;
            return a;
        }
        case Family::B: {
            BPerm b;
            b.img.resize(t.parameter);
            for (int i = 0; i < t.parameter; ++i) b.img[i] = i + 1;
            return b;
        }
        case Family::D: {
            DPerm d;
            d.img.resize(t.parameter);
            for (int i = 0; i < t.parameter; ++i) d.img[i] = i + 1;
            return d;
        }
        case Family::I2: return Dihedral{t.parameter, 0, 0};
        default: return refl_identity(t.family);
    }
}

inline GroupElement identity(const CoxeterGroup& g) {
    GroupElement e;
    e.parts.reserve(g.factors.size());
    for (const auto& f : g.factors) e.parts.push_back(identity_component(f));
    return e;
}

/// Generator with local index i inside one factor.
inline Component generator_component(const IrreducibleType& t, int i) {
    if (i < 0 || i >= t.rank()) throw Error("generator index out of range");
    switch (t.family) {
        case Family::A: {
            auto a = std::get<APerm>(identity_component(t));
            std::swap(a.img[i], a.img[i + 1]);
            return a;
        }
        case Family::B: {
            auto b = std::get<BPerm>(identity_component(t));
            if (i == 0) b.img[0] = -1;
            else std::swap(b.img[i - 1], b.img[i]);
            return b;
        }
        case Family::D: {
            auto d = std::get<DPerm>(identity_component(t));
            if (i == 0) { d.img[0] = -2; d.img[1] = -1; }
            else std::swap(d.img[i - 1], d.img[i]);
            return d;
        }
        case Family::I2: return Dihedral{t.parameter, 1, static_cast<std::int8_t>(i)};
        default: return refl_generator(t.family, i);
    }
}

/// Generator with a global index (factor ranks concatenated in order).
inline GroupElement generator(const CoxeterGroup& g, int global_index) {
    GroupElement e = identity(g);
    int base = 0;
    for (std::size_t f = 0; f < g.factors.size(); ++f) {
        const int r = g.factors[f].rank();
        if (global_index < base + r) {
            e.parts[f] = generator_component(g.factors[f], global_index - base);
            return e;
        }
        base += r;
    }
    throw Error("generator index out of range");
}

// ---------------------------------------------------------------------------
// multiplication and inversion (componentwise)

namespace detail {

template <typename P>
inline P signed_compose(const P& x, const P& y) {
    // (xy)(i) = x(y(i)) with x(-v) = -x(v)
    P z;
    z.img.resize(x.img.size());
    for (std::size_t i = 0; i < x.img.size(); ++i) {
        const std::int32_t v = y.img[i];
        z.img[i] = v > 0 ? x.img[v - 1] : -x.img[-v - 1];
    }
    return z;
}

inline Component component_mul(const Component& x, const Component& y) {
    if (x.index() != y.index()) throw GroupMismatch("elements have different factor shapes");
    if (std::holds_alternative<APerm>(x)) {
        const auto& a = std::get<APerm>(x);
        const auto& b = std::get<APerm>(y);
        if (a.img.size() != b.img.size()) throw GroupMismatch("A-factor sizes differ");
        APerm z;
        z.img.resize(a.img.size());
        for (std::size_t i = 0; i < a.img.size(); ++i) z.img[i] = a.img[b.img[i] - 1];
        return z;
    }
    if (std::holds_alternative<BPerm>(x)) {
        const auto& a = std::get<BPerm>(x);
        const auto& b = std::get<BPerm>(y);
        if (a.img.size() != b.img.size()) throw GroupMismatch("B-factor sizes differ");
        return signed_compose(a, b);
    }
    if (std::holds_alternative<DPerm>(x)) {
        const auto& a = std::get<DPerm>(x);
        const auto& b = std::get<DPerm>(y);
        if (a.img.size() != b.img.size()) throw GroupMismatch("D-factor sizes differ");
        return signed_compose(a, b);
    }
    if (std::holds_alternative<Dihedral>(x)) {
        const auto& a = std::get<Dihedral>(x);
        const auto& b = std::get<Dihedral>(y);
        if (a.m != b.m) throw GroupMismatch("dihedral orders differ");
        return dihedral_from_rot(a.m, rot_mul(a.m, dihedral_to_rot(a), dihedral_to_rot(b)));
    }
    return refl_mul(std::get<ReflMatrix>(x), std::get<ReflMatrix>(y));
}

template <typename P>
inline P signed_inverse(const P& x) {
    P z;
    z.img.resize(x.img.size());
    for (std::size_t i = 0; i < x.img.size(); ++i) {
        const std::int32_t v = x.img[i];
        if (v > 0) z.img[v - 1] = static_cast<std::int32_t>(i + 1);
        else z.img[-v - 1] = -static_cast<std::int32_t>(i + 1);
    }
    return z;
}

inline Component component_inverse(const Component& x) {
    if (std::holds_alternative<APerm>(x)) {
        const auto& a = std::get<APerm>(x);
        APerm z;
        z.img.resize(a.img.size());
        for (std::size_t i = 0; i < a.img.size(); ++i) z.img[a.img[i] - 1] = static_cast<std::int32_t>(i + 1);
        return z;
    }
    if (std::holds_alternative<BPerm>(x)) return signed_inverse(std::get<BPerm>(x));
    if (std::holds_alternative<DPerm>(x)) return signed_inverse(std::get<DPerm>(x));
    if (std::holds_alternative<Dihedral>(x)) {
        const auto& d = std::get<Dihedral>(x);
        auto rr = dihedral_to_rot(d);
        if (!rr.refl) rr.j = (d.m - rr.j) % d.m;
        return dihedral_from_rot(d.m, rr);
    }
    return refl_inverse(std::get<ReflMatrix>(x));
}

} // namespace detail

inline GroupElement multiply(const GroupElement& x, const GroupElement& y) {
    if (x.parts.size() != y.parts.size()) throw GroupMismatch("different numbers of factors");
    GroupElement z;
    z.parts.reserve(x.parts.size());
    for (std::size_t i = 0; i < x.parts.size(); ++i)
        z.parts.push_back(detail::component_mul(x.parts[i], y.parts[i]));
    return z;
}

inline GroupElement inverse(const GroupElement& x) {
    GroupElement z;
    z.parts.reserve(x.parts.size());
    for (const auto& c : x.parts) z.parts.push_back(detail::component_inverse(c));
    return z;
}

// ---------------------------------------------------------------------------
// length

namespace detail {

inline int inversions(const std::vector<std::int32_t>& v) {
    int c = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) ++c;
    return c;
}

inline int component_length(const Component& x) {
    if (std::holds_alternative<APerm>(x)) return inversions(std::get<APerm>(x).img);
    if (std::holds_alternative<BPerm>(x)) {
        const auto& v = std::get<BPerm>(x).img;
        int c = inversions(v);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 0) ++c;
            for (std::size_t j = i + 1; j < v.size(); ++j)
                if (v[i] + v[j] < 0) ++c;
        }
        return c;
    }
    if (std::holds_alternative<DPerm>(x)) {
        const auto& v = std::get<DPerm>(x).img;
        int c = inversions(v);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j)
                if (v[i] + v[j] < 0) ++c;
        return c;
    }
    if (std::holds_alternative<Dihedral>(x)) return std::get<Dihedral>(x).k;
    return refl_length(std::get<ReflMatrix>(x));
}

} // namespace detail

inline int length(const GroupElement& x) {
    int l = 0;
    for (const auto& c : x.parts) l += detail::component_length(c);
    return l;
}

// ---------------------------------------------------------------------------
// descents
//
// Right descents, the appendix convention l(ws) < l(w). The family rules
// below are optimizations over that definition and are pinned to it by
// exhaustive tests (descent_set_definitional).

namespace detail {

inline void component_descents(const Component& x, int base, std::vector<int>& out) {
    if (std::holds_alternative<APerm>(x)) {
        const auto& v = std::get<APerm>(x).img;
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            if (v[i] > v[i + 1]) out.push_back(base + static_cast<int>(i));
        return;
    }
    if (std::holds_alternative<BPerm>(x)) {
        const auto& v = std::get<BPerm>(x).img;
        if (v[0] < 0) out.push_back(base);
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            if (v[i] > v[i + 1]) out.push_back(base + static_cast<int>(i) + 1);
        return;
    }
    if (std::holds_alternative<DPerm>(x)) {
        const auto& v = std::get<DPerm>(x).img;
        if (v[0] + v[1] < 0) out.push_back(base);
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            if (v[i] > v[i + 1]) out.push_back(base + static_cast<int>(i) + 1);
        return;
    }
    if (std::holds_alternative<Dihedral>(x)) {
        const auto& d = std::get<Dihedral>(x);
        if (d.k == 0) return;
        if (d.k == static_cast<std::int32_t>(d.m)) {
            out.push_back(base);
            out.push_back(base + 1);
            return;
        }
        // a reduced word of length k starting with `side` ends with `side`
        // iff k is odd
        out.push_back(base + (d.k % 2 == 1 ? d.side : 1 - d.side));
        return;
    }
    const auto& m = std::get<ReflMatrix>(x);
    for (int i = 0; i < m.rank(); ++i)
        if (refl_descent(m, i)) out.push_back(base + i);
}

inline int component_rank(const Component& x) {
    if (std::holds_alternative<APerm>(x)) return static_cast<int>(std::get<APerm>(x).img.size()) - 1;
    if (std::holds_alternative<BPerm>(x)) return static_cast<int>(std::get<BPerm>(x).img.size());
    if (std::holds_alternative<DPerm>(x)) return static_cast<int>(std::get<DPerm>(x).img.size());
    if (std::holds_alternative<Dihedral>(x)) return 2;
    return std::get<ReflMatrix>(x).rank();
}

} // namespace detail

inline std::vector<int> descent_set(const GroupElement& x) {
    std::vector<int> out;
    int base = 0;
    for (const auto& c : x.parts) {
        detail::component_descents(c, base, out);
        base += detail::component_rank(c);
    }
    return out;
}

inline int des(const GroupElement& x) { return static_cast<int>(descent_set(x).size()); }

/// The defining computation: s is a descent iff length(w s) < length(w).
/// Slow; the ground truth the fast rules are tested against.
inline std::vector<int> descent_set_definitional(const GroupElement& x, const CoxeterGroup& g) {
    std::vector<int> out;
    const int l = length(x);
    for (int s = 0; s < g.rank(); ++s)
        if (length(multiply(x, generator(g, s))) < l) out.push_back(s);
    return out;
}

inline int two_sided_descent(const GroupElement& x) { return des(x) + des(inverse(x)); }

} // namespace coxstat

#pragma once

#include <cstdint>
#include <functional>

#include "coxstat/rational.hpp"

namespace coxstat {

/// Element of the ring Z[phi], phi^2 = phi + 1, stored as a + b*phi.
/// Crystallographic data lives in the subring b == 0; the golden part is
/// only nonzero for H3/H4. Exact sign tests make root-positivity decidable
/// without floating point.
struct GoldenInt {
    std::int64_t a = 0;
    std::int64_t b = 0;

    friend GoldenInt operator+(GoldenInt x, GoldenInt y) { return {x.a + y.a, x.b + y.b}; }
    friend GoldenInt operator-(GoldenInt x, GoldenInt y) { return {x.a - y.a, x.b - y.b}; }
    friend GoldenInt operator-(GoldenInt x) { return {-x.a, -x.b}; }
    friend GoldenInt operator*(GoldenInt x, GoldenInt y) {
        // (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
        return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
    }
    friend bool operator==(GoldenInt x, GoldenInt y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(GoldenInt x, GoldenInt y) { return !(x == y); }

    bool is_zero() const { return a == 0 && b == 0; }

    /// Sign of the real value a + b*(1+sqrt5)/2, exactly.
    int sign() const {
        // value has the sign of u + v*sqrt5 with u = 2a + b, v = b
        const std::int64_t u = 2 * a + b, v = b;
        if (u == 0 && v == 0) return 0;
        if (u >= 0 && v >= 0) return 1;
        if (u <= 0 && v <= 0) return -1;
        const __int128 diff = static_cast<__int128>(u) * u - static_cast<__int128>(5) * v * v;
        const int big = diff > 0 ? 1 : -1; // |u| vs |v|sqrt5; diff == 0 impossible for v != 0
        return u > 0 ? big : -big;
    }

    double value() const { return static_cast<double>(a) + static_cast<double>(b) * 1.6180339887498948482; }
};

inline GoldenInt golden_zero() { return {0, 0}; }
inline GoldenInt golden_one() { return {1, 0}; }
inline GoldenInt golden_phi() { return {0, 1}; }

} // namespace coxstat

template <> struct std::hash<coxstat::GoldenInt> {
    std::size_t operator()(const coxstat::GoldenInt& g) const noexcept {
        std::uint64_t x = static_cast<std::uint64_t>(g.a) * 0x9E3779B97F4A7C15ULL;
        x ^= static_cast<std::uint64_t>(g.b) + 0x9E3779B97F4A7C15ULL + (x << 6) + (x >> 2);
        return static_cast<std::size_t>(x);
    }
};

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>

#include "coxstat/distribution.hpp"
#include "coxstat/enumerate.hpp"

namespace coxstat {

namespace detail {

// streams all elements of the signed families without materializing tables
template <typename Fn>
inline void for_each_a(int p, Fn&& fn) {
    std::vector<std::int32_t> img(p + 1);
    for (int i = 0; i <= p; ++i) img[i] = i + 1;
    std::vector<std::int32_t> inv(p + 1);
    do {
        for (int i = 0; i <= p; ++i) inv[img[i] - 1] = i + 1;
        fn(img, inv);
    } while (std::next_permutation(img.begin(), img.end()));
}

template <typename Fn>
inline void for_each_signed(int p, bool even_only, Fn&& fn) {
    std::vector<std::int32_t> base(p), img(p), inv(p);
    for (int i = 0; i < p; ++i) base[i] = i + 1;
    do {
        for (std::uint64_t mask = 0; mask < (1ULL << p); ++mask) {
            if (even_only && (std::popcount(mask) & 1)) continue;
            for (int i = 0; i < p; ++i) img[i] = ((mask >> i) & 1) ? -base[i] : base[i];
            for (int i = 0; i < p; ++i) {
                const std::int32_t x = img[i];
                if (x > 0) inv[x - 1] = i + 1;
                else inv[-x - 1] = -(i + 1);
            }
            fn(img, inv);
        }
    } while (std::next_permutation(base.begin(), base.end()));
}

inline int des_plain(const std::vector<std::int32_t>& v) {
    int c = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] > v[i + 1]) ++c;
    return c;
}

} // namespace detail

/// Exact law of t(w) = des(w) + des(w^{-1}) for a uniform element of one
/// irreducible factor. I2(m) has the closed form {0: 1/2m, 2: (m-1)/m,
/// 4: 1/2m}; the other families are tallied over a full enumeration
/// (streamed for A/B/D, table-backed for the exceptional types).
inline DiscreteDistribution exact_t_distribution(const IrreducibleType& t, std::uint64_t cap,
                                                 ExceptionalTables* tables = nullptr) {
    if (t.family == Family::I2) {
        const int m = t.parameter;
        return DiscreteDistribution({Rational(0), Rational(2), Rational(4)},
                                    {Rational(1, 2 * m), Rational(m - 1, m), Rational(1, 2 * m)});
    }
    if (t.order() > cap)
        throw OrderExceedsCap("factor " + t.name() + " has order " + t.order().str() +
                              " exceeding cap " + std::to_string(cap));
    std::map<int, std::uint64_t> counts;
    switch (t.family) {
        case Family::A:
            detail::for_each_a(t.parameter, [&](const auto& img, const auto& inv) {
                ++counts[detail::des_plain(img) + detail::des_plain(inv)];
            });
            break;
        case Family::B:
            detail::for_each_signed(t.parameter, false, [&](const auto& img, const auto& inv) {
                const int d1 = (img[0] < 0 ? 1 : 0) + detail::des_plain(img);
                const int d2 = (inv[0] < 0 ? 1 : 0) + detail::des_plain(inv);
                ++counts[d1 + d2];
            });
            break;
        case Family::D:
            detail::for_each_signed(t.parameter, true, [&](const auto& img, const auto& inv) {
                const int d1 = (img[0] + img[1] < 0 ? 1 : 0) + detail::des_plain(img);
                const int d2 = (inv[0] + inv[1] < 0 ? 1 : 0) + detail::des_plain(inv);
                ++counts[d1 + d2];
            });
            break;
        default: {
            ExceptionalTables local;
            ExceptionalTables& reg = tables ? *tables : local;
            const auto tbl = reg.ensure(t.family, cap);
            for (std::uint64_t i = 0; i < tbl->order; ++i) ++counts[tbl->tvalues[i]];
            break;
        }
    }
    return DiscreteDistribution::from_counts(counts, t.order());
}

/// Law of t over the whole product group: the convolution of the factor
/// laws (the factor statistics are independent). The trivial group gives
/// the point mass at 0.
inline DiscreteDistribution product_t_distribution(const CoxeterGroup& g, std::uint64_t cap,
                                                   ExceptionalTables* tables = nullptr) {
    DiscreteDistribution law = DiscreteDistribution::point_mass(Rational(0));
    for (const auto& f : g.factors) law = convolve(law, exact_t_distribution(f, cap, tables));
    return law;
}

} // namespace coxstat

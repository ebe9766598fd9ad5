#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "coxstat/enumerate.hpp"
#include "coxstat/rng.hpp"

namespace coxstat {

namespace detail {

inline void fisher_yates(std::vector<std::int32_t>& v, SeededRng& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.next_below(i)]);
}

// Draw protocol per factor (fixed, so element and t-only sampling agree):
//   A_p:  p shuffle draws
//   B_p:  p shuffle draws, then p sign bits
//   D_p:  p shuffle draws, then p sign bits; if the negative count is odd the
//         sign of position 1 is flipped (a bijection between odd and even
//         sign vectors, so uniformity is preserved without rejection)
//   I2:   one draw below 2m
//   exceptional: one draw below |W| into the prebuilt table

struct FactorScratch {
    std::vector<std::int32_t> img;
    std::vector<std::int32_t> inv;
};

inline void sample_a_img(int p, SeededRng& rng, std::vector<std::int32_t>& img) {
    img.resize(p + 1);
    for (int i = 0; i <= p; ++i) img[i] = i + 1;
    fisher_yates(img, rng);
}

inline void sample_signed_img(int p, SeededRng& rng, std::vector<std::int32_t>& img, bool even_parity) {
    img.resize(p);
    for (int i = 0; i < p; ++i) img[i] = i + 1;
    fisher_yates(img, rng);
    int neg = 0;
    for (int i = 0; i < p; ++i)
        if (rng.next_bool()) { img[i] = -img[i]; ++neg; }
    if (even_parity && (neg & 1)) img[0] = -img[0];
}

inline int des_a(const std::vector<std::int32_t>& v) {
    int c = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] > v[i + 1]) ++c;
    return c;
}

inline int des_b(const std::vector<std::int32_t>& v) {
    int c = v[0] < 0 ? 1 : 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] > v[i + 1]) ++c;
    return c;
}

inline int des_d(const std::vector<std::int32_t>& v) {
    int c = v[0] + v[1] < 0 ? 1 : 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] > v[i + 1]) ++c;
    return c;
}

inline void plain_inverse(const std::vector<std::int32_t>& v, std::vector<std::int32_t>& inv) {
    inv.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) inv[v[i] - 1] = static_cast<std::int32_t>(i + 1);
}

inline void signed_inverse_into(const std::vector<std::int32_t>& v, std::vector<std::int32_t>& inv) {
    inv.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::int32_t x = v[i];
        if (x > 0) inv[x - 1] = static_cast<std::int32_t>(i + 1);
        else inv[-x - 1] = -static_cast<std::int32_t>(i + 1);
    }
}

inline std::int32_t sample_factor_t(const IrreducibleType& t, SeededRng& rng,
                                    const ExceptionalTables& tables, FactorScratch& scratch) {
    switch (t.family) {
        case Family::A: {
            sample_a_img(t.parameter, rng, scratch.img);
            plain_inverse(scratch.img, scratch.inv);
            return des_a(scratch.img) + des_a(scratch.inv);
        }
        case Family::B: {
            sample_signed_img(t.parameter, rng, scratch.img, false);
            signed_inverse_into(scratch.img, scratch.inv);
            return des_b(scratch.img) + des_b(scratch.inv);
        }
        case Family::D: {
            sample_signed_img(t.parameter, rng, scratch.img, true);
            signed_inverse_into(scratch.img, scratch.inv);
            return des_d(scratch.img) + des_d(scratch.inv);
        }
        case Family::I2: {
            const std::int32_t m = t.parameter;
            const auto i = rng.next_below(static_cast<std::uint64_t>(2 * m));
            if (i == 0) return 0;
            if (i == static_cast<std::uint64_t>(2 * m - 1)) return 4;
            return 2;
        }
        default: {
            const auto& tbl = tables.require(t.family);
            return tbl.tvalues[rng.next_below(tbl.order)];
        }
    }
}

inline Component sample_factor_element(const IrreducibleType& t, SeededRng& rng,
                                       const ExceptionalTables& tables) {
    FactorScratch s;
    switch (t.family) {
        case Family::A:
            sample_a_img(t.parameter, rng, s.img);
            return APerm{std::move(s.img)};
        case Family::B:
            sample_signed_img(t.parameter, rng, s.img, false);
            return BPerm{std::move(s.img)};
        case Family::D:
            sample_signed_img(t.parameter, rng, s.img, true);
            return DPerm{std::move(s.img)};
        case Family::I2: {
            const std::int32_t m = t.parameter;
            const auto i = rng.next_below(static_cast<std::uint64_t>(2 * m));
            if (i == 0) return Dihedral{m, 0, 0};
            if (i == static_cast<std::uint64_t>(2 * m - 1)) return Dihedral{m, m, 0};
            return Dihedral{m, static_cast<std::int32_t>((i + 1) / 2),
                            static_cast<std::int8_t>(i % 2 == 1 ? 0 : 1)};
        }
        default: {
            const auto& tbl = tables.require(t.family);
            return tbl.elems[rng.next_below(tbl.order)];
        }
    }
}

} // namespace detail

/// Exactly uniform element of g. Exceptional factors draw from their
/// prebuilt tables (TableMissing otherwise).
inline GroupElement sample_uniform(const CoxeterGroup& g, SeededRng& rng,
                                   const ExceptionalTables& tables = {}) {
    GroupElement e;
    e.parts.reserve(g.factors.size());
    for (const auto& f : g.factors) e.parts.push_back(detail::sample_factor_element(f, rng, tables));
    return e;
}

/// t of a uniform element, without materializing it. Consumes exactly the
/// same draws as sample_uniform.
inline std::int32_t sample_t(const CoxeterGroup& g, SeededRng& rng,
                             const ExceptionalTables& tables = {}) {
    detail::FactorScratch scratch;
    std::int32_t t = 0;
    for (const auto& f : g.factors) t += detail::sample_factor_t(f, rng, tables, scratch);
    return t;
}

/// n two-sided descent values of independent uniform elements. Output is a
/// deterministic function of (rng seed, rng stream, g, n): work is split in
/// fixed chunks of 4096 samples, chunk c drawing from its own derived stream,
/// so any worker count produces identical results.
inline std::vector<std::int32_t> sample_batch(const CoxeterGroup& g, std::uint64_t n,
                                              const SeededRng& base, const ExceptionalTables& tables = {},
                                              int threads = 1) {
    constexpr std::uint64_t chunk = 4096;
    std::vector<std::int32_t> out(n);
    if (n == 0) return out;
    const std::uint64_t nchunks = (n + chunk - 1) / chunk;
    const std::uint64_t batch_seed = base.derived_batch_seed();

    auto work = [&](std::uint64_t c) {
        SeededRng rng(batch_seed, c);
        const std::uint64_t lo = c * chunk, hi = std::min(n, lo + chunk);
        for (std::uint64_t i = lo; i < hi; ++i) out[i] = sample_t(g, rng, tables);
    };

    if (threads <= 1 || nchunks == 1) {
        for (std::uint64_t c = 0; c < nchunks; ++c) work(c);
        return out;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    const int nt = std::min<std::uint64_t>(threads, nchunks);
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (std::uint64_t c = next.fetch_add(1); c < nchunks; c = next.fetch_add(1)) work(c);
        });
    for (auto& th : pool) th.join();
    return out;
}

} // namespace coxstat

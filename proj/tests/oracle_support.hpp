#pragma once

// Test-side oracles, deliberately independent of the library paths they
// check:
//  - Cayley-graph BFS lengths computed from multiply/generator only (checks
//    the length formulas and, through them, the descent rules)
//  - quadrature d2-to-normal via adaptive Simpson with bisection quantiles
//    on std::erfc (checks the closed-form partial-moment integration)
//  - random couplings with prescribed marginals (lower-bounds the optimal
//    coupling)

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "coxstat/coxstat.hpp"

namespace oracle {

using namespace coxstat;

/// BFS depth of every element of an enumerable group, indexed like `table`.
inline std::vector<int> cayley_bfs_lengths(const CoxeterGroup& g, const ElementTable& table) {
    std::vector<int> depth(table.size, -1);
    std::vector<std::uint64_t> queue;
    std::vector<GroupElement> gens;
    for (int s = 0; s < g.rank(); ++s) gens.push_back(generator(g, s));
    const std::uint64_t id = table.index_of(identity(g));
    depth[id] = 0;
    queue.push_back(id);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto cur = queue[head];
        const GroupElement w = table.at(cur);
        for (const auto& s : gens) {
            const auto nxt = table.index_of(multiply(w, s));
            if (depth[nxt] < 0) {
                depth[nxt] = depth[cur] + 1;
                queue.push_back(nxt);
            }
        }
    }
    return depth;
}

/// Descent set computed purely from BFS depths.
inline std::vector<int> bfs_descent_set(const CoxeterGroup& g, const ElementTable& table,
                                        const std::vector<int>& depth, std::uint64_t idx) {
    std::vector<int> out;
    const GroupElement w = table.at(idx);
    for (int s = 0; s < g.rank(); ++s) {
        const auto widx = table.index_of(multiply(w, generator(g, s)));
        if (depth[widx] < depth[idx]) out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// quadrature oracle

inline double phi_ref(double z) { return 0.39894228040143267794 * std::exp(-0.5 * z * z); }
inline double cdf_ref(double z) { return 0.5 * std::erfc(-z * 0.70710678118654752440); }

inline double quantile_bisect(double u) {
    double lo = -40.0, hi = 40.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf_ref(mid) < u) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// d2(law, Z) by direct quadrature of int (F^{-1}(Phi(z)) - z)^2 phi(z) dz,
/// pieces split at the quantiles of the law's cumulative probabilities.
/// Tails beyond |z| = 12 carry ~1e-31 of the integral and are dropped.
inline double quad_d2_to_normal(const std::vector<double>& values, const std::vector<double>& probs) {
    std::vector<double> cuts{-12.0};
    double c = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
        c += probs[i];
        cuts.push_back(quantile_bisect(std::min(1.0 - 1e-16, std::max(1e-16, c))));
    }
    cuts.push_back(12.0);
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        total += integrate([v](double z) { return (v - z) * (v - z) * phi_ref(z); },
                           cuts[i], cuts[i + 1], 1e-13);
    }
    return std::sqrt(std::max(0.0, total));
}

inline double quad_d2_to_normal(const DiscreteDistribution& d) {
    std::vector<double> v, p;
    for (std::size_t i = 0; i < d.size(); ++i) {
        v.push_back(d.value(i));
        p.push_back(d.prob_value(i));
    }
    return quad_d2_to_normal(v, p);
}

// ---------------------------------------------------------------------------
// random couplings

/// A valid (generally suboptimal) coupling of the two marginals: visit the
/// cells in random order, assigning min(remaining row, remaining column).
inline double random_coupling_l2(const DiscreteDistribution& mu, const DiscreteDistribution& nu,
                                 SeededRng& rng) {
    const std::size_t n = mu.size(), m = nu.size();
    std::vector<double> row(n), col(m);
    for (std::size_t i = 0; i < n; ++i) row[i] = mu.prob_value(i);
    for (std::size_t j = 0; j < m; ++j) col[j] = nu.prob_value(j);
    std::vector<std::size_t> cells(n * m);
    for (std::size_t k = 0; k < cells.size(); ++k) cells[k] = k;
    for (std::size_t k = cells.size(); k > 1; --k)
        std::swap(cells[k - 1], cells[rng.next_below(k)]);
    double cost = 0.0;
    for (const auto cell : cells) {
        const std::size_t i = cell / m, j = cell % m;
        const double w = std::min(row[i], col[j]);
        if (w <= 0.0) continue;
        row[i] -= w;
        col[j] -= w;
        const double diff = mu.value(i) - nu.value(j);
        cost += w * diff * diff;
    }
    return std::sqrt(std::max(0.0, cost));
}

} // namespace oracle

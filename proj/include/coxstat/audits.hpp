#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "coxstat/charfn.hpp"
#include "coxstat/descent_stats.hpp"
#include "coxstat/rng.hpp"
#include "coxstat/wasserstein.hpp"

namespace coxstat {

/// Outcome of one inequality audit suite. A violation is lhs > rhs + 1e-9.
struct AuditResult {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    double worst_margin = -1.0; // max over cases of lhs - rhs
};

inline constexpr double audit_tolerance = 1e-9;

/// Every irreducible type with order <= max_order from the fixed pool
/// A_1.., B_2.., D_4.., I2(3..20), H3, H4, F4, E6 (the infinite families
/// stop where the order cap stops them).
inline std::vector<IrreducibleType> small_factor_pool(std::uint64_t max_order = 10000) {
    std::vector<IrreducibleType> pool;
    for (int p = 1; make_irreducible(Family::A, p).order() <= max_order; ++p)
        pool.push_back(make_irreducible(Family::A, p));
    for (int p = 2; make_irreducible(Family::B, p).order() <= max_order; ++p)
        pool.push_back(make_irreducible(Family::B, p));
    for (int p = 4; make_irreducible(Family::D, p).order() <= max_order; ++p)
        pool.push_back(make_irreducible(Family::D, p));
    for (int m = 3; m <= 20; ++m)
        if (BigInt(2 * m) <= max_order) pool.push_back(make_irreducible(Family::I2, m));
    for (Family f : {Family::H3, Family::H4, Family::F4, Family::E6})
        if (make_irreducible(f).order() <= max_order) pool.push_back(make_irreducible(f));
    return pool;
}

inline std::vector<DiscreteDistribution> small_factor_laws(std::uint64_t max_order = 10000) {
    std::vector<DiscreteDistribution> laws;
    for (const auto& t : small_factor_pool(max_order))
        laws.push_back(exact_t_distribution(t, max_order));
    return laws;
}

/// The documented grid shared by the Lindeberg and simplified audits:
/// every small-factor law, zeta in {0.1, 0.2, ..., 3.0}, and
/// s_n in {s0, 2 s0, 10 s0, 100} with s0 = max(|zeta| sd, |zeta|), which
/// includes the precondition boundary zeta^2 Var / s_n^2 = 1.
template <typename Check>
inline AuditResult grid_audit(const std::string& name, std::uint64_t max_order, Check&& check) {
    AuditResult res;
    res.name = name;
    for (const auto& t : small_factor_pool(max_order)) {
        const DiscreteDistribution law = centered(exact_t_distribution(t, max_order));
        const double sd = std::sqrt(view_variance(law));
        const double K = 2.0 * t.rank();
        for (int zi = 1; zi <= 30; ++zi) {
            const double zeta = 0.1 * zi;
            const double s0 = std::max(zeta * sd, zeta);
            for (const double s_n : {s0, 2.0 * s0, 10.0 * s0, 100.0}) {
                const auto [lhs, rhs] = check(law, K, s_n, zeta);
                ++res.checked;
                res.worst_margin = std::max(res.worst_margin, lhs - rhs);
                if (lhs > rhs + audit_tolerance) ++res.violations;
            }
        }
    }
    return res;
}

inline AuditResult lindeberg_grid_audit(std::uint64_t max_order = 10000) {
    return grid_audit("lindeberg_bound", max_order,
                      [](const DiscreteDistribution& d, double, double s_n, double zeta) {
                          return check_lindeberg_bound(d, s_n, zeta);
                      });
}

inline AuditResult simplified_grid_audit(std::uint64_t max_order = 10000) {
    return grid_audit("simplified_bound", max_order,
                      [](const DiscreteDistribution& d, double K, double s_n, double zeta) {
                          return check_simplified_bound(d, K, s_n, zeta);
                      });
}

inline AuditResult product_inequality_audit(std::uint64_t trials = 1000, std::uint64_t seed = 20240501) {
    AuditResult res;
    res.name = "product_difference_bound";
    SeededRng rng(seed, 0);
    auto disk = [&]() {
        while (true) {
            const double re = 2.0 * rng.next_double() - 1.0;
            const double im = 2.0 * rng.next_double() - 1.0;
            if (re * re + im * im <= 1.0) return std::complex<double>(re, im);
        }
    };
    for (std::uint64_t k = 0; k < trials; ++k) {
        const auto len = 1 + rng.next_below(20);
        std::vector<std::complex<double>> a(len), b(len);
        for (auto& z : a) z = disk();
        for (auto& z : b) z = disk();
        const auto [lhs, rhs] = product_difference_bound(a, b);
        ++res.checked;
        res.worst_margin = std::max(res.worst_margin, lhs - rhs);
        if (lhs > rhs + audit_tolerance) ++res.violations;
    }
    return res;
}

inline AuditResult lipschitz_audit(std::uint64_t trials = 1000, std::uint64_t seed = 20240502,
                                   std::uint64_t max_order = 10000) {
    AuditResult res;
    res.name = "lipschitz_bound";
    std::vector<DiscreteDistribution> laws;
    std::vector<double> dists;
    for (auto& law : small_factor_laws(max_order)) {
        auto std_law = standardize(law);
        dists.push_back(d2_to_normal(std_law));
        laws.push_back(std::move(std_law));
    }
    SeededRng rng(seed, 0);
    for (std::uint64_t k = 0; k < trials; ++k) {
        const auto i = rng.next_below(laws.size());
        const double weight = rng.next_double();
        const double zeta = 10.0 * rng.next_double() - 5.0;
        const auto [lhs, rhs] = check_lipschitz_bound(laws[i], weight, zeta, dists[i]);
        ++res.checked;
        res.worst_margin = std::max(res.worst_margin, lhs - rhs);
        if (lhs > rhs + audit_tolerance) ++res.violations;
    }
    return res;
}

/// Random finitely supported law with exact rational probabilities
/// (integer weights over a common denominator) and support drawn in
/// [-span, span]; at least two atoms, so the variance is positive.
inline DiscreteDistribution random_discrete_law(SeededRng& rng, int max_atoms = 6, double span = 3.0) {
    const int n = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_atoms - 1)));
    std::vector<double> pts;
    while (static_cast<int>(pts.size()) < n) {
        const double x = span * (2.0 * rng.next_double() - 1.0);
        bool dup = false;
        for (double y : pts)
            if (std::fabs(x - y) < 1e-6) dup = true;
        if (!dup) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<Rational> sup, pr;
    BigInt total = 0;
    std::vector<std::uint64_t> w(n);
    for (auto& wi : w) {
        wi = 1 + rng.next_below(16);
        total += wi;
    }
    for (int i = 0; i < n; ++i) {
        sup.emplace_back(Rational(pts[i])); // dyadic rational, exact
        pr.emplace_back(Rational(BigInt(w[i]), total));
    }
    return DiscreteDistribution(std::move(sup), std::move(pr));
}

inline AuditResult mallows_sum_audit(std::uint64_t trials = 1000, std::uint64_t seed = 20240503) {
    AuditResult res;
    res.name = "mallows_sum_inequality";
    SeededRng rng(seed, 0);
    for (std::uint64_t k = 0; k < trials; ++k) {
        const int nfac = 1 + static_cast<int>(rng.next_below(10));
        std::vector<DiscreteDistribution> laws;
        std::vector<double> coeffs(nfac);
        laws.reserve(nfac);
        for (int j = 0; j < nfac; ++j)
            laws.push_back(standardize(random_discrete_law(rng, 3)));
        double sq = 0.0;
        for (auto& c : coeffs) {
            c = 2.0 * rng.next_double() - 1.0;
            sq += c * c;
        }
        if (sq == 0.0) { coeffs[0] = 1.0; sq = 1.0; }
        for (auto& c : coeffs) c /= std::sqrt(sq);
        const auto [lhs, rhs] = check_mallows_sum_inequality(laws, coeffs);
        ++res.checked;
        res.worst_margin = std::max(res.worst_margin, lhs - rhs);
        if (lhs > rhs + audit_tolerance) ++res.violations;
    }
    return res;
}

inline std::vector<AuditResult> run_all_audits(std::uint64_t max_order = 10000) {
    return {lindeberg_grid_audit(max_order), simplified_grid_audit(max_order),
            product_inequality_audit(), lipschitz_audit(1000, 20240502, max_order),
            mallows_sum_audit()};
}

} // namespace coxstat

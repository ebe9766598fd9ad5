#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "coxstat/distribution.hpp"

namespace coxstat {

/// E[exp(i zeta X)] over the viewed support.
inline std::complex<double> charfn(const DiscreteDistribution& d, double zeta) {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double a = zeta * d.value(k);
        s += d.prob_value(k) * std::complex<double>(std::cos(a), std::sin(a));
    }
    return s;
}

namespace detail {

inline void require_centered(const DiscreteDistribution& d) {
    if (std::fabs(view_mean(d)) > 1e-9)
        throw PreconditionViolated("law must be centered (mean 0)");
}

inline void require_standardized(const DiscreteDistribution& d) {
    if (std::fabs(view_mean(d)) > 1e-9 || std::fabs(view_variance(d) - 1.0) > 1e-9)
        throw PreconditionViolated("law must be standardized (mean 0, variance 1)");
}

} // namespace detail

/// Lindeberg-type characteristic function estimate for one centered summand
/// against its Gaussian surrogate at frequency zeta / s_n:
///   lhs = |E exp(i (zeta/s_n) X) - exp(-zeta^2 Var / (2 s_n^2))|
///   rhs = (|zeta|^3 / s_n^3) E|X|^3 + (zeta^4 / s_n^4) Var^2
/// valid under zeta^2 Var / s_n^2 <= 1.
inline std::pair<double, double> check_lindeberg_bound(const DiscreteDistribution& d,
                                                       double s_n, double zeta) {
    detail::require_centered(d);
    if (!(s_n > 0)) throw PreconditionViolated("s_n must be positive");
    const double var = view_variance(d);
    if (zeta * zeta * var > s_n * s_n * (1.0 + 1e-12))
        throw PreconditionViolated("needs zeta^2 Var / s_n^2 <= 1");
    const double lhs =
        std::abs(charfn(d, zeta / s_n) - std::complex<double>(std::exp(-zeta * zeta * var / (2 * s_n * s_n))));
    const double e3 = view_abs_third_central(d);
    const double az = std::fabs(zeta);
    const double rhs = (az * az * az) / (s_n * s_n * s_n) * e3 +
                       (zeta * zeta * zeta * zeta) / (s_n * s_n * s_n * s_n) * var * var;
    return {lhs, rhs};
}

/// Simplified form of the same estimate for a summand bounded by K:
/// rhs = 2 K^2 |zeta|^3 Var / s_n^3, additionally requiring |zeta| <= s_n.
inline std::pair<double, double> check_simplified_bound(const DiscreteDistribution& d, double K,
                                                        double s_n, double zeta) {
    detail::require_centered(d);
    if (!(s_n > 0)) throw PreconditionViolated("s_n must be positive");
    for (std::size_t k = 0; k < d.size(); ++k)
        if (std::fabs(d.value(k)) > K + 1e-12)
            throw PreconditionViolated("law is not bounded by K");
    if (std::fabs(zeta) > s_n) throw PreconditionViolated("needs |zeta| <= s_n");
    const double var = view_variance(d);
    if (zeta * zeta * var > s_n * s_n * (1.0 + 1e-12))
        throw PreconditionViolated("needs zeta^2 Var / s_n^2 <= 1");
    const double lhs =
        std::abs(charfn(d, zeta / s_n) - std::complex<double>(std::exp(-zeta * zeta * var / (2 * s_n * s_n))));
    const double az = std::fabs(zeta);
    const double rhs = 2.0 * K * K * az * az * az * var / (s_n * s_n * s_n);
    return {lhs, rhs};
}

/// |prod a_i - prod b_i| <= sum |a_i - b_i| for unit-disk numbers.
inline std::pair<double, double> product_difference_bound(const std::vector<std::complex<double>>& a,
                                                          const std::vector<std::complex<double>>& b) {
    if (a.size() != b.size()) throw Error("tuples must have equal length");
    for (const auto& z : a)
        if (std::abs(z) > 1.0 + 1e-12) throw ModulusExceedsOne("tuple entry outside the unit disk");
    for (const auto& z : b)
        if (std::abs(z) > 1.0 + 1e-12) throw ModulusExceedsOne("tuple entry outside the unit disk");
    std::complex<double> pa{1.0, 0.0}, pb{1.0, 0.0};
    double rhs = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        pa *= a[i];
        pb *= b[i];
        rhs += std::abs(a[i] - b[i]);
    }
    return {std::abs(pa - pb), rhs};
}

/// Large-component estimate: a standardized law within d2_value of the
/// normal satisfies, for any weight in [0,1],
///   |E exp(i zeta w X) - exp(-zeta^2 w^2 / 2)| <= |zeta| d2_value.
inline std::pair<double, double> check_lipschitz_bound(const DiscreteDistribution& d, double weight,
                                                       double zeta, double d2_value) {
    detail::require_standardized(d);
    if (!(weight >= 0.0 && weight <= 1.0)) throw PreconditionViolated("weight must lie in [0,1]");
    const double lhs =
        std::abs(charfn(d, zeta * weight) -
                 std::complex<double>(std::exp(-zeta * zeta * weight * weight / 2.0)));
    return {lhs, std::fabs(zeta) * d2_value};
}

} // namespace coxstat

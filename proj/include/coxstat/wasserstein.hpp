#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "coxstat/distribution.hpp"
#include "coxstat/normal.hpp"

namespace coxstat {

/// Step form of the inverse CDF: value[i] on the probability interval
/// (cum[i-1], cum[i]]. Cumulative probabilities stay exact so segment
/// boundaries merge without floating-point ties.
struct QuantileView {
    std::vector<Rational> cum;  // strictly increasing, last == 1
    std::vector<double> value;  // nondecreasing viewed support
};

inline QuantileView make_quantile_view(const DiscreteDistribution& d) {
    QuantileView q;
    q.cum.reserve(d.size());
    q.value.reserve(d.size());
    Rational c = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        c += d.prob_at(i);
        q.cum.push_back(c);
        q.value.push_back(d.value(i));
    }
    return q;
}

/// Mallows / Wasserstein-2 distance between two finitely supported laws:
/// the L2 distance of quantile functions over the merged breakpoint
/// partition (the comonotone coupling attains the infimum on the line).
inline double d2_discrete(const DiscreteDistribution& mu, const DiscreteDistribution& nu) {
    const QuantileView a = make_quantile_view(mu), b = make_quantile_view(nu);
    std::size_t i = 0, j = 0;
    Rational prev = 0;
    double total = 0.0;
    while (i < a.cum.size() && j < b.cum.size()) {
        const Rational& cut = std::min(a.cum[i], b.cum[j]);
        const double w = to_double(cut - prev);
        const double diff = a.value[i] - b.value[j];
        total += w * diff * diff;
        prev = cut;
        if (a.cum[i] == cut) ++i;
        if (j < b.cum.size() && b.cum[j] == cut) ++j;
    }
    return std::sqrt(std::max(0.0, total));
}

namespace detail {

/// shared integrator: sum over steps of int (v_i - Qnorm(u))^2 du with the
/// closed-form partial moments
inline double d2_to_normal_sq(const std::vector<double>& cum, const std::vector<double>& value) {
    double total = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < value.size(); ++i) {
        const double hi = i + 1 == value.size() ? 1.0 : cum[i];
        if (hi > prev) {
            const auto [m1, m2] = normal_partial_moments(prev, hi);
            const double v = value[i];
            total += v * v * (hi - prev) - 2.0 * v * m1 + m2;
        }
        prev = hi;
    }
    return std::max(0.0, total);
}

} // namespace detail

/// d2 between a finitely supported law (viewed values) and the standard
/// normal, via closed-form piecewise integration of the quantile coupling.
inline double d2_to_normal(const DiscreteDistribution& mu) {
    const QuantileView q = make_quantile_view(mu);
    std::vector<double> cum(q.cum.size());
    for (std::size_t i = 0; i < cum.size(); ++i) cum[i] = to_double(q.cum[i]);
    return std::sqrt(detail::d2_to_normal_sq(cum, q.value));
}

/// Kolmogorov-Smirnov distance to the standard normal: for a step CDF the
/// supremum is attained at a jump, from one side or the other.
inline double ks_to_normal(const DiscreteDistribution& mu) {
    double best = 0.0, below = 0.0;
    Rational c = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double phi = norm_cdf(mu.value(i));
        c += mu.prob_at(i);
        const double above = to_double(c);
        best = std::max({best, std::fabs(phi - below), std::fabs(above - phi)});
        below = above;
    }
    return best;
}

// ---------------------------------------------------------------------------
// real-valued step laws: the internal carrier for scaled sums a_1 X_1 + ...

struct RealStepLaw {
    std::vector<double> value; // strictly increasing
    std::vector<double> prob;
};

inline RealStepLaw real_step_law(const DiscreteDistribution& d, double coeff) {
    RealStepLaw r;
    r.value.reserve(d.size());
    r.prob.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        r.value.push_back(coeff * d.value(i));
        r.prob.push_back(d.prob_value(i));
    }
    if (coeff < 0) {
        std::reverse(r.value.begin(), r.value.end());
        std::reverse(r.prob.begin(), r.prob.end());
    }
    return r;
}

inline RealStepLaw convolve_real(const RealStepLaw& a, const RealStepLaw& b) {
    std::map<double, double> acc;
    for (std::size_t i = 0; i < a.value.size(); ++i)
        for (std::size_t j = 0; j < b.value.size(); ++j)
            acc[a.value[i] + b.value[j]] += a.prob[i] * b.prob[j];
    RealStepLaw r;
    r.value.reserve(acc.size());
    r.prob.reserve(acc.size());
    for (const auto& [x, p] : acc) {
        r.value.push_back(x);
        r.prob.push_back(p);
    }
    return r;
}

inline double d2_to_normal(const RealStepLaw& law) {
    std::vector<double> cum(law.prob.size());
    long double c = 0.0L;
    for (std::size_t i = 0; i < law.prob.size(); ++i) {
        c += law.prob[i];
        cum[i] = std::min(1.0, static_cast<double>(c));
    }
    return std::sqrt(detail::d2_to_normal_sq(cum, law.value));
}

/// Both sides of the Mallows sum inequality for standardized laws X_j and
/// coefficients with sum of squares 1:
///   lhs = d2(sum_j a_j X_j, Z),   rhs = sum_j a_j^2 d2(X_j, Z).
/// The returned pair is (lhs, rhs); callers assert lhs <= rhs (+tolerance).
inline std::pair<double, double> check_mallows_sum_inequality(
    const std::vector<DiscreteDistribution>& laws, const std::vector<double>& coeffs) {
    if (laws.empty() || laws.size() != coeffs.size())
        throw ConstraintViolated("need matching nonempty laws and coefficients");
    double sq = 0.0;
    for (double a : coeffs) sq += a * a;
    if (std::fabs(sq - 1.0) > 1e-12)
        throw ConstraintViolated("coefficients must satisfy sum a_j^2 = 1");
    for (const auto& d : laws) {
        if (std::fabs(view_mean(d)) > 1e-9 || std::fabs(view_variance(d) - 1.0) > 1e-9)
            throw ConstraintViolated("laws must be standardized (mean 0, variance 1)");
    }
    RealStepLaw sum{{0.0}, {1.0}};
    for (std::size_t j = 0; j < laws.size(); ++j)
        sum = convolve_real(sum, real_step_law(laws[j], coeffs[j]));
    const double lhs = d2_to_normal(sum);
    double rhs = 0.0;
    for (std::size_t j = 0; j < laws.size(); ++j)
        rhs += coeffs[j] * coeffs[j] * d2_to_normal(laws[j]);
    return {lhs, rhs};
}

} // namespace coxstat

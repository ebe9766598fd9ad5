#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxstat/rational.hpp"

namespace coxstat {

/// Non-destructive affine reparametrization: the viewed variable is
/// (X - shift) / scale. `scale_sq` keeps the exact square when the scale is
/// an exact square root (standardization stores the variance there), so
/// viewed second moments stay exact.
struct AffineView {
    Rational shift = 0;
    double scale = 1.0;
    Rational scale_sq = 1;
};

/// Finitely supported law with exact rational atoms. Support is strictly
/// increasing, probabilities are positive and sum to exactly 1. An optional
/// affine view supplies the standardized (real-valued) reading without
/// touching the exact data.
class DiscreteDistribution {
  public:
    DiscreteDistribution(std::vector<Rational> support, std::vector<Rational> probs,
                         std::optional<AffineView> view = std::nullopt)
        : support_(std::move(support)), probs_(std::move(probs)), view_(std::move(view)) {
        if (support_.size() != probs_.size() || support_.empty())
            throw Error("distribution needs matching nonempty support and probabilities");
        Rational sum = 0;
        for (std::size_t i = 0; i < support_.size(); ++i) {
            if (probs_[i] <= 0) throw Error("probabilities must be positive");
            if (i > 0 && !(support_[i - 1] < support_[i]))
                throw Error("support must be strictly increasing");
            sum += probs_[i];
        }
        if (sum != 1) throw Error("probabilities must sum to exactly 1");
    }

    static DiscreteDistribution point_mass(const Rational& x) {
        return DiscreteDistribution({x}, {Rational(1)});
    }

    template <typename Map> // ordered map: integer-like -> count
    static DiscreteDistribution from_counts(const Map& counts, const BigInt& total) {
        std::vector<Rational> sup, pr;
        for (const auto& [x, c] : counts) {
            if (c == 0) continue;
            sup.emplace_back(x);
            pr.emplace_back(Rational(BigInt(c), total));
        }
        return DiscreteDistribution(std::move(sup), std::move(pr));
    }

    std::size_t size() const { return support_.size(); }
    const std::vector<Rational>& support() const { return support_; }
    const std::vector<Rational>& probs() const { return probs_; }
    const Rational& support_at(std::size_t i) const { return support_[i]; }
    const Rational& prob_at(std::size_t i) const { return probs_[i]; }

    bool has_view() const { return view_.has_value(); }
    const AffineView& view() const {
        if (!view_) throw Error("distribution has no affine view");
        return *view_;
    }

    /// Real value of atom i under the view (raw support when no view).
    double value(std::size_t i) const {
        if (!view_) return to_double(support_[i]);
        return to_double(support_[i] - view_->shift) / view_->scale;
    }
    double prob_value(std::size_t i) const { return to_double(probs_[i]); }

    DiscreteDistribution with_view(AffineView v) const {
        return DiscreteDistribution(support_, probs_, std::move(v));
    }
    /// Drops the view, recovering the exact underlying law.
    DiscreteDistribution without_view() const { return DiscreteDistribution(support_, probs_); }

    friend bool operator==(const DiscreteDistribution& a, const DiscreteDistribution& b) {
        if (a.support_ != b.support_ || a.probs_ != b.probs_) return false;
        if (a.view_.has_value() != b.view_.has_value()) return false;
        if (!a.view_) return true;
        return a.view_->shift == b.view_->shift && a.view_->scale == b.view_->scale &&
               a.view_->scale_sq == b.view_->scale_sq;
    }

  private:
    std::vector<Rational> support_;
    std::vector<Rational> probs_;
    std::optional<AffineView> view_;
};

struct Moments {
    Rational mean = 0;
    Rational variance = 0;
    double abs_third_central = 0.0;
};

/// Exact mean and variance of the underlying law (the view does not enter).
inline Moments moments(const DiscreteDistribution& d) {
    Moments m;
    for (std::size_t i = 0; i < d.size(); ++i) m.mean += d.prob_at(i) * d.support_at(i);
    Rational abs3 = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Rational c = d.support_at(i) - m.mean;
        m.variance += d.prob_at(i) * c * c;
        const Rational a = c < 0 ? Rational(-c) : c;
        abs3 += d.prob_at(i) * a * a * a;
    }
    m.abs_third_central = to_double(abs3);
    return m;
}

/// Moments of the viewed (affinely transformed) law.
inline double view_mean(const DiscreteDistribution& d) {
    if (!d.has_view()) return to_double(moments(d).mean);
    return to_double(moments(d).mean - d.view().shift) / d.view().scale;
}
inline double view_variance(const DiscreteDistribution& d) {
    const Moments m = moments(d);
    if (!d.has_view()) return to_double(m.variance);
    return to_double(m.variance / d.view().scale_sq);
}
/// Exact viewed variance (variance / scale^2); equals 1 exactly after
/// standardize().
inline Rational view_variance_exact(const DiscreteDistribution& d) {
    const Moments m = moments(d);
    if (!d.has_view()) return m.variance;
    return m.variance / d.view().scale_sq;
}
inline double view_abs_third_central(const DiscreteDistribution& d) {
    const Moments m = moments(d);
    if (!d.has_view()) return m.abs_third_central;
    if (d.view().shift == m.mean) {
        const double sc = d.view().scale;
        return m.abs_third_central / (sc * sc * sc);
    }
    // a view that does not centre at the mean: sum directly
    double s = 0.0;
    const double mu = view_mean(d);
    for (std::size_t i = 0; i < d.size(); ++i)
        s += d.prob_value(i) * std::pow(std::abs(d.value(i) - mu), 3.0);
    return s;
}

/// Law of the sum of independent draws; exact rational arithmetic.
inline DiscreteDistribution convolve(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    if (a.has_view() || b.has_view())
        throw PreconditionViolated("convolve expects exact laws without affine views");
    std::map<Rational, Rational> acc;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[a.support_at(i) + b.support_at(j)] += a.prob_at(i) * b.prob_at(j);
    std::vector<Rational> sup, pr;
    sup.reserve(acc.size());
    pr.reserve(acc.size());
    for (auto& [x, p] : acc) {
        sup.push_back(x);
        pr.push_back(p);
    }
    return DiscreteDistribution(std::move(sup), std::move(pr));
}

/// Attaches the standardizing view (shift = mean, scale = sqrt(variance)).
inline DiscreteDistribution standardize(const DiscreteDistribution& d) {
    const Moments m = moments(d.has_view() ? d.without_view() : d);
    if (m.variance == 0) throw ZeroVariance("cannot standardize a point mass");
    AffineView v;
    v.shift = m.mean;
    v.scale_sq = m.variance;
    v.scale = std::sqrt(to_double(m.variance));
    return d.with_view(std::move(v));
}

/// Centering view only (shift = mean, scale = 1); used by the
/// characteristic-function bounds.
inline DiscreteDistribution centered(const DiscreteDistribution& d) {
    const Moments m = moments(d);
    return d.with_view(AffineView{m.mean, 1.0, Rational(1)});
}

// ---------------------------------------------------------------------------
// JSON: {"support": ["0","2",...], "probs": ["1/6","2/3",...],
//        "shift": number|null, "scale": number|null}

inline nlohmann::json distribution_to_json(const DiscreteDistribution& d) {
    nlohmann::json j;
    j["support"] = nlohmann::json::array();
    j["probs"] = nlohmann::json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
        j["support"].push_back(rational_str(d.support_at(i)));
        j["probs"].push_back(rational_str(d.prob_at(i)));
    }
    if (d.has_view()) {
        j["shift"] = to_double(d.view().shift);
        j["scale"] = d.view().scale;
    } else {
        j["shift"] = nullptr;
        j["scale"] = nullptr;
    }
    return j;
}

inline DiscreteDistribution distribution_from_json(const nlohmann::json& j) {
    if (!j.contains("support") || !j.contains("probs"))
        throw ParseError("distribution JSON needs 'support' and 'probs'");
    std::vector<Rational> sup, pr;
    for (const auto& s : j.at("support")) sup.push_back(parse_rational(s.get<std::string>()));
    for (const auto& s : j.at("probs")) pr.push_back(parse_rational(s.get<std::string>()));
    std::optional<AffineView> view;
    if (j.contains("shift") && !j.at("shift").is_null()) {
        AffineView v;
        v.shift = Rational(j.at("shift").get<double>());
        v.scale = j.at("scale").get<double>();
        if (!(v.scale > 0)) throw ParseError("view scale must be positive");
        v.scale_sq = Rational(v.scale) * Rational(v.scale);
        view = std::move(v);
    }
    try {
        return DiscreteDistribution(std::move(sup), std::move(pr), std::move(view));
    } catch (const Error& e) {
        throw ParseError(std::string("invalid distribution JSON: ") + e.what());
    }
}

} // namespace coxstat

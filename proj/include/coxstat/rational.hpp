#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

#include "coxstat/errors.hpp"

namespace coxstat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Canonical text form: "n" for integers, "n/d" otherwise.
inline std::string rational_str(const Rational& q) { return q.str(); }

inline Rational parse_rational(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw ParseError("invalid rational literal: '" + s + "'");
    }
}

/// log10 of a positive big integer, good to ~1e-12 even when the value
/// overflows double range.
inline double log10_bigint(const BigInt& n) {
    if (n <= 0) throw Error("log10_bigint requires a positive integer");
    const std::string s = n.str();
    const std::size_t take = std::min<std::size_t>(s.size(), 17);
    const double lead = std::stod(s.substr(0, take));
    return std::log10(lead) + static_cast<double>(s.size() - take);
}

} // namespace coxstat

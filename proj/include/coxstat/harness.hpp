#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxstat/descent_stats.hpp"
#include "coxstat/sample.hpp"
#include "coxstat/wasserstein.hpp"

namespace coxstat {

enum class RunMode { Exact, MonteCarlo, Auto };

inline std::string run_mode_name(RunMode m) {
    switch (m) {
        case RunMode::Exact: return "exact";
        case RunMode::MonteCarlo: return "montecarlo";
        case RunMode::Auto: return "auto";
    }
    return "?";
}

inline RunMode parse_run_mode(const std::string& s) {
    if (s == "exact") return RunMode::Exact;
    if (s == "montecarlo") return RunMode::MonteCarlo;
    if (s == "auto") return RunMode::Auto;
    throw ParseError("mode must be exact, montecarlo or auto (got '" + s + "')");
}

/// One experiment: an explicit finite prefix of a group sequence plus the
/// computation policy.
struct SequenceSpec {
    std::string name;
    std::vector<std::string> groups; // group spec strings, index n = 1..N
    RunMode mode = RunMode::Auto;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    std::uint64_t cap = 10000000; // enumeration cap (element count)
};

/// Validates a JSON experiment spec; reports every invalid group string.
inline SequenceSpec parse_spec(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("spec is not valid JSON: ") + e.what());
    }
    SequenceSpec s;
    try {
        if (j.contains("name")) s.name = j.at("name").get<std::string>();
        if (j.contains("mode")) s.mode = parse_run_mode(j.at("mode").get<std::string>());
        if (j.contains("samples")) s.samples = j.at("samples").get<std::uint64_t>();
        if (j.contains("cap")) s.cap = j.at("cap").get<std::uint64_t>();
        if (j.contains("seed")) {
            if (j.at("seed").is_string()) s.seed = std::stoull(j.at("seed").get<std::string>());
            else s.seed = j.at("seed").get<std::uint64_t>();
        }
        if (!j.contains("groups") || !j.at("groups").is_array())
            throw ParseError("spec needs a 'groups' array");
        for (const auto& g : j.at("groups")) s.groups.push_back(g.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad spec field: ") + e.what());
    }
    if (s.groups.empty()) throw ParseError("spec needs at least one group");
    if (s.mode != RunMode::Exact && s.samples == 0)
        throw ParseError("samples must be positive when Monte Carlo is permitted");

    std::vector<std::string> bad;
    bool all_param = true;
    for (std::size_t i = 0; i < s.groups.size(); ++i) {
        try {
            parse_group(s.groups[i]);
        } catch (const ParameterOutOfRange& e) {
            bad.push_back("groups[" + std::to_string(i) + "] '" + s.groups[i] + "': " + e.what());
        } catch (const Error& e) {
            all_param = false;
            bad.push_back("groups[" + std::to_string(i) + "] '" + s.groups[i] + "': " + e.what());
        }
    }
    if (!bad.empty()) {
        std::string msg;
        for (std::size_t i = 0; i < bad.size(); ++i) msg += (i ? "; " : "") + bad[i];
        if (all_param) throw ParameterOutOfRange(msg);
        throw ParseError(msg);
    }
    return s;
}

struct ReportRow {
    int index = 0; // 1-based position in the sequence
    std::string group;
    int rank = 0;
    double log10_order = 0.0;
    std::string method; // "exact" | "montecarlo"
    double mean = 0.0;
    double variance = 0.0;
    std::optional<double> d2_normal;
    std::optional<double> ks_normal;
    bool has_exact = false; // exact rational moments present
    Rational mean_exact = 0;
    Rational variance_exact = 0;
    std::vector<std::string> warnings;
    double wall_ms = 0.0; // excluded from equality and default output

    friend bool operator==(const ReportRow& a, const ReportRow& b) {
        return a.index == b.index && a.group == b.group && a.rank == b.rank &&
               a.log10_order == b.log10_order && a.method == b.method && a.mean == b.mean &&
               a.variance == b.variance && a.d2_normal == b.d2_normal &&
               a.ks_normal == b.ks_normal && a.has_exact == b.has_exact &&
               a.mean_exact == b.mean_exact && a.variance_exact == b.variance_exact &&
               a.warnings == b.warnings;
    }
};

struct ExperimentReport {
    std::string name;
    std::string mode;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::uint64_t cap = 0;
    std::vector<ReportRow> rows;
    std::vector<std::string> warnings; // report-level flags

    friend bool operator==(const ExperimentReport& a, const ExperimentReport& b) {
        return a.name == b.name && a.mode == b.mode && a.seed == b.seed &&
               a.samples == b.samples && a.cap == b.cap && a.rows == b.rows &&
               a.warnings == b.warnings;
    }
};

namespace detail {

inline bool exact_feasible(const CoxeterGroup& g, std::uint64_t cap) {
    for (const auto& f : g.factors)
        if (f.family != Family::I2 && f.order() > cap) return false;
    return true;
}

} // namespace detail

/// Runs the experiment: one row per group, exact pipeline when every factor
/// is enumerable (or dihedral), Monte Carlo otherwise (mode=auto). Rows are
/// deterministic functions of (spec, seed); Monte Carlo row n draws from
/// stream n, and thread count never changes any output byte.
inline ExperimentReport run_experiment(const SequenceSpec& spec, int threads = 1,
                                       const std::string& cache_dir = "") {
    ExperimentReport rep;
    rep.name = spec.name;
    rep.mode = run_mode_name(spec.mode);
    rep.seed = spec.seed;
    rep.samples = spec.samples;
    rep.cap = spec.cap;
    ExceptionalTables tables;

    for (std::size_t n = 0; n < spec.groups.size(); ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        const CoxeterGroup g = parse_group(spec.groups[n]);
        ReportRow row;
        row.index = static_cast<int>(n) + 1;
        row.group = g.name();
        row.rank = g.rank();
        row.log10_order = log10_bigint(g.order());

        const bool feasible = detail::exact_feasible(g, spec.cap);
        bool exact = false;
        switch (spec.mode) {
            case RunMode::Exact:
                if (!feasible)
                    throw OrderExceedsCap("group " + g.name() +
                                          " is not enumerable within cap in exact mode");
                exact = true;
                break;
            case RunMode::MonteCarlo: exact = false; break;
            case RunMode::Auto: exact = feasible; break;
        }

        if (exact) {
            row.method = "exact";
            const DiscreteDistribution law = product_t_distribution(g, spec.cap, &tables);
            const Moments m = moments(law);
            row.mean = to_double(m.mean);
            row.variance = to_double(m.variance);
            row.has_exact = true;
            row.mean_exact = m.mean;
            row.variance_exact = m.variance;
            if (m.variance == 0) {
                row.warnings.push_back("zero_variance");
            } else {
                const DiscreteDistribution std_law = standardize(law);
                row.d2_normal = d2_to_normal(std_law);
                row.ks_normal = ks_to_normal(std_law);
            }
        } else {
            row.method = "montecarlo";
            for (const auto& f : g.factors)
                if (is_exceptional(f.family)) tables.ensure(f.family, spec.cap, cache_dir);
            const auto ts =
                sample_batch(g, spec.samples, SeededRng(spec.seed, n), tables, threads);
            std::map<std::int64_t, std::uint64_t> counts;
            for (auto v : ts) ++counts[v];
            const DiscreteDistribution emp =
                DiscreteDistribution::from_counts(counts, BigInt(spec.samples));
            const Moments m = moments(emp);
            row.mean = to_double(m.mean);
            row.variance = to_double(m.variance);
            if (m.variance == 0) {
                row.warnings.push_back("zero_variance");
            } else {
                const DiscreteDistribution std_emp = standardize(emp);
                row.d2_normal = d2_to_normal(std_emp);
                row.ks_normal = ks_to_normal(std_emp);
            }
        }
        row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep.rows.push_back(std::move(row));
    }

    // necessity-direction heuristic: the theorem needs the variance column to
    // diverge; flag any sequence whose variance fails to at least double from
    // the first row to the last
    bool bounded = rep.rows.size() < 2;
    if (!bounded) {
        const auto& first = rep.rows.front();
        const auto& last = rep.rows.back();
        if (first.has_exact && last.has_exact)
            bounded = last.variance_exact < 2 * first.variance_exact;
        else
            bounded = last.variance < 2.0 * first.variance;
    }
    if (bounded) rep.warnings.push_back("variance_column_bounded");
    return rep;
}

// ---------------------------------------------------------------------------
// emission: CSV and versioned JSON; wall time only with timing=true so that
// default output is byte-stable for fixed (spec, seed)

namespace detail {

inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

} // namespace detail

inline void emit_report_csv(const ExperimentReport& rep, std::ostream& os, bool timing = false) {
    for (const auto& w : rep.warnings) os << "# warning: " << w << "\n";
    os << "index,group,rank,log10_order,method,mean,variance,mean_exact,variance_exact,"
          "d2_normal,ks_normal,warnings";
    if (timing) os << ",wall_ms";
    os << "\n";
    for (const auto& r : rep.rows) {
        os << r.index << ',' << r.group << ',' << r.rank << ','
           << detail::fmt_double(r.log10_order) << ',' << r.method << ','
           << detail::fmt_double(r.mean) << ',' << detail::fmt_double(r.variance) << ','
           << (r.has_exact ? rational_str(r.mean_exact) : "") << ','
           << (r.has_exact ? rational_str(r.variance_exact) : "") << ','
           << (r.d2_normal ? detail::fmt_double(*r.d2_normal) : "") << ','
           << (r.ks_normal ? detail::fmt_double(*r.ks_normal) : "") << ','
           << detail::join(r.warnings, ";");
        if (timing) os << ',' << detail::fmt_double(r.wall_ms);
        os << "\n";
    }
}

inline nlohmann::json report_to_json(const ExperimentReport& rep, bool timing = false) {
    nlohmann::json j;
    j["schema"] = "coxstat-report/1";
    j["name"] = rep.name;
    j["mode"] = rep.mode;
    j["seed"] = std::to_string(rep.seed);
    j["samples"] = rep.samples;
    j["cap"] = rep.cap;
    j["warnings"] = rep.warnings;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rep.rows) {
        nlohmann::json row;
        row["index"] = r.index;
        row["group"] = r.group;
        row["rank"] = r.rank;
        row["log10_order"] = r.log10_order;
        row["method"] = r.method;
        row["mean"] = r.mean;
        row["variance"] = r.variance;
        row["mean_exact"] = r.has_exact ? nlohmann::json(rational_str(r.mean_exact)) : nlohmann::json(nullptr);
        row["variance_exact"] =
            r.has_exact ? nlohmann::json(rational_str(r.variance_exact)) : nlohmann::json(nullptr);
        row["d2_normal"] = r.d2_normal ? nlohmann::json(*r.d2_normal) : nlohmann::json(nullptr);
        row["ks_normal"] = r.ks_normal ? nlohmann::json(*r.ks_normal) : nlohmann::json(nullptr);
        row["warnings"] = r.warnings;
        if (timing) row["wall_ms"] = r.wall_ms;
        j["rows"].push_back(std::move(row));
    }
    return j;
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
    try {
        if (j.at("schema").get<std::string>() != "coxstat-report/1")
            throw ParseError("unknown report schema");
        ExperimentReport rep;
        rep.name = j.at("name").get<std::string>();
        rep.mode = j.at("mode").get<std::string>();
        rep.seed = std::stoull(j.at("seed").get<std::string>());
        rep.samples = j.at("samples").get<std::uint64_t>();
        rep.cap = j.at("cap").get<std::uint64_t>();
        rep.warnings = j.at("warnings").get<std::vector<std::string>>();
        for (const auto& row : j.at("rows")) {
            ReportRow r;
            r.index = row.at("index").get<int>();
            r.group = row.at("group").get<std::string>();
            r.rank = row.at("rank").get<int>();
            r.log10_order = row.at("log10_order").get<double>();
            r.method = row.at("method").get<std::string>();
            r.mean = row.at("mean").get<double>();
            r.variance = row.at("variance").get<double>();
            if (!row.at("mean_exact").is_null()) {
                r.has_exact = true;
                r.mean_exact = parse_rational(row.at("mean_exact").get<std::string>());
                r.variance_exact = parse_rational(row.at("variance_exact").get<std::string>());
            }
            if (!row.at("d2_normal").is_null()) r.d2_normal = row.at("d2_normal").get<double>();
            if (!row.at("ks_normal").is_null()) r.ks_normal = row.at("ks_normal").get<double>();
            r.warnings = row.at("warnings").get<std::vector<std::string>>();
            if (row.contains("wall_ms")) r.wall_ms = row.at("wall_ms").get<double>();
            rep.rows.push_back(std::move(r));
        }
        return rep;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad report JSON: ") + e.what());
    }
}

/// Writes to a file (IoError on failure) or to the stream for path "-".
inline void write_report(const ExperimentReport& rep, const std::string& format,
                         const std::string& path, std::ostream& stdout_stream, bool timing = false) {
    std::ostringstream body;
    if (format == "csv") emit_report_csv(rep, body, timing);
    else if (format == "json") body << report_to_json(rep, timing).dump(2) << "\n";
    else throw ParseError("format must be csv or json (got '" + format + "')");
    if (path.empty() || path == "-") {
        stdout_stream << body.str();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << body.str();
    if (!f) throw IoError("write failed: " + path);
}

} // namespace coxstat

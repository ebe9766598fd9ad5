// Command line driver: run experiment specs, print exact t-laws, measure
// distances of serialized laws to the standard normal, and run the
// characteristic-function inequality audits.
//
// Exit codes: 0 success, 1 validation error (bad spec/arguments),
// 2 runtime error (I/O, infeasible computation, violations in audit mode).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "coxstat/coxstat.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw coxstat::IoError("cannot read: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string default_cache_dir() {
    const char* env = std::getenv("COXSTAT_TABLE_CACHE");
    return env ? env : "";
}

} // namespace

int main(int argc, char** argv) {
    using namespace coxstat;

    CLI::App app{"two-sided descent statistics on finite Coxeter groups"};
    app.require_subcommand(1);

    // ---- run ----
    auto* run = app.add_subcommand("run", "run an experiment spec and emit a report");
    std::string spec_path, format = "csv", out_path, cache_dir = default_cache_dir();
    std::uint64_t seed = 0, samples = 0, cap = 0;
    std::string mode;
    int threads = 1;
    bool timing = false;
    run->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
    run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--out", out_path, "output path; stdout when omitted");
    run->add_option("--seed", seed, "override the spec seed");
    run->add_option("--samples", samples, "override the Monte Carlo sample count");
    run->add_option("--cap", cap, "override the enumeration cap");
    run->add_option("--mode", mode, "override the mode: exact, montecarlo or auto")
        ->check(CLI::IsMember({"exact", "montecarlo", "auto"}));
    run->add_option("--threads", threads, "worker threads for Monte Carlo sampling");
    run->add_option("--table-cache", cache_dir,
                    "directory for exceptional table caches (default: $COXSTAT_TABLE_CACHE)");
    run->add_flag("--timing", timing, "include wall-clock columns (breaks byte stability)");

    // ---- dist ----
    auto* dist = app.add_subcommand("dist", "print the exact t-law of one group");
    std::string dist_group;
    std::uint64_t dist_cap = 10000000;
    bool dist_std = false;
    dist->add_option("group", dist_group, "group spec, e.g. A4xI2(5)")->required();
    dist->add_option("--cap", dist_cap, "enumeration cap");
    dist->add_flag("--standardize", dist_std, "attach the standardizing affine view");

    // ---- d2 ----
    auto* d2cmd = app.add_subcommand("d2", "Wasserstein-2 distance of a serialized law to normal");
    std::string d2_in;
    bool d2_std = false;
    d2cmd->add_option("--in", d2_in, "distribution JSON file")->required();
    d2cmd->add_flag("--standardize", d2_std, "standardize before measuring");

    // ---- audit ----
    auto* audit = app.add_subcommand("audit", "run the inequality audit suites");
    std::uint64_t audit_order = 10000;
    audit->add_option("--max-order", audit_order, "factor order bound for the law pool");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            SequenceSpec spec = parse_spec(read_file(spec_path));
            if (run->count("--seed")) spec.seed = seed;
            if (run->count("--samples")) spec.samples = samples;
            if (run->count("--cap")) spec.cap = cap;
            if (run->count("--mode")) spec.mode = parse_run_mode(mode);
            const ExperimentReport rep = run_experiment(spec, threads, cache_dir);
            write_report(rep, format, out_path, std::cout, timing);
            return 0;
        }
        if (*dist) {
            const CoxeterGroup g = parse_group(dist_group);
            DiscreteDistribution law = product_t_distribution(g, dist_cap);
            if (dist_std) law = standardize(law);
            std::cout << distribution_to_json(law).dump(2) << "\n";
            return 0;
        }
        if (*d2cmd) {
            const auto law = distribution_from_json(nlohmann::json::parse(read_file(d2_in)));
            const double v = d2_to_normal(d2_std ? standardize(law) : law);
            std::printf("%.12g\n", v);
            return 0;
        }
        if (*audit) {
            const auto results = run_all_audits(audit_order);
            std::uint64_t total_violations = 0;
            for (const auto& r : results) {
                std::printf("[%s] %-26s checked=%-7llu violations=%llu worst_margin=%.3e\n",
                            r.violations == 0 ? "PASS" : "FAIL", r.name.c_str(),
                            static_cast<unsigned long long>(r.checked),
                            static_cast<unsigned long long>(r.violations), r.worst_margin);
                total_violations += r.violations;
            }
            return total_violations == 0 ? 0 : 2;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParameterOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <map>
#include <set>

#include "oracle_support.hpp"

using namespace coxstat;

namespace {

// upper 0.001 quantiles of chi-square, df = index+1
constexpr double chi2_crit_999[12] = {10.828, 13.816, 16.266, 18.467, 20.515, 22.458,
                                      24.322, 26.125, 27.877, 29.588, 31.264, 32.909};

double chi_square_statistic(const std::map<int, std::uint64_t>& obs, std::uint64_t n,
                            const DiscreteDistribution& law) {
    double stat = 0.0;
    std::uint64_t seen = 0;
    for (std::size_t i = 0; i < law.size(); ++i) {
        const int x = static_cast<int>(to_double(law.support_at(i)));
        const double expect = to_double(law.prob_at(i)) * static_cast<double>(n);
        const auto it = obs.find(x);
        const double got = it == obs.end() ? 0.0 : static_cast<double>(it->second);
        seen += it == obs.end() ? 0 : it->second;
        stat += (got - expect) * (got - expect) / expect;
    }
    REQUIRE(seen == n); // no sample outside the exact support
    return stat;
}

} // namespace

TEST_CASE("enumeration counts match orders") {
    CHECK(enumerate(parse_group("A3"), 100).size == 24);
    CHECK(enumerate(parse_group("I2(9)"), 100).size == 18);
    CHECK(enumerate(parse_group("H3"), 1000).size == 120);
    CHECK(enumerate(parse_group("A2xB2"), 1000).size == 48);
    CHECK(enumerate(parse_group("A1xI2(5)xA2"), 1000).size == 120);
    CHECK(enumerate(parse_group(""), 10).size == 1);
    for (const char* spec : {"A5", "B4", "D5", "A3xB3xI2(12)"}) {
        const CoxeterGroup g = parse_group(spec);
        CHECK(BigInt(enumerate(g, 1000000).size) == g.order());
    }
    CHECK_THROWS_AS(enumerate(parse_group("A3"), 10), OrderExceedsCap);
    CHECK_THROWS_AS(enumerate(parse_group("E8"), 10000000), OrderExceedsCap);
}

TEST_CASE("index_of inverts at and never collides") {
    for (const char* spec : {"A4", "B3", "D4", "I2(11)", "H3", "A2xI2(4)xB2"}) {
        const CoxeterGroup g = parse_group(spec);
        const auto tab = enumerate(g, 100000);
        for (std::uint64_t i = 0; i < tab.size; ++i) {
            INFO(spec << " index " << i);
            REQUIRE(tab.index_of(tab.at(i)) == i);
        }
    }
}

TEST_CASE("length histograms are palindromic") {
    for (const char* spec : {"A4", "B3", "D4", "I2(8)", "H3", "F4"}) {
        const CoxeterGroup g = parse_group(spec);
        const auto tbl = build_factor_table(g.factors[0], 10000);
        const auto h = tbl->length_histogram();
        INFO(spec);
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            CHECK(h[i] == h[h.size() - 1 - i]);
            total += h[i];
        }
        CHECK(total == tbl->order);
        CHECK(h[0] == 1);
        CHECK(h[1] == static_cast<std::uint64_t>(g.rank()));
    }
}

TEST_CASE("exceptional tables: lengths, inverses, t-values") {
    for (Family f : {Family::H3, Family::F4}) {
        const auto tbl = build_exceptional_table(f);
        for (std::uint64_t i = 0; i < tbl->order; ++i) {
            REQUIRE(tbl->lengths[i] == refl_length(tbl->elems[i])); // BFS depth == root count
            const auto& inv = tbl->elems[tbl->inverses[i]];
            REQUIRE(refl_is_identity(refl_mul(tbl->elems[i], inv)));
            REQUIRE(tbl->tvalues[i] ==
                    tbl->descents[i] + refl_descent_count(refl_inverse(tbl->elems[i])));
        }
    }
}

TEST_CASE("table cache round trip") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "coxstat_cache_test";
    fs::create_directories(dir);
    const auto built = build_exceptional_table(Family::H3);
    const std::string path = (dir / "H3.table").string();
    save_factor_table(*built, path);
    const auto loaded = load_factor_table(path);
    REQUIRE(loaded != nullptr);
    CHECK(loaded->order == built->order);
    CHECK(loaded->lengths == built->lengths);
    CHECK(loaded->inverses == built->inverses);
    CHECK(loaded->tvalues == built->tvalues);
    for (std::uint64_t i = 0; i < built->order; ++i) CHECK(loaded->elems[i] == built->elems[i]);

    ExceptionalTables reg;
    const auto via_cache = reg.ensure(Family::H3, 1000, dir.string());
    CHECK(via_cache->order == 120);
    CHECK(load_factor_table((dir / "garbage.table").string()) == nullptr);
    fs::remove_all(dir);
}

TEST_CASE("missing tables and caps") {
    ExceptionalTables reg;
    CHECK_THROWS_AS(reg.require(Family::H4), TableMissing);
    CHECK_THROWS_AS(reg.ensure(Family::E6, 1000), TableMissing);
    const CoxeterGroup g = parse_group("H3");
    SeededRng rng(1, 0);
    CHECK_THROWS_AS(sample_uniform(g, rng, ExceptionalTables{}), TableMissing);
}

TEST_CASE("sampling the trivial group and A_1") {
    const CoxeterGroup trivial = parse_group("");
    SeededRng rng(41, 0);
    CHECK(sample_uniform(trivial, rng) == identity(trivial));
    CHECK(sample_t(trivial, rng) == 0);

    const CoxeterGroup a1 = parse_group("A1");
    std::uint64_t ones = 0;
    const std::uint64_t n = 100000;
    for (std::uint64_t i = 0; i < n; ++i)
        if (sample_t(a1, rng) == 2) ++ones;
    // frequency of the nonidentity element within 3 sigma of 1/2
    const double sigma = std::sqrt(0.25 / static_cast<double>(n));
    CHECK(std::fabs(static_cast<double>(ones) / n - 0.5) <= 3.0 * sigma);
}

TEST_CASE("sampled t frequencies pass chi-square against exact laws") {
    ExceptionalTables tables;
    tables.ensure(Family::H3, 1000);
    const std::uint64_t n = 200000;
    for (const char* spec : {"A4", "B3", "D4", "I2(6)", "H3"}) {
        const CoxeterGroup g = parse_group(spec);
        const auto law = product_t_distribution(g, 100000, &tables);
        const auto ts = sample_batch(g, n, SeededRng(987654321, 11), tables, 2);
        std::map<int, std::uint64_t> obs;
        for (auto v : ts) ++obs[v];
        const double stat = chi_square_statistic(obs, n, law);
        const std::size_t df = law.size() - 1;
        INFO(spec << " chi2=" << stat << " df=" << df);
        REQUIRE(df >= 1);
        REQUIRE(df <= 12);
        CHECK(stat < chi2_crit_999[df - 1]);
    }
}

TEST_CASE("I2(4) sampled histogram matches the exact law") {
    const CoxeterGroup g = parse_group("I2(4)");
    SeededRng rng(5150, 0);
    const std::uint64_t n = 1000000;
    std::map<int, std::uint64_t> obs;
    for (std::uint64_t i = 0; i < n; ++i) ++obs[sample_t(g, rng)];
    const auto law = exact_t_distribution(make_irreducible(Family::I2, 4), 100);
    CHECK(to_double(law.prob_at(0)) == 0.125);
    CHECK(to_double(law.prob_at(1)) == 0.75);
    const double stat = chi_square_statistic(obs, n, law);
    CHECK(stat < chi2_crit_999[1]); // df = 2
}

TEST_CASE("D sampling keeps the sign parity even and uniform") {
    const CoxeterGroup g = parse_group("D4");
    SeededRng rng(99, 3);
    const auto tab = enumerate(g, 1000);
    std::vector<std::uint64_t> counts(tab.size, 0);
    const std::uint64_t n = 192000;
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto w = sample_uniform(g, rng);
        const auto& v = std::get<DPerm>(w.parts[0]).img;
        int neg = 0;
        for (auto x : v)
            if (x < 0) ++neg;
        REQUIRE(neg % 2 == 0);
        ++counts[tab.index_of(w)];
    }
    // uniformity across all 192 elements: chi-square with mean count 1000
    double stat = 0.0;
    const double expect = static_cast<double>(n) / static_cast<double>(tab.size);
    for (auto c : counts) stat += (static_cast<double>(c) - expect) * (static_cast<double>(c) - expect) / expect;
    // df = 191; 0.999 quantile is ~259.2
    CHECK(stat < 259.2);
}

TEST_CASE("sample_batch determinism and thread independence") {
    const CoxeterGroup g = parse_group("A5xI2(4)xB3");
    CHECK(sample_batch(g, 0, SeededRng(1, 0)).empty());
    const auto a = sample_batch(g, 20000, SeededRng(123, 5), {}, 1);
    const auto b = sample_batch(g, 20000, SeededRng(123, 5), {}, 1);
    const auto c = sample_batch(g, 20000, SeededRng(123, 5), {}, 4);
    const auto d = sample_batch(g, 20000, SeededRng(123, 5), {}, 8);
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a == d);
    const auto e = sample_batch(g, 20000, SeededRng(124, 5), {}, 1);
    CHECK(a != e);
}

TEST_CASE("sample_uniform and sample_t consume identical draws") {
    const CoxeterGroup g = parse_group("A4xB3xD4xI2(9)");
    SeededRng r1(77, 1), r2(77, 1);
    for (int i = 0; i < 500; ++i) {
        const auto w = sample_uniform(g, r1);
        CHECK(two_sided_descent(w) == sample_t(g, r2));
    }
}

TEST_CASE("mean of t on A_p: exact p for small p, sampled for A_30") {
    for (int p = 1; p <= 5; ++p) {
        const auto law = exact_t_distribution(make_irreducible(Family::A, p), 1000000);
        CHECK(moments(law).mean == p);
    }
    const CoxeterGroup g = parse_group("A30");
    const auto ts = sample_batch(g, 1000000, SeededRng(2024, 0), {}, 2);
    double sum = 0.0, sumsq = 0.0;
    for (auto v : ts) {
        sum += v;
        sumsq += static_cast<double>(v) * v;
    }
    const double n = static_cast<double>(ts.size());
    const double mean = sum / n;
    const double sd = std::sqrt(sumsq / n - mean * mean);
    CHECK(std::fabs(mean - 30.0) <= 3.0 * sd / std::sqrt(n));
}

TEST_CASE("rng streams are independent and reproducible") {
    SeededRng a(42, 0), b(42, 0), c(42, 1);
    std::vector<std::uint64_t> va, vb, vc;
    for (int i = 0; i < 100; ++i) {
        va.push_back(a.next_u64());
        vb.push_back(b.next_u64());
        vc.push_back(c.next_u64());
    }
    CHECK(va == vb);
    CHECK(va != vc);

    // unbiased bounded draws cover the whole range
    SeededRng r(7, 7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 5000; ++i) seen.insert(r.next_below(7));
    CHECK(seen.size() == 7);
    CHECK(*seen.rbegin() == 6);
}

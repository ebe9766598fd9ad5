#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include "oracle_support.hpp"

using namespace coxstat;

TEST_CASE("irreducible type validation and ranks") {
    CHECK(make_irreducible(Family::A, 1).rank() == 1);
    CHECK(make_irreducible(Family::A, 7).rank() == 7);
    CHECK(make_irreducible(Family::B, 2).rank() == 2);
    CHECK(make_irreducible(Family::D, 4).rank() == 4);
    CHECK(make_irreducible(Family::I2, 3).rank() == 2);
    CHECK(make_irreducible(Family::E8).rank() == 8);
    CHECK(make_irreducible(Family::H3).rank() == 3);
    CHECK(make_irreducible(Family::F4).rank() == 4);

    CHECK_THROWS_AS(make_irreducible(Family::A, 0), ParameterOutOfRange);
    CHECK_THROWS_AS(make_irreducible(Family::B, 1), ParameterOutOfRange);
    CHECK_THROWS_AS(make_irreducible(Family::D, 3), ParameterOutOfRange);
    CHECK_THROWS_AS(make_irreducible(Family::I2, 2), ParameterOutOfRange);
}

TEST_CASE("orders of irreducible factors and products") {
    CHECK(make_irreducible(Family::A, 3).order() == 24);
    CHECK(make_irreducible(Family::B, 3).order() == 48);
    CHECK(make_irreducible(Family::D, 4).order() == 192);
    CHECK(make_irreducible(Family::I2, 9).order() == 18);
    CHECK(make_irreducible(Family::H3).order() == 120);
    CHECK(make_irreducible(Family::H4).order() == 14400);
    CHECK(make_irreducible(Family::F4).order() == 1152);
    CHECK(make_irreducible(Family::E6).order() == 51840);
    CHECK(make_irreducible(Family::E7).order() == 2903040);
    CHECK(make_irreducible(Family::E8).order() == BigInt(696729600));

    const CoxeterGroup g = parse_group("A4xI2(5)xB3");
    CHECK(g.rank() == 4 + 2 + 3);
    CHECK(g.order() == BigInt(120) * 10 * 48);

    const CoxeterGroup trivial = parse_group("");
    CHECK(trivial.rank() == 0);
    CHECK(trivial.order() == 1);
    CHECK(parse_group("1").factors.empty());
}

TEST_CASE("group spec string grammar") {
    CHECK(parse_group("a4 X i2(5)").rank() == 6);
    CHECK(parse_group("E8").factors.front().family == Family::E8);
    CHECK(parse_group(" h3 x f4 ").rank() == 7);
    CHECK_THROWS_AS(parse_group("D3"), ParameterOutOfRange);
    CHECK_THROWS_AS(parse_group("Q5"), ParseError);
    CHECK_THROWS_AS(parse_group("A4x"), ParseError);
    CHECK_THROWS_AS(parse_group("I2(5"), ParseError);
    CHECK_THROWS_AS(parse_group("H5"), ParseError);
    CHECK_THROWS_AS(parse_group("A"), ParseError);
    try {
        parse_group("A2xD3");
    } catch (const ParameterOutOfRange& e) {
        CHECK(std::string(e.what()).find("position 3") != std::string::npos);
    }
}

TEST_CASE("coxeter matrices") {
    const auto i25 = coxeter_matrix(make_irreducible(Family::I2, 5));
    CHECK(i25.rank == 2);
    CHECK(i25.at(0, 0) == 1);
    CHECK(i25.at(0, 1) == 5);
    CHECK(i25.at(1, 0) == 5);

    const auto a2 = coxeter_matrix(make_irreducible(Family::A, 2));
    CHECK(a2.at(0, 1) == 3);

    // B_2 and I2(4) present identically
    const auto b2 = coxeter_matrix(make_irreducible(Family::B, 2));
    const auto i24 = coxeter_matrix(make_irreducible(Family::I2, 4));
    CHECK(b2.m == i24.m);

    const auto f4 = coxeter_matrix(make_irreducible(Family::F4));
    CHECK(f4.at(0, 1) == 3);
    CHECK(f4.at(1, 2) == 4);
    CHECK(f4.at(2, 3) == 3);
    CHECK(f4.at(0, 2) == 2);

    const auto d5 = coxeter_matrix(make_irreducible(Family::D, 5));
    CHECK(d5.at(0, 1) == 2); // fork: the two end nodes commute
    CHECK(d5.at(0, 2) == 3);
    CHECK(d5.at(1, 2) == 3);

    const auto e6 = coxeter_matrix(make_irreducible(Family::E6));
    CHECK(e6.at(0, 2) == 3);
    CHECK(e6.at(1, 3) == 3);
    CHECK(e6.at(0, 1) == 2);

    for (const auto& t : {make_irreducible(Family::H4), make_irreducible(Family::E7)}) {
        const auto cm = coxeter_matrix(t);
        for (int i = 0; i < cm.rank; ++i)
            for (int j = 0; j < cm.rank; ++j) {
                CHECK(cm.at(i, j) == cm.at(j, i));
                CHECK((cm.at(i, j) == 1) == (i == j));
                CHECK(cm.at(i, j) != coxeter_infinity);
            }
    }
}

TEST_CASE("B_2 is isomorphic to I2(4) as descent data") {
    // multisets of (length, t) pairs over the 8 elements agree
    auto stats = [](const CoxeterGroup& g) {
        std::multiset<std::pair<int, int>> s;
        const auto tab = enumerate(g, 100);
        for (std::uint64_t i = 0; i < tab.size; ++i) {
            const auto w = tab.at(i);
            s.emplace(length(w), two_sided_descent(w));
        }
        return s;
    };
    CHECK(stats(parse_group("B2")) == stats(parse_group("I2(4)")));
}

TEST_CASE("multiply, inverse, identity") {
    const CoxeterGroup a2 = parse_group("A2");
    CHECK(inverse(identity(a2)) == identity(a2));

    GroupElement w;
    w.parts.push_back(APerm{{2, 3, 1}});
    const GroupElement wi = inverse(w);
    CHECK(std::get<APerm>(wi.parts[0]).img == std::vector<std::int32_t>{3, 1, 2});
    CHECK(multiply(w, wi) == identity(a2));

    // longest element of I2(5) is an involution
    const CoxeterGroup i25 = parse_group("I2(5)");
    const auto tab = enumerate(i25, 100);
    int found = 0;
    for (std::uint64_t i = 0; i < tab.size; ++i) {
        const auto v = tab.at(i);
        if (length(v) == 5) {
            ++found;
            CHECK(inverse(v) == v);
        }
    }
    CHECK(found == 1);

    const CoxeterGroup a3 = parse_group("A3");
    GroupElement x = identity(a3);
    CHECK_THROWS_AS(multiply(identity(a2), x), GroupMismatch);
}

TEST_CASE("group laws on random triples of a mixed product") {
    const CoxeterGroup g = parse_group("A3xB2xI2(7)xH3");
    ExceptionalTables tables;
    tables.ensure(Family::H3, 1000);
    SeededRng rng(7, 0);
    const GroupElement e = identity(g);
    for (int it = 0; it < 200; ++it) {
        const auto a = sample_uniform(g, rng, tables);
        const auto b = sample_uniform(g, rng, tables);
        const auto c = sample_uniform(g, rng, tables);
        CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
        CHECK(multiply(a, inverse(a)) == e);
        CHECK(multiply(inverse(a), a) == e);
        CHECK(multiply(a, e) == a);
        CHECK(length(inverse(a)) == length(a));
        CHECK(two_sided_descent(a) == two_sided_descent(inverse(a)));
    }
}

TEST_CASE("length equals Cayley BFS depth on small groups") {
    for (const char* spec : {"A3", "B3", "D4", "I2(7)", "H3", "A1xI2(3)xA2"}) {
        const CoxeterGroup g = parse_group(spec);
        const auto tab = enumerate(g, 100000);
        const auto depth = oracle::cayley_bfs_lengths(g, tab);
        for (std::uint64_t i = 0; i < tab.size; ++i) {
            INFO(spec << " element " << i);
            REQUIRE(length(tab.at(i)) == depth[i]);
        }
    }
}

TEST_CASE("family descent rules match the length definition") {
    for (const char* spec : {"A3", "B3", "D4", "I2(6)", "I2(9)", "H3", "A2xB2"}) {
        const CoxeterGroup g = parse_group(spec);
        const auto tab = enumerate(g, 100000);
        for (std::uint64_t i = 0; i < tab.size; ++i) {
            const auto w = tab.at(i);
            INFO(spec << " element " << i);
            REQUIRE(descent_set(w) == descent_set_definitional(w, g));
        }
    }
}

TEST_CASE("descent examples") {
    const CoxeterGroup a3 = parse_group("A3");
    CHECK(des(identity(a3)) == 0);
    GroupElement w0;
    w0.parts.push_back(APerm{{4, 3, 2, 1}});
    CHECK(des(w0) == 3);
    CHECK(length(w0) == 6);
    CHECK(two_sided_descent(w0) == 6);

    GroupElement w0a2;
    w0a2.parts.push_back(APerm{{3, 2, 1}});
    CHECK(length(w0a2) == 3);
    CHECK(two_sided_descent(w0a2) == 4);

    // dihedral: every element strictly between identity and longest has
    // exactly one descent, so t = 2
    for (int m = 3; m <= 12; ++m) {
        const auto tab = enumerate(parse_group("I2(" + std::to_string(m) + ")"), 100);
        for (std::uint64_t i = 0; i < tab.size; ++i) {
            const auto w = tab.at(i);
            const int l = length(w);
            if (l > 0 && l < m) {
                CHECK(des(w) == 1);
                CHECK(two_sided_descent(w) == 2);
            }
        }
    }

    // I2(7), any element of length 3 has t = 2
    const auto t7 = enumerate(parse_group("I2(7)"), 100);
    for (std::uint64_t i = 0; i < t7.size; ++i)
        if (length(t7.at(i)) == 3) CHECK(two_sided_descent(t7.at(i)) == 2);
}

TEST_CASE("t bounds with equality only at identity and longest element") {
    for (const char* spec : {"A3", "B3", "I2(10)", "H3"}) {
        const CoxeterGroup g = parse_group(spec);
        const auto tab = enumerate(g, 100000);
        const int two_rank = 2 * g.rank();
        int max_len = 0;
        for (std::uint64_t i = 0; i < tab.size; ++i) max_len = std::max(max_len, length(tab.at(i)));
        for (std::uint64_t i = 0; i < tab.size; ++i) {
            const auto w = tab.at(i);
            const int t = two_sided_descent(w);
            REQUIRE(t >= 0);
            REQUIRE(t <= two_rank);
            if (t == 0) REQUIRE(w == identity(g));
            if (t == two_rank) REQUIRE(length(w) == max_len);
        }
    }
}

TEST_CASE("trivial group behaves everywhere") {
    const CoxeterGroup g = parse_group("");
    const GroupElement e = identity(g);
    CHECK(length(e) == 0);
    CHECK(des(e) == 0);
    CHECK(two_sided_descent(e) == 0);
    CHECK(multiply(e, e) == e);
    CHECK(inverse(e) == e);
    CHECK(descent_set(e).empty());
}

TEST_CASE("reflection data sanity") {
    CHECK(reflection_data(Family::H3).posroots.size() == 15);
    CHECK(reflection_data(Family::F4).posroots.size() == 24);
    CHECK(reflection_data(Family::H4).posroots.size() == 60);
    CHECK(reflection_data(Family::E6).posroots.size() == 36);
    CHECK(reflection_data(Family::E7).posroots.size() == 63);
    CHECK(reflection_data(Family::E8).posroots.size() == 120);
    CHECK_THROWS_AS(reflection_data(Family::A), Error);
}

TEST_CASE("golden ring arithmetic") {
    const GoldenInt phi = golden_phi();
    CHECK(phi * phi == phi + golden_one()); // phi^2 = phi + 1
    CHECK((GoldenInt{-1, 1}).sign() == 1);  // phi - 1 > 0
    CHECK((GoldenInt{2, -1}).sign() == 1);  // 2 - phi > 0
    CHECK((GoldenInt{1, -1}).sign() == -1); // 1 - phi < 0
    CHECK((GoldenInt{-5, 3}).sign() == -1); // 3 phi - 5 < 0
    CHECK((GoldenInt{-4, 3}).sign() == 1);  // 3 phi - 4 > 0
    CHECK(golden_zero().sign() == 0);
}

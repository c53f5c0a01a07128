#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finrel/corpus.hpp"

using namespace finrel;

TEST_CASE("family cardinalities match their definitions") {
    // checked against independent counts: classes of size m contribute m^2
    // E-tuples, so |E| = s + 4d for EQ2 and a + 4b + 9c for M0T
    for (int s = 0; s <= 6; ++s)
        for (int d = 0; d <= 6; ++d) {
            if (s + 2 * d < 1) continue;
            Structure e = build_corpus("EQ2", {s, d});
            CHECK(e.size() == static_cast<Elem>(s + 2 * d));
            CHECK(e.table("E")->size() == static_cast<size_t>(s + 4 * d));
        }
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            for (int c = 0; c <= 4; ++c) {
                if (a + 2 * b + 3 * c < 1) continue;
                Structure m = build_corpus("M0T", {a, b, c});
                CHECK(m.size() == static_cast<Elem>(a + 2 * b + 3 * c));
                CHECK(m.table("E")->size() == static_cast<size_t>(a + 4 * b + 9 * c));
            }
}

TEST_CASE("EQ2(1,1)") {
    Structure e = build_corpus("EQ2", {1, 1});
    CHECK(e.size() == 3);
    CHECK(e.table("E")->size() == 5);
}

TEST_CASE("M1P(2,1) per its definition") {
    Structure m = build_corpus("M1P", {2, 1});
    CHECK(m.size() == 4);
    CHECK(m.table("Q")->tuples() == std::vector<std::vector<Elem>>{{2}});
    CHECK(m.constant_value(0) == 0);
    CHECK(m.constant_value(1) == 1);
    CHECK_THROWS_AS(build_corpus("M1P", {1, 1}), ValidationError);
}

TEST_CASE("M1PP has Q and complement R, no constants") {
    Structure m = build_corpus("M1PP", {4, 3});
    CHECK(m.size() == 10);
    CHECK(m.sig().constants().empty());
    CHECK(m.table("Q")->size() == 3);
    CHECK(m.table("R")->size() == 7);
    for (Elem x = 0; x < m.size(); ++x) {
        bool q = m.table("Q")->contains(std::vector<Elem>{x});
        bool r = m.table("R")->contains(std::vector<Elem>{x});
        CHECK(q != r);
    }
}

TEST_CASE("M2TC(1,0) matches the two-constant layout") {
    Structure m = build_corpus("M2TC", {1, 0});
    CHECK(m.size() == 3);
    CHECK(m.table("P")->tuples() == std::vector<std::vector<Elem>>{{2}});
    CHECK(m.constant_value(0) == 0);
    CHECK(m.constant_value(1) == 1);
}

TEST_CASE("M2T sizes") {
    for (int p = 0; p <= 6; ++p)
        for (int q = 0; q <= 6; ++q) {
            if (p + q < 1) continue;
            Structure m = build_corpus("M2T", {p, q});
            CHECK(m.size() == static_cast<Elem>(p + q));
            CHECK(m.table("P")->size() == static_cast<size_t>(p));
            Structure mc = build_corpus("M2TC", {p, q});
            CHECK(mc.size() == static_cast<Elem>(p + q + 2));
            CHECK(mc.table("P")->size() == static_cast<size_t>(p));
            CHECK(!mc.table("P")->contains(std::vector<Elem>{0}));
            CHECK(!mc.table("P")->contains(std::vector<Elem>{1}));
        }
}

TEST_CASE("PURESET and ARROW") {
    CHECK(build_corpus("PURESET", {5}).size() == 5);
    CHECK(build_corpus("PURESET", {5}).sig().relations().empty());
    CHECK_THROWS_AS(build_corpus("PURESET", {0}), ValidationError);
    Structure a = build_corpus("ARROW", {});
    CHECK(a.size() == 2);
    CHECK(a.table("R")->size() == 1);
    CHECK_THROWS_AS(build_corpus("NOSUCH", {}), ValidationError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finrel/corpus.hpp"
#include "finrel/structure.hpp"

using namespace finrel;

namespace {
StructurePtr ptr(Structure s) { return std::make_shared<const Structure>(std::move(s)); }
}  // namespace

TEST_CASE("arrow structure round-trips through text") {
    std::string text =
        "structure ARROW\n"
        "domain 2\n"
        "relation R/2\n"
        "(0 1)\n";
    Structure s = load_structure(text);
    CHECK(s.size() == 2);
    CHECK(s.table("R")->size() == 1);
    CHECK(s.table("R")->contains(std::vector<Elem>{0, 1}));
    CHECK(serialize(s) == text);
    CHECK(load_structure(serialize(s)) == s);
}

TEST_CASE("json round-trip") {
    Structure s = build_corpus("M1P", {2, 1});
    std::string j = serialize_json(s);
    Structure back = load_structure_json(j);
    CHECK(back == s);
    CHECK(serialize_json(back) == j);
}

TEST_CASE("validation rejects out-of-range entries") {
    std::string text =
        "structure BAD\n"
        "domain 2\n"
        "relation R/2\n"
        "(0 5)\n";
    CHECK_THROWS_AS(load_structure(text), ValidationError);
    CHECK_THROWS_AS(load_structure("structure X\ndomain 0\n"), ValidationError);
    CHECK_THROWS_AS(load_structure("structure X\ndomain 2\nconstant c = 7\n"), ValidationError);
    CHECK_THROWS_WITH_AS(load_structure("nonsense"), doctest::Contains("parse error"), ParseError);
}

TEST_CASE("EQ2(1,1) has five E-tuples") {
    Structure s = build_corpus("EQ2", {1, 1});
    CHECK(s.size() == 3);
    CHECK(s.table("E")->size() == 5);  // 3 loops + 1 symmetric pair
    Structure again = load_structure(serialize(s));
    CHECK(again == s);
}

TEST_CASE("power encoding is little-endian lexicographic") {
    CHECK(power_encode({1, 0}, 2) == 1);
    CHECK(power_encode({0, 1}, 2) == 2);
    CHECK(power_decode(6, 2, 3) == std::vector<Elem>{0, 1, 1});
}

TEST_CASE("power of ARROW") {
    Structure a = build_corpus("ARROW", {});
    Structure p1 = power(a, 1);
    CHECK(p1.size() == 2);
    CHECK(p1.table("R")->size() == 1);
    CHECK(p1.table("R")->contains(std::vector<Elem>{0, 1}));

    Structure p2 = power(a, 2);
    CHECK(p2.size() == 4);
    CHECK(p2.table("R")->size() == 1);
    // ((0,0),(1,1)) encoded: 0 -> 3
    CHECK(p2.table("R")->contains(std::vector<Elem>{0, 3}));
}

TEST_CASE("power relation table sizes multiply") {
    Structure e = build_corpus("EQ2", {1, 1});
    Structure p = power(e, 2);
    CHECK(p.size() == 9);
    CHECK(p.table("E")->size() == 25);
    CHECK_THROWS_AS(power(e, 20), GuardError);
}

TEST_CASE("power lifts constants diagonally") {
    Structure m = build_corpus("M1P", {2, 1});
    Structure p = power(m, 2);
    CHECK(p.constant_value(0) == 0);
    CHECK(p.constant_value(1) == 1 + 4);  // (1,1) with base 4
}

TEST_CASE("induced substructure") {
    Structure e = build_corpus("EQ2", {1, 1});
    SUBCASE("full domain is identity") {
        auto r = induced_substructure(e, {0, 1, 2});
        CHECK(r.structure.size() == 3);
        CHECK(r.structure.table("E")->size() == 5);
    }
    SUBCASE("one doubleton survives") {
        auto r = induced_substructure(e, {1, 2});
        CHECK(r.structure.size() == 2);
        CHECK(r.structure.table("E")->size() == 4);
        CHECK(r.renaming[1] == 0);
        CHECK(r.renaming[2] == 1);
    }
    SUBCASE("constants must stay inside") {
        Structure m = build_corpus("M1P", {2, 1});
        auto r = induced_substructure(m, {0, 1});
        CHECK(r.structure.size() == 2);
        CHECK(r.structure.table("Q")->size() == 0);
        CHECK_THROWS_AS(induced_substructure(m, {1, 2}), ValidationError);
    }
}

TEST_CASE("tuple sets validate and dedupe") {
    auto e = ptr(build_corpus("EQ2", {1, 1}));
    TupleSet x(e, 1, {{1}, {2}, {1}});
    CHECK(x.size() == 2);
    CHECK(x.contains(std::vector<Elem>{1}));
    CHECK(!x.contains(std::vector<Elem>{0}));
    CHECK(!x.is_full());
    CHECK(TupleSet::full(e, 2).size() == 9);
    CHECK_THROWS_AS(TupleSet(e, 1, {{7}}), ValidationError);
}

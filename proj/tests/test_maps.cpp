#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finrel/corpus.hpp"
#include "finrel/eval.hpp"
#include "finrel/finmap.hpp"

#include <algorithm>

using namespace finrel;

namespace {

StructurePtr ptr(Structure s) { return std::make_shared<const Structure>(std::move(s)); }

// oracle: filter an exhaustive enumeration of all |B|^|A| maps
std::vector<FinMap> brute_maps(const StructurePtr& a, const StructurePtr& b, const MapFilter& f) {
    std::vector<FinMap> out;
    std::vector<uint16_t> img(a->size(), 0);
    while (true) {
        FinMap m(a, b, img);
        MapKind k = classify_map(m);
        bool ok = (!f.homomorphism || k.homomorphism) && (!f.strong || k.strong) &&
                  (!f.injective || k.injective) && (!f.surjective || k.surjective);
        if (ok) out.push_back(m);
        size_t i = 0;
        for (; i < img.size(); ++i) {
            if (static_cast<Elem>(++img[i]) < b->size()) break;
            img[i] = 0;
        }
        if (i == img.size()) break;
    }
    return out;
}

}  // namespace

TEST_CASE("classify_map basics") {
    auto e = ptr(build_corpus("EQ2", {1, 1}));
    SUBCASE("identity") {
        MapKind k = classify_map(FinMap::identity(e));
        CHECK(k.homomorphism);
        CHECK(k.strong);
        CHECK(k.injective);
        CHECK(k.surjective);
        CHECK(k.automorphism());
    }
    SUBCASE("constant zero on EQ2(1,1)") {
        MapKind k = classify_map(FinMap::constant(e, 0));
        CHECK(k.homomorphism);  // E is reflexive
        CHECK(!k.injective);
        CHECK(!k.strong);  // (1,0) maps to the loop (0,0) but is not in E
        CHECK(!k.surjective);
    }
    SUBCASE("arrow swap is not a homomorphism") {
        auto a = ptr(build_corpus("ARROW", {}));
        FinMap swap(a, a, {1, 0});
        MapKind k = classify_map(swap);
        CHECK(!k.homomorphism);
        CHECK(k.injective);
    }
    SUBCASE("constants must be preserved") {
        auto m = ptr(build_corpus("M1P", {2, 1}));
        std::vector<uint16_t> img = {1, 0, 2, 3};  // swaps the two constants
        CHECK(!classify_map(FinMap(m, m, img)).homomorphism);
    }
}

TEST_CASE("composition acts from the right") {
    auto p = ptr(build_corpus("PURESET", {2}));
    FinMap c0 = FinMap::constant(p, 0);
    FinMap swap(p, p, {1, 0});
    // compose applies the first argument first
    CHECK(compose(c0, swap) == FinMap::constant(p, 1));
    CHECK(compose(swap, c0) == c0);
}

TEST_CASE("composition preserves map kinds") {
    auto e = ptr(build_corpus("EQ2", {2, 2}));
    auto homs = search_homs_all(e, e, MapFilter::endomorphism());
    auto embs = search_homs_all(e, e, MapFilter::embedding());
    for (size_t i = 0; i < std::min<size_t>(homs.size(), 40); ++i)
        for (size_t j = 0; j < std::min<size_t>(homs.size(), 40); ++j)
            CHECK(classify_map(compose(homs[i], homs[j])).homomorphism);
    for (const auto& f : embs)
        for (const auto& g : embs) CHECK(classify_map(compose(f, g)).embedding());
}

TEST_CASE("search counts on EQ2(1,1)") {
    auto e = ptr(build_corpus("EQ2", {1, 1}));
    CHECK(search_homs_all(e, e, MapFilter::endomorphism()).size() == 15);
    auto embs = search_homs_all(e, e, MapFilter::embedding());
    CHECK(embs.size() == 2);
    CHECK(embs[0].img == std::vector<uint16_t>{0, 1, 2});
    CHECK(embs[1].img == std::vector<uint16_t>{0, 2, 1});
    CHECK(search_homs_all(e, e, MapFilter::automorphism()).size() == 2);
}

TEST_CASE("arrow has only the identity endomorphism") {
    auto a = ptr(build_corpus("ARROW", {}));
    auto ends = search_homs_all(a, a, MapFilter::endomorphism());
    REQUIRE(ends.size() == 1);
    CHECK(ends[0] == FinMap::identity(a));
}

TEST_CASE("search agrees with exhaustive filtering") {
    std::vector<StructurePtr> worlds = {
        ptr(build_corpus("EQ2", {1, 1})), ptr(build_corpus("M2T", {1, 1})),
        ptr(build_corpus("ARROW", {})), ptr(build_corpus("M1P", {2, 1})),
        ptr(build_corpus("M0T", {1, 1, 0}))};
    std::vector<MapFilter> filters = {MapFilter::endomorphism(), MapFilter::embedding(),
                                      MapFilter::automorphism(),
                                      MapFilter{true, false, true, false},
                                      MapFilter{true, false, false, true}};
    for (const auto& a : worlds)
        for (const auto& b : worlds) {
            if (!(a->sig() == b->sig())) continue;
            for (const auto& f : filters) {
                auto fast = search_homs_all(a, b, f);
                auto slow = brute_maps(a, b, f);
                REQUIRE(fast.size() == slow.size());
                CHECK(std::equal(fast.begin(), fast.end(), slow.begin()));
                CHECK(std::is_sorted(fast.begin(), fast.end()));
            }
        }
}

TEST_CASE("partial assignments restrict the search") {
    auto e = ptr(build_corpus("EQ2", {1, 1}));
    std::vector<uint16_t> partial(3, UNSET_IMG);
    partial[1] = 0;
    auto maps = search_homs_all(e, e, MapFilter::endomorphism(), partial);
    CHECK(maps.size() == 3);  // sigma(1)=0 forces sigma(2)=0; sigma(0) free
    for (const auto& m : maps) CHECK(m(2) == 0);
}

TEST_CASE("polymorphisms of ARROW") {
    auto a = ptr(build_corpus("ARROW", {}));
    SUBCASE("binary") {
        auto pols = polymorphisms(a, 2);
        CHECK(pols.size() == 4);
        for (const auto& f : pols) {
            CHECK(f(0) == 0);
            CHECK(f(3) == 1);
        }
    }
    SUBCASE("unary equals endomorphisms") {
        auto pols = polymorphisms(a, 1);
        auto ends = search_homs_all(a, a, MapFilter::endomorphism());
        REQUIRE(pols.size() == ends.size());
        for (size_t i = 0; i < pols.size(); ++i) CHECK(pols[i].img == ends[i].img);
    }
    SUBCASE("projections always appear") {
        auto pols = polymorphisms(a, 2);
        std::vector<uint16_t> pi0(4), pi1(4);
        for (Elem v = 0; v < 4; ++v) {
            auto c = power_decode(v, 2, 2);
            pi0[v] = static_cast<uint16_t>(c[0]);
            pi1[v] = static_cast<uint16_t>(c[1]);
        }
        auto has = [&](const std::vector<uint16_t>& img) {
            return std::any_of(pols.begin(), pols.end(),
                               [&](const FinMap& f) { return f.img == img; });
        };
        CHECK(has(pi0));
        CHECK(has(pi1));
    }
}

TEST_CASE("preserves reports witnesses") {
    auto e = ptr(build_corpus("EQ2", {1, 1}));
    TupleSet x(e, 1, {{1}, {2}});
    SUBCASE("a collapsing endomorphism breaks X") {
        FinMap f(e, e, {0, 0, 0});
        auto r = preserves(f, 1, x);
        CHECK(!r.preserved);
        CHECK(r.witness_image == std::vector<Elem>{0});
    }
    SUBCASE("projections preserve everything") {
        auto pw = ptr(power(*e, 2));
        std::vector<uint16_t> pi0(9);
        for (Elem v = 0; v < 9; ++v) pi0[v] = static_cast<uint16_t>(power_decode(v, 3, 2)[0]);
        auto r = preserves(FinMap(pw, e, pi0), 2, x);
        CHECK(r.preserved);
    }
    SUBCASE("the full domain is preserved by everything") {
        TupleSet full = TupleSet::full(e, 1);
        FinMap f(e, e, {0, 0, 0});
        CHECK(preserves(f, 1, full).preserved);
    }
}

TEST_CASE("finite structures: injective endomorphisms are automorphisms") {
    // exhaustive over the corpus at small parameters
    std::vector<StructurePtr> worlds = {
        ptr(build_corpus("PURESET", {3})), ptr(build_corpus("EQ2", {1, 2})),
        ptr(build_corpus("M0T", {1, 1, 1})), ptr(build_corpus("M2T", {2, 2})),
        ptr(build_corpus("M1PP", {2, 1})), ptr(build_corpus("ARROW", {}))};
    for (const auto& w : worlds) {
        auto ends = search_homs_all(w, w, MapFilter::endomorphism());
        for (const auto& f : ends) {
            MapKind k = classify_map(f);
            CHECK(k.injective == k.surjective);
            if (k.injective) CHECK(k.automorphism());
        }
        auto embs = search_homs_all(w, w, MapFilter::embedding());
        auto auts = search_homs_all(w, w, MapFilter::automorphism());
        CHECK(embs.size() == auts.size());
    }
}

#pragma once

#include "finrel/structure.hpp"

#include <functional>

namespace finrel {

/// A total map between structure domains, stored as an image table.
/// Target domains are capped at 65535 elements.
struct FinMap {
    StructurePtr source;
    StructurePtr target;
    std::vector<uint16_t> img;

    FinMap() = default;
    FinMap(StructurePtr src, StructurePtr tgt, std::vector<uint16_t> image);

    Elem operator()(Elem x) const { return img[x]; }
    size_t size() const { return img.size(); }

    std::vector<Elem> apply_tuple(const Elem* t, int k) const;
    std::vector<Elem> apply_tuple(const std::vector<Elem>& t) const {
        return apply_tuple(t.data(), static_cast<int>(t.size()));
    }

    bool operator==(const FinMap& o) const { return img == o.img; }
    bool operator<(const FinMap& o) const { return img < o.img; }

    static FinMap identity(StructurePtr s);
    static FinMap constant(StructurePtr s, Elem value);
};

/// Maps act from the right: compose(f, g) applies f first, then g.
FinMap compose(const FinMap& f, const FinMap& g);

struct MapKind {
    bool homomorphism = false;
    bool strong = false;
    bool injective = false;
    bool surjective = false;

    bool embedding() const { return homomorphism && strong && injective; }
    bool automorphism() const { return embedding() && surjective; }
    bool operator==(const MapKind&) const = default;
};

/// Exact flags. A homomorphism preserves every relation tuple and maps
/// constants to constants; strong means R(f(t)) already implies R(t) for
/// tuples t over the source.
MapKind classify_map(const FinMap& f);

/// Which maps a search should return. Required flags must hold; `strong`
/// and `surjective` are filtered, `injective` is enforced during search.
struct MapFilter {
    bool homomorphism = true;
    bool strong = false;
    bool injective = false;
    bool surjective = false;

    static MapFilter endomorphism() { return {true, false, false, false}; }
    static MapFilter embedding() { return {true, true, true, false}; }
    static MapFilter automorphism() { return {true, true, true, true}; }
    static MapFilter any() { return {false, false, false, false}; }
};

/// Enumerates maps source -> target matching the filter and extending
/// `partial` (entry UNSET_IMG = free), in lexicographic order of image
/// tables. The callback returns false to stop early. Returns the number
/// of maps delivered.
constexpr uint16_t UNSET_IMG = UINT16_MAX;
uint64_t search_homs(const StructurePtr& source, const StructurePtr& target, const MapFilter& filter,
                     const std::vector<uint16_t>& partial,
                     const std::function<bool(const FinMap&)>& yield);

/// Convenience wrapper collecting all results.
std::vector<FinMap> search_homs_all(const StructurePtr& source, const StructurePtr& target,
                                    const MapFilter& filter, const std::vector<uint16_t>& partial = {});

/// Homomorphisms power(A, n) -> A; the unary case coincides with the
/// endomorphism monoid elementwise.
std::vector<FinMap> polymorphisms(const StructurePtr& a, int n, uint64_t power_cap = 1000000);

struct PreserveResult {
    bool preserved = true;
    std::vector<std::vector<Elem>> witness_args;  // n tuples from X
    std::vector<Elem> witness_image;              // their coordinatewise image, not in X
};

/// Does the n-ary map f (a hom power(A,n) -> A) preserve X? On failure the
/// violating argument tuples and image are reported.
PreserveResult preserves(const FinMap& f, int n, const TupleSet& x);

}  // namespace finrel

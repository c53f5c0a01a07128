#pragma once

#include "finrel/finmap.hpp"

#include <optional>

namespace finrel {

/// A composition-closed set of self-maps containing the identity, stored
/// compactly as a lex-sorted flat image buffer. Elements are addressed by
/// index; composition acts from the right (mul(i, j) applies i first).
class TransformationMonoid {
public:
    /// Builds from an already-closed, lex-sorted element list (the search
    /// engines produce exactly that). Closure is the caller's responsibility;
    /// verify_closed() checks it.
    static TransformationMonoid from_sorted_elements(StructurePtr ground,
                                                     std::vector<uint16_t> flat_images);

    /// Closure of the generators under composition, plus the identity.
    /// Generator witnesses are retained: witness(i) = (parent, generator).
    static TransformationMonoid generate(StructurePtr ground, const std::vector<FinMap>& gens,
                                         uint64_t cap = 20000000);

    const StructurePtr& ground() const { return ground_; }
    size_t degree() const { return n_; }
    size_t size() const { return count_; }

    const uint16_t* img(size_t i) const { return flat_.data() + i * n_; }
    FinMap element(size_t i) const;
    size_t identity_index() const { return id_index_; }

    /// Index of the map with this image table, or -1.
    int64_t find(const uint16_t* image) const;
    int64_t find(const FinMap& f) const { return find(f.img.data()); }

    /// Index of compose(element(i), element(j)); throws if not closed.
    size_t mul(size_t i, size_t j) const;

    /// A small generating set (greedily grown, cached on first use).
    const std::vector<size_t>& generating_set() const;
    /// Witness decomposition for generated monoids: element = parent * gen.
    struct Witness {
        int64_t parent = -1;  // -1 marks generators and the identity
        int64_t gen = -1;
    };
    const std::vector<Witness>& witnesses() const { return witness_; }
    const std::vector<size_t>& discovery_order() const { return discovery_; }

    /// Indices of invertible elements (the largest subgroup).
    std::vector<size_t> invertibles() const;

    bool verify_closed() const;

private:
    TransformationMonoid() = default;
    StructurePtr ground_;
    size_t n_ = 0;
    size_t count_ = 0;
    std::vector<uint16_t> flat_;
    size_t id_index_ = 0;
    mutable std::vector<size_t> gens_;
    std::vector<Witness> witness_;
    std::vector<size_t> discovery_;
};

using MonoidPtr = std::shared_ptr<const TransformationMonoid>;

/// The full endomorphism / self-embedding / automorphism monoid.
MonoidPtr end_monoid(const StructurePtr& a, uint64_t cap = 20000000);
MonoidPtr emb_monoid(const StructurePtr& a, uint64_t cap = 20000000);
MonoidPtr aut_group(const StructurePtr& a, uint64_t cap = 20000000);

// --- orbits and closure ------------------------------------------------------

/// { t^sigma : sigma in the monoid }.
TupleSet orbit(const std::vector<Elem>& t, const TransformationMonoid& m);
/// Orbit under an explicit (not necessarily closed) map set: iterates to the
/// least superset of {t} closed under the maps.
TupleSet orbit(const std::vector<Elem>& t, const std::vector<FinMap>& maps, const StructurePtr& home);

/// Least superset of X closed under the monoid (union of member orbits).
TupleSet closure(const TupleSet& x, const TransformationMonoid& m);
TupleSet closure(const TupleSet& x, const std::vector<FinMap>& maps);

struct ClosureWitness {
    std::vector<Elem> tuple;   // x in X
    std::vector<uint16_t> map; // sigma
    std::vector<Elem> image;   // x^sigma not in X
};

/// Verdict with witness; scans elements in lex order so witnesses are minimal.
std::optional<ClosureWitness> is_closed(const TupleSet& x, const TransformationMonoid& m);
std::optional<ClosureWitness> is_closed(const TupleSet& x, const std::vector<FinMap>& maps);

// --- cosets ----------------------------------------------------------------

struct CosetReport {
    std::vector<std::vector<size_t>> classes;  // partition of element indices
    std::vector<size_t> class_of;              // element index -> class id
};

/// Right cosets of the invertibles G in E: sigma ~ sigma' iff sigma' =
/// compose(sigma, alpha) for some alpha in G. G is recomputed and checked
/// against `invertible_indices` when given.
CosetReport right_cosets(const TransformationMonoid& e,
                         const std::vector<size_t>* invertible_indices = nullptr);

struct CosetAsymmetry {
    size_t sigma, alpha;              // compose(alpha, sigma) leaves sigma's right coset
    std::vector<uint16_t> other_side; // the table of compose(alpha, sigma)
};

std::optional<CosetAsymmetry> coset_asymmetry(const TransformationMonoid& e);

// --- distinguished elements ---------------------------------------------------

struct SpecialElements {
    std::vector<size_t> absorbing;           // tau * sigma = sigma for every tau
    std::vector<size_t> constants;           // constant image tables
    std::vector<size_t> idempotent_central;  // sigma^2 = sigma, commuting with invertibles
};

SpecialElements special_elements(const TransformationMonoid& e);

struct SandwichReport {
    bool ok = true;
    std::vector<size_t> right_invertible;  // indices in E
    std::vector<size_t> embeddings;
    std::string violation;  // empty when both inclusions hold
};

/// Confirms right-invertibles <= Emb <= left-cancellables elementwise in
/// End(A); any violation would be an implementation bug and is reported.
SandwichReport sandwich_check(const StructurePtr& a, uint64_t cap = 20000000);

// --- monoid homomorphisms ------------------------------------------------------

struct MonoidHom {
    MonoidPtr source;
    MonoidPtr target;
    std::vector<uint32_t> table;  // source element index -> target element index

    size_t operator()(size_t i) const { return table[i]; }
    bool operator==(const MonoidHom& o) const { return table == o.table; }
};

struct HomVerifyResult {
    bool ok = true;
    std::string reason;
};

/// Checks f(id) = id and multiplicativity. Up to `pairwise_cap` source
/// elements every pair is checked; beyond that the check runs over all
/// (element, generator) pairs, which certifies the same property since the
/// generators reach every element.
HomVerifyResult verify_monoid_hom(const MonoidHom& f, size_t pairwise_cap = 2000);

struct MonoidHomSearchBounds {
    size_t source_cap = 32;
    size_t max_results = 1000000;
};

/// All monoid homomorphisms M -> N, enumerated by backtracking over
/// generator images.
std::vector<MonoidHom> search_monoid_homs(const MonoidPtr& m, const MonoidPtr& n,
                                          MonoidHomSearchBounds bounds = {});

/// The hom sending everything to the identity of N.
MonoidHom trivial_hom(const MonoidPtr& m, const MonoidPtr& n);

}  // namespace finrel

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace finrel {

using Elem = uint32_t;

/// Raised when an input file or inline text fails to parse.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line = -1)
        : std::runtime_error(line >= 0 ? "parse error at line " + std::to_string(line) + ": " + what
                                       : "parse error: " + what),
          line_no(line) {}
    int line_no;
};

/// Raised when a value violates a structural invariant.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error("validation error: " + what) {}
};

/// Raised when a computation would exceed a resource cap.
struct GuardError : std::runtime_error {
    explicit GuardError(const std::string& what) : std::runtime_error("resource guard: " + what) {}
};

struct RelationSymbol {
    std::string name;
    int arity = 1;
    bool operator==(const RelationSymbol&) const = default;
};

/// Relational signature with constant symbols. Names are unique across
/// relations and constants and must not collide with variable syntax (x<digits>).
class Signature {
public:
    Signature() = default;
    Signature(std::vector<RelationSymbol> rels, std::vector<std::string> consts);

    const std::vector<RelationSymbol>& relations() const { return rels_; }
    const std::vector<std::string>& constants() const { return consts_; }

    int relation_index(const std::string& name) const;  // -1 if absent
    int constant_index(const std::string& name) const;  // -1 if absent

    bool operator==(const Signature&) const = default;

private:
    std::vector<RelationSymbol> rels_;
    std::vector<std::string> consts_;
};

/// One relation table: a set of arity-length tuples, kept sorted and
/// deduplicated, with a hash index for O(1) membership.
class RelTable {
public:
    RelTable() = default;
    RelTable(int arity, std::vector<std::vector<Elem>> tuples);

    int arity() const { return arity_; }
    size_t size() const { return flat_.size() / arity_; }
    bool empty() const { return flat_.empty(); }

    const Elem* tuple(size_t i) const { return flat_.data() + i * arity_; }
    bool contains(const Elem* t) const;
    bool contains(const std::vector<Elem>& t) const { return contains(t.data()); }

    std::vector<std::vector<Elem>> tuples() const;
    Elem max_entry() const;

private:
    int arity_ = 1;
    std::vector<Elem> flat_;  // sorted lexicographically, stride = arity_
    std::unordered_set<uint64_t> index_;
    uint64_t key(const Elem* t) const;
};

/// A finite relational structure: domain {0..n-1}, one table per relation
/// symbol, one value per constant symbol. Immutable after construction.
class Structure {
public:
    Structure(std::string name, Signature sig, Elem domain_size,
              std::vector<RelTable> tables, std::vector<Elem> constant_values);

    const std::string& name() const { return name_; }
    const Signature& sig() const { return sig_; }
    Elem size() const { return n_; }

    const RelTable& table(int rel_index) const { return tables_[rel_index]; }
    const RelTable* table(const std::string& rel_name) const;
    Elem constant_value(int const_index) const { return const_values_[const_index]; }
    const std::vector<Elem>& constant_values() const { return const_values_; }

    bool operator==(const Structure& o) const;

private:
    std::string name_;
    Signature sig_;
    Elem n_ = 1;
    std::vector<RelTable> tables_;
    std::vector<Elem> const_values_;
};

using StructurePtr = std::shared_ptr<const Structure>;

/// A set of k-tuples over the domain of a home structure.
class TupleSet {
public:
    TupleSet(StructurePtr home, int arity);
    TupleSet(StructurePtr home, int arity, std::vector<std::vector<Elem>> tuples);

    const StructurePtr& home() const { return home_; }
    int arity() const { return arity_; }
    size_t size() const { return flat_.size() / arity_; }
    bool empty() const { return flat_.empty(); }

    const Elem* tuple(size_t i) const { return flat_.data() + i * arity_; }
    std::vector<Elem> tuple_vec(size_t i) const {
        return {tuple(i), tuple(i) + arity_};
    }
    bool contains(const Elem* t) const;
    bool contains(const std::vector<Elem>& t) const { return contains(t.data()); }

    std::vector<std::vector<Elem>> tuples() const;
    bool is_full() const;  // equals home^arity
    bool operator==(const TupleSet& o) const { return arity_ == o.arity_ && flat_ == o.flat_; }

    static TupleSet full(StructurePtr home, int arity);

private:
    StructurePtr home_;
    int arity_;
    std::vector<Elem> flat_;  // sorted, stride = arity_
    std::unordered_set<uint64_t> index_;
    uint64_t key(const Elem* t) const;
};

// --- serialization -------------------------------------------------------

/// Parses the plain-text structure format; throws ParseError / ValidationError.
Structure load_structure(const std::string& text);
/// Canonical text form; load_structure(serialize(s)) == s and the text
/// round-trips bit-exactly.
std::string serialize(const Structure& s);

Structure load_structure_json(const std::string& json_text);
std::string serialize_json(const Structure& s);

// --- construction --------------------------------------------------------

/// Product structure on |A|^n elements. Element encoding is lexicographic
/// little-endian: (a_0,..,a_{n-1}) maps to sum a_i * |A|^i, so coordinate 0
/// is the least significant digit.
Structure power(const Structure& a, int n, uint64_t size_cap = 1000000);

uint64_t power_encode(const std::vector<Elem>& coords, Elem base);
std::vector<Elem> power_decode(uint64_t code, Elem base, int n);

struct SubstructureResult {
    Structure structure;
    std::vector<Elem> renaming;  // old element -> new index, order-preserving
};

/// Restriction to a nonempty subset S (given as sorted element list); all
/// constants must lie in S. Elements are renumbered 0..|S|-1 preserving order.
SubstructureResult induced_substructure(const Structure& a, const std::vector<Elem>& s);

}  // namespace finrel

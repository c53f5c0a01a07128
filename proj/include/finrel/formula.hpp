#pragma once

#include "finrel/structure.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace finrel {

/// A term is a variable index or a constant symbol name.
struct Term {
    bool is_const = false;
    int var = 0;
    std::string const_name;

    static Term V(int v) { return {false, v, {}}; }
    static Term C(std::string name) { return {true, 0, std::move(name)}; }
    bool operator==(const Term&) const = default;
    auto operator<=>(const Term&) const = default;
};

enum class FKind { Top, Bot, Rel, Eq, Not, And, Or, Exists, Forall };

/// First-order formula tree. Immutable value type; And/Or are n-ary.
struct Formula {
    FKind kind = FKind::Top;
    std::string rel;             // Rel
    std::vector<Term> args;      // Rel: arity terms; Eq: exactly 2
    int qvar = 0;                // Exists / Forall
    std::vector<Formula> sub;    // Not: 1; And/Or: >= 1; Exists/Forall: 1

    static Formula top() { return {}; }
    static Formula bot() { return {FKind::Bot, {}, {}, 0, {}}; }
    static Formula rel_atom(std::string name, std::vector<Term> a) {
        return {FKind::Rel, std::move(name), std::move(a), 0, {}};
    }
    static Formula eq(Term a, Term b) { return {FKind::Eq, {}, {std::move(a), std::move(b)}, 0, {}}; }
    static Formula neg(Formula f) { return {FKind::Not, {}, {}, 0, {std::move(f)}}; }
    static Formula conj(std::vector<Formula> fs);
    static Formula disj(std::vector<Formula> fs);
    static Formula exists(int v, Formula f) { return {FKind::Exists, {}, {}, v, {std::move(f)}}; }
    static Formula forall(int v, Formula f) { return {FKind::Forall, {}, {}, v, {std::move(f)}}; }

    bool operator==(const Formula&) const = default;
};

/// Number of tree nodes (atoms count 1 regardless of arity).
size_t node_count(const Formula& f);
/// Free variable indices.
std::set<int> free_vars(const Formula& f);
/// All variable indices, free or bound.
std::set<int> all_vars(const Formula& f);

/// Substitutes terms for free variables (index-based, capture is the
/// caller's responsibility; used with globally fresh indices).
Formula rename_vars(const Formula& f, const std::vector<int>& var_map);

// --- fragments -------------------------------------------------------------

enum class Fragment { QF, EXIST, POS, PEX, PEX_NEQ, POS_NEQ, PP, FO };

const char* fragment_name(Fragment f);
Fragment fragment_from_name(const std::string& s);
std::vector<Fragment> all_fragments();

/// The syntactic fragments the formula belongs to. Membership rules:
///   QF       quantifier-free
///   EXIST    literals (atoms, negated atoms, =, !=, top, bot) under and/or/exists
///   POS      negation-free, any quantifiers
///   PEX      POS and EXIST
///   PEX_NEQ  PEX plus negated equalities
///   POS_NEQ  POS plus negated equalities
///   PP       exists-prefixed conjunction of relation and equality atoms
///            (top/bot excluded)
///   FO       everything
std::set<Fragment> classify(const Formula& f);

bool in_fragment(const Formula& f, Fragment frag);

// --- text form ---------------------------------------------------------------

/// Parses the s-expression form, e.g.
///   (exists x0 (and (E x0 x1) (not (= x0 x1))))
/// Variables are x<digits>; any other identifier in term position is a
/// constant symbol. Relation/constant names are validated at evaluation time.
Formula parse_formula(const std::string& text);
std::string print_formula(const Formula& f);

/// Checks arities and symbol names against a signature; throws ValidationError.
void validate_against(const Formula& f, const Signature& sig);

}  // namespace finrel

#pragma once

#include "finrel/eval.hpp"
#include "finrel/formula.hpp"

#include <random>

namespace finrel {

enum class DiagramFlavor { Positive, PositiveNeq, Full };

/// Canonical diagram of A anchored at a tuple. Variables x0..x_{k-1} stand
/// for the anchor positions (reused when anchor entries repeat, which adds
/// the implied equalities); every other element e gets y-variable k+e. The
/// matrix conjoins all true relation atoms, pins constants, and depending on
/// the flavor adds inequalities between distinct elements and negations of
/// false relation atoms. The result is the exists-closure over the y's, so
/// a tuple b satisfies the flavors exactly when some homomorphism /
/// injective homomorphism / embedding A -> A carries the anchor to b.
Formula canonical_diagram(const Structure& a, const std::vector<Elem>& anchor, DiagramFlavor flavor,
                          size_t atom_cap = 2000000);

/// A positive (forall/or/=) formula equivalent to x_u != x_v over domains of
/// exactly n elements: every (n-1)-tuple either repeats or meets {u, v}.
Formula positive_neq_gadget(int var_u, int var_v, Elem domain_size, int fresh_var_base);

struct EnumBounds {
    int max_vars = 1;
    int max_nodes = 1;
};

/// All formulas of the fragment within the bounds, duplicate-free, in a
/// fixed total order (by node count, then structural order). For a fixed
/// variable bound, extending the node bound only appends.
std::vector<Formula> enumerate_formulas(const Signature& sig, Fragment frag, EnumBounds bounds);

/// Seeded random formula in the fragment, within bounds. Used by the
/// randomized agreement harnesses; deterministic for a fixed generator state.
Formula random_formula(const Signature& sig, Fragment frag, EnumBounds bounds, std::mt19937& rng);

/// Random pp sentence (no free variables) over the signature.
Formula random_pp_sentence(const Signature& sig, int max_vars, int max_atoms, std::mt19937& rng);

}  // namespace finrel

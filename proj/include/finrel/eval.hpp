#pragma once

#include "finrel/formula.hpp"
#include "finrel/structure.hpp"

namespace finrel {

/// Variable assignment: index -> element, UNSET where undefined.
struct Assignment {
    static constexpr Elem UNSET = UINT32_MAX;
    std::vector<Elem> vals;

    explicit Assignment(size_t nvars = 0) : vals(nvars, UNSET) {}
    Elem get(int v) const { return v < static_cast<int>(vals.size()) ? vals[v] : UNSET; }
    void set(int v, Elem e) {
        if (v >= static_cast<int>(vals.size())) vals.resize(v + 1, UNSET);
        vals[v] = e;
    }
};

/// Standard Tarskian truth; quantifiers range over the full domain.
/// Throws ValidationError on unbound free variables or symbol mismatches.
bool evaluate(const Structure& a, const Formula& f, const Assignment& asg);

/// { t in A^k : A |= f(t) } with the free variables of f among x0..x_{k-1}.
TupleSet definable_set(const StructurePtr& a, const Formula& f, int k,
                       uint64_t enum_cap = 10000000);

}  // namespace finrel

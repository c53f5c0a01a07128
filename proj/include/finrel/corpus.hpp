#pragma once

#include "finrel/structure.hpp"

#include <string>
#include <vector>

namespace finrel {

/// Parameterized builders for the example families, all finite truncations.
///
///   PURESET(n)   empty signature, n elements
///   EQ2(s,d)     equivalence E with s singleton and d doubleton classes
///   M0T(a,b,c)   equivalence with a singleton, b doubleton, c tripleton classes
///   M1P(s,d)     EQ2(s,d) + Q marking one element per doubleton + constants
///                c0=0, c1=1 (requires s >= 2)
///   M1PP(s,d)    EQ2(s,d) + Q as above + R = complement of Q
///   M2T(p,q)     unary P of size p (the last p elements) after q plain elements
///   M2TC(p,q)    M2T with constants c0=0, c1=1 prepended outside P
///   ARROW        domain {0,1} with R = {(0,1)}
///
/// Layouts are fixed: EQ2 puts singletons first ({0..s-1}) and doubletons
/// {s+2j, s+2j+1}; Q contains the first element of each doubleton; M2T(p,q)
/// has domain q+p with P = {q..q+p-1}; M2TC(p,q) has domain 2+q+p with
/// P = {q+2..q+p+1}. These match what the E-quotient of EQ2/M1P produces.
Structure build_corpus(const std::string& family, const std::vector<long long>& params);

/// Families and parameter counts, for CLI help and enumeration in tests.
std::vector<std::pair<std::string, int>> corpus_families();

}  // namespace finrel

#include "finrel/diagram.hpp"

#include <algorithm>
#include <map>

namespace finrel {

Formula canonical_diagram(const Structure& a, const std::vector<Elem>& anchor, DiagramFlavor flavor,
                          size_t atom_cap) {
    const int k = static_cast<int>(anchor.size());
    if (k < 1) throw ValidationError("diagram anchor must be nonempty");
    for (Elem e : anchor)
        if (e >= a.size()) throw ValidationError("diagram anchor entry out of range");

    // least anchor position per element; everything else gets y-variable k+e
    std::vector<int> var_of(a.size(), -1);
    for (int i = k - 1; i >= 0; --i) var_of[anchor[i]] = i;
    std::vector<int> ys;
    for (Elem e = 0; e < a.size(); ++e)
        if (var_of[e] < 0) {
            var_of[e] = k + static_cast<int>(e);
            ys.push_back(k + static_cast<int>(e));
        }

    std::vector<Formula> atoms;
    auto guard = [&] {
        if (atoms.size() > atom_cap) throw GuardError("diagram matrix exceeds atom cap");
    };

    // repeated anchor entries force their variables equal
    for (int j = 0; j < k; ++j)
        if (var_of[anchor[j]] != j) atoms.push_back(Formula::eq(Term::V(var_of[anchor[j]]), Term::V(j)));

    for (size_t r = 0; r < a.sig().relations().size(); ++r) {
        const RelTable& tab = a.table(static_cast<int>(r));
        for (size_t i = 0; i < tab.size(); ++i) {
            std::vector<Term> args;
            for (int j = 0; j < tab.arity(); ++j) args.push_back(Term::V(var_of[tab.tuple(i)[j]]));
            atoms.push_back(Formula::rel_atom(a.sig().relations()[r].name, std::move(args)));
            guard();
        }
    }
    for (size_t c = 0; c < a.sig().constants().size(); ++c)
        atoms.push_back(Formula::eq(Term::V(var_of[a.constant_value(static_cast<int>(c))]),
                                    Term::C(a.sig().constants()[c])));

    if (flavor == DiagramFlavor::PositiveNeq || flavor == DiagramFlavor::Full) {
        for (Elem e = 0; e < a.size(); ++e)
            for (Elem f = e + 1; f < a.size(); ++f) {
                atoms.push_back(Formula::neg(Formula::eq(Term::V(var_of[e]), Term::V(var_of[f]))));
                guard();
            }
    }
    if (flavor == DiagramFlavor::Full) {
        for (size_t r = 0; r < a.sig().relations().size(); ++r) {
            const RelTable& tab = a.table(static_cast<int>(r));
            const int arity = tab.arity();
            std::vector<Elem> t(arity, 0);
            while (true) {
                if (!tab.contains(t)) {
                    std::vector<Term> args;
                    for (int j = 0; j < arity; ++j) args.push_back(Term::V(var_of[t[j]]));
                    atoms.push_back(
                        Formula::neg(Formula::rel_atom(a.sig().relations()[r].name, std::move(args))));
                    guard();
                }
                int j = 0;
                for (; j < arity; ++j) {
                    if (++t[j] < a.size()) break;
                    t[j] = 0;
                }
                if (j == arity) break;
            }
        }
    }

    Formula body = Formula::conj(std::move(atoms));
    for (auto it = ys.rbegin(); it != ys.rend(); ++it) body = Formula::exists(*it, std::move(body));
    return body;
}

Formula positive_neq_gadget(int var_u, int var_v, Elem domain_size, int fresh_var_base) {
    if (domain_size < 2) return Formula::bot();
    const int m = static_cast<int>(domain_size) - 1;  // witnesses needed to exhaust the rest
    std::vector<Formula> cases;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            cases.push_back(Formula::eq(Term::V(fresh_var_base + i), Term::V(fresh_var_base + j)));
    for (int i = 0; i < m; ++i) {
        cases.push_back(Formula::eq(Term::V(fresh_var_base + i), Term::V(var_u)));
        cases.push_back(Formula::eq(Term::V(fresh_var_base + i), Term::V(var_v)));
    }
    Formula body = Formula::disj(std::move(cases));
    for (int i = m - 1; i >= 0; --i) body = Formula::forall(fresh_var_base + i, std::move(body));
    return body;
}

// --- enumeration ----------------------------------------------------------

namespace {

std::vector<Term> term_universe(const Signature& sig, int max_vars) {
    std::vector<Term> terms;
    for (int v = 0; v < max_vars; ++v) terms.push_back(Term::V(v));
    for (const auto& c : sig.constants()) terms.push_back(Term::C(c));
    return terms;
}

std::vector<Formula> atom_universe(const Signature& sig, int max_vars, bool with_truth_consts) {
    std::vector<Formula> out;
    auto terms = term_universe(sig, max_vars);
    for (const auto& r : sig.relations()) {
        std::vector<size_t> pick(r.arity, 0);
        while (true) {
            std::vector<Term> args;
            for (int j = 0; j < r.arity; ++j) args.push_back(terms[pick[j]]);
            out.push_back(Formula::rel_atom(r.name, std::move(args)));
            int j = 0;
            for (; j < r.arity; ++j) {
                if (++pick[j] < terms.size()) break;
                pick[j] = 0;
            }
            if (j == r.arity) break;
        }
    }
    for (size_t i = 0; i < terms.size(); ++i)
        for (size_t j = 0; j < terms.size(); ++j) out.push_back(Formula::eq(terms[i], terms[j]));
    if (with_truth_consts) {
        out.push_back(Formula::top());
        out.push_back(Formula::bot());
    }
    return out;
}

struct FragRules {
    bool neg_rel = false;    // literal negation of relation atoms
    bool neg_eq = false;     // literal negation of equalities
    bool neg_any = false;    // negation of arbitrary subformulas
    bool exists = false;
    bool forall = false;
    bool truth_consts = true;
    bool pp_shape = false;
};

FragRules rules_for(Fragment f) {
    switch (f) {
        case Fragment::QF: return {true, true, true, false, false, true, false};
        case Fragment::EXIST: return {true, true, false, true, false, true, false};
        case Fragment::POS: return {false, false, false, true, true, true, false};
        case Fragment::PEX: return {false, false, false, true, false, true, false};
        case Fragment::PEX_NEQ: return {false, true, false, true, false, true, false};
        case Fragment::POS_NEQ: return {false, true, false, true, true, true, false};
        case Fragment::PP: return {false, false, false, true, false, false, true};
        case Fragment::FO: return {true, true, true, true, true, true, false};
    }
    return {};
}

struct Enumerator {
    const Signature& sig;
    FragRules rules;
    int max_vars;
    std::vector<Formula> atoms;       // plain atoms (rel + eq), no top/bot
    std::vector<Formula> atoms_full;  // with top/bot when allowed
    std::map<int, std::vector<Formula>> memo;         // general formulas by node count
    std::map<int, std::vector<Formula>> memo_matrix;  // pp conjunctions by node count
    std::map<int, std::vector<Formula>> memo_pp;      // pp with exists prefix

    Enumerator(const Signature& s, Fragment frag, int mv) : sig(s), rules(rules_for(frag)), max_vars(mv) {
        atoms = atom_universe(sig, max_vars, false);
        atoms_full = atom_universe(sig, max_vars, rules.truth_consts);
    }

    const std::vector<Formula>& matrix(int m) {
        auto it = memo_matrix.find(m);
        if (it != memo_matrix.end()) return it->second;
        std::vector<Formula> out;
        if (m == 1) out = atoms;
        if (m >= 3)
            for (int left = 1; left <= m - 2; ++left) {
                for (const auto& f : matrix(left))
                    for (const auto& g : matrix(m - 1 - left))
                        out.push_back(Formula{FKind::And, {}, {}, 0, {f, g}});
            }
        return memo_matrix.emplace(m, std::move(out)).first->second;
    }

    const std::vector<Formula>& pp(int m) {
        auto it = memo_pp.find(m);
        if (it != memo_pp.end()) return it->second;
        std::vector<Formula> out = matrix(m);
        if (m >= 2)
            for (int v = 0; v < max_vars; ++v)
                for (const auto& f : pp(m - 1)) out.push_back(Formula::exists(v, f));
        return memo_pp.emplace(m, std::move(out)).first->second;
    }

    const std::vector<Formula>& general(int m) {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        std::vector<Formula> out;
        if (m == 1) out = atoms_full;
        if (m >= 2) {
            if (rules.neg_any) {
                for (const auto& f : general(m - 1)) out.push_back(Formula::neg(f));
            } else if (m == 2 && (rules.neg_rel || rules.neg_eq)) {
                for (const auto& a : atoms) {
                    if (a.kind == FKind::Rel && !rules.neg_rel) continue;
                    if (a.kind == FKind::Eq && !rules.neg_eq) continue;
                    out.push_back(Formula::neg(a));
                }
            }
            if (m >= 3)
                for (int left = 1; left <= m - 2; ++left)
                    for (const auto& f : general(left))
                        for (const auto& g : general(m - 1 - left)) {
                            out.push_back(Formula{FKind::And, {}, {}, 0, {f, g}});
                            out.push_back(Formula{FKind::Or, {}, {}, 0, {f, g}});
                        }
            if (rules.exists)
                for (int v = 0; v < max_vars; ++v)
                    for (const auto& f : general(m - 1)) out.push_back(Formula::exists(v, f));
            if (rules.forall)
                for (int v = 0; v < max_vars; ++v)
                    for (const auto& f : general(m - 1)) out.push_back(Formula::forall(v, f));
        }
        return memo.emplace(m, std::move(out)).first->second;
    }
};

}  // namespace

std::vector<Formula> enumerate_formulas(const Signature& sig, Fragment frag, EnumBounds bounds) {
    if (bounds.max_vars < 1) throw ValidationError("enumerate_formulas requires max variables >= 1");
    if (bounds.max_nodes < 1) throw ValidationError("enumerate_formulas requires max nodes >= 1");
    Enumerator en(sig, frag, bounds.max_vars);
    std::vector<Formula> out;
    for (int m = 1; m <= bounds.max_nodes; ++m) {
        const auto& layer = en.rules.pp_shape ? en.pp(m) : en.general(m);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

// --- random generation ------------------------------------------------------

namespace {

Formula random_atom(const Signature& sig, int max_vars, bool truth_consts, std::mt19937& rng) {
    auto terms = term_universe(sig, max_vars);
    std::vector<int> kinds;  // 0 rel, 1 eq, 2 top, 3 bot
    if (!sig.relations().empty()) kinds.insert(kinds.end(), {0, 0, 0});
    kinds.insert(kinds.end(), {1, 1});
    if (truth_consts) kinds.insert(kinds.end(), {2, 3});
    int kind = kinds[rng() % kinds.size()];
    auto t = [&] { return terms[rng() % terms.size()]; };
    switch (kind) {
        case 0: {
            const auto& r = sig.relations()[rng() % sig.relations().size()];
            std::vector<Term> args;
            for (int j = 0; j < r.arity; ++j) args.push_back(t());
            return Formula::rel_atom(r.name, std::move(args));
        }
        case 1:
            return Formula::eq(t(), t());
        case 2:
            return Formula::top();
        default:
            return Formula::bot();
    }
}

Formula random_build(const Signature& sig, const FragRules& rules, int max_vars, int budget,
                     std::mt19937& rng) {
    if (budget <= 1) return random_atom(sig, max_vars, rules.truth_consts, rng);
    enum Op { NEG, BIN, QUANT };
    std::vector<Op> ops;
    if (rules.neg_any || ((rules.neg_rel || rules.neg_eq) && budget == 2)) ops.push_back(NEG);
    if (budget >= 3) ops.insert(ops.end(), {BIN, BIN});
    if (rules.exists || rules.forall) ops.insert(ops.end(), {QUANT, QUANT});
    if (ops.empty()) return random_atom(sig, max_vars, rules.truth_consts, rng);
    switch (ops[rng() % ops.size()]) {
        case NEG: {
            if (rules.neg_any) return Formula::neg(random_build(sig, rules, max_vars, budget - 1, rng));
            // literal negation only
            Formula a = random_atom(sig, max_vars, false, rng);
            if (a.kind == FKind::Rel && !rules.neg_rel) a = Formula::eq(Term::V(0), Term::V(0));
            return Formula::neg(a);
        }
        case BIN: {
            int left = 1 + static_cast<int>(rng() % static_cast<uint32_t>(budget - 2));
            Formula f = random_build(sig, rules, max_vars, left, rng);
            Formula g = random_build(sig, rules, max_vars, budget - 1 - left, rng);
            bool use_and = rng() % 2 == 0;
            return use_and ? Formula{FKind::And, {}, {}, 0, {std::move(f), std::move(g)}}
                           : Formula{FKind::Or, {}, {}, 0, {std::move(f), std::move(g)}};
        }
        default: {
            int v = static_cast<int>(rng() % static_cast<uint32_t>(max_vars));
            Formula body = random_build(sig, rules, max_vars, budget - 1, rng);
            bool use_forall = rules.forall && (!rules.exists || rng() % 2 == 0);
            return use_forall ? Formula::forall(v, std::move(body))
                              : Formula::exists(v, std::move(body));
        }
    }
}

}  // namespace

Formula random_formula(const Signature& sig, Fragment frag, EnumBounds bounds, std::mt19937& rng) {
    if (bounds.max_vars < 1 || bounds.max_nodes < 1)
        throw ValidationError("random_formula requires positive bounds");
    FragRules rules = rules_for(frag);
    if (rules.pp_shape) {
        int quants = static_cast<int>(rng() % static_cast<uint32_t>(bounds.max_vars + 1));
        int max_atoms = std::max(1, (bounds.max_nodes - quants + 1) / 2);
        int natoms = 1 + static_cast<int>(rng() % static_cast<uint32_t>(max_atoms));
        std::vector<Formula> atoms;
        for (int i = 0; i < natoms; ++i) atoms.push_back(random_atom(sig, bounds.max_vars, false, rng));
        Formula body = Formula::conj(std::move(atoms));
        for (int q = quants - 1; q >= 0; --q) body = Formula::exists(q, std::move(body));
        return body;
    }
    int budget = 1 + static_cast<int>(rng() % static_cast<uint32_t>(bounds.max_nodes));
    return random_build(sig, rules, bounds.max_vars, budget, rng);
}

Formula random_pp_sentence(const Signature& sig, int max_vars, int max_atoms, std::mt19937& rng) {
    int nvars = 1 + static_cast<int>(rng() % static_cast<uint32_t>(max_vars));
    int natoms = 1 + static_cast<int>(rng() % static_cast<uint32_t>(max_atoms));
    std::vector<Formula> atoms;
    for (int i = 0; i < natoms; ++i) atoms.push_back(random_atom(sig, nvars, false, rng));
    Formula body = Formula::conj(std::move(atoms));
    for (int v = nvars - 1; v >= 0; --v) body = Formula::exists(v, std::move(body));
    return body;
}

}  // namespace finrel

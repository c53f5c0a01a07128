#include "finrel/eval.hpp"

namespace finrel {

namespace {

Elem term_value(const Structure& a, const Term& t, const Assignment& asg) {
    if (t.is_const) {
        int c = a.sig().constant_index(t.const_name);
        if (c < 0) throw ValidationError("unknown constant symbol '" + t.const_name + "'");
        return a.constant_value(c);
    }
    Elem v = asg.get(t.var);
    if (v == Assignment::UNSET)
        throw ValidationError("unbound free variable x" + std::to_string(t.var));
    return v;
}

bool eval_rec(const Structure& a, const Formula& f, Assignment& asg) {
    switch (f.kind) {
        case FKind::Top:
            return true;
        case FKind::Bot:
            return false;
        case FKind::Rel: {
            int r = a.sig().relation_index(f.rel);
            if (r < 0) throw ValidationError("unknown relation symbol '" + f.rel + "'");
            const RelTable& tab = a.table(r);
            if (tab.arity() != static_cast<int>(f.args.size()))
                throw ValidationError("arity mismatch for relation '" + f.rel + "'");
            std::vector<Elem> t(f.args.size());
            for (size_t i = 0; i < f.args.size(); ++i) t[i] = term_value(a, f.args[i], asg);
            return tab.contains(t);
        }
        case FKind::Eq:
            return term_value(a, f.args[0], asg) == term_value(a, f.args[1], asg);
        case FKind::Not:
            return !eval_rec(a, f.sub[0], asg);
        case FKind::And:
            for (const auto& s : f.sub)
                if (!eval_rec(a, s, asg)) return false;
            return true;
        case FKind::Or:
            for (const auto& s : f.sub)
                if (eval_rec(a, s, asg)) return true;
            return false;
        case FKind::Exists:
        case FKind::Forall: {
            const bool want = f.kind == FKind::Exists;
            Elem saved = asg.get(f.qvar);
            for (Elem e = 0; e < a.size(); ++e) {
                asg.set(f.qvar, e);
                if (eval_rec(a, f.sub[0], asg) == want) {
                    asg.set(f.qvar, saved);
                    return want;
                }
            }
            asg.set(f.qvar, saved);
            return !want;
        }
    }
    return false;
}

}  // namespace

bool evaluate(const Structure& a, const Formula& f, const Assignment& asg) {
    Assignment local = asg;
    return eval_rec(a, f, local);
}

TupleSet definable_set(const StructurePtr& a, const Formula& f, int k, uint64_t enum_cap) {
    if (k < 1) throw ValidationError("definable_set arity must be >= 1");
    auto fv = free_vars(f);
    for (int v : fv)
        if (v >= k)
            throw ValidationError("free-variable mismatch: x" + std::to_string(v) +
                                  " not among x0..x" + std::to_string(k - 1));
    uint64_t total = 1;
    for (int i = 0; i < k; ++i) {
        total *= a->size();
        if (total > enum_cap) throw GuardError("definable_set enumeration exceeds cap");
    }
    std::vector<std::vector<Elem>> hits;
    Assignment asg(k);
    std::vector<Elem> cur(k, 0);
    while (true) {
        for (int i = 0; i < k; ++i) asg.vals[i] = cur[i];
        if (eval_rec(*a, f, asg)) hits.push_back(cur);
        int i = 0;
        for (; i < k; ++i) {
            if (++cur[i] < a->size()) break;
            cur[i] = 0;
        }
        if (i == k) break;
    }
    return TupleSet(a, k, std::move(hits));
}

}  // namespace finrel

#include "finrel/corpus.hpp"

namespace finrel {

namespace {

void add_class(std::vector<std::vector<Elem>>& e, Elem first, int size) {
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            e.push_back({first + static_cast<Elem>(i), first + static_cast<Elem>(j)});
}

Structure make_eq_like(const std::string& name, int singles, int doubles, int triples) {
    Elem n = static_cast<Elem>(singles + 2 * doubles + 3 * triples);
    if (n < 1) throw ValidationError(name + ": domain would be empty");
    std::vector<std::vector<Elem>> e;
    Elem next = 0;
    for (int i = 0; i < singles; ++i, next += 1) add_class(e, next, 1);
    for (int i = 0; i < doubles; ++i, next += 2) add_class(e, next, 2);
    for (int i = 0; i < triples; ++i, next += 3) add_class(e, next, 3);
    Signature sig({{"E", 2}}, {});
    std::vector<RelTable> tables;
    tables.emplace_back(2, std::move(e));
    return Structure(name, std::move(sig), n, std::move(tables), {});
}

std::vector<std::vector<Elem>> q_marks(int s, int d) {
    std::vector<std::vector<Elem>> q;
    for (int j = 0; j < d; ++j) q.push_back({static_cast<Elem>(s + 2 * j)});
    return q;
}

void check_params(const std::string& family, const std::vector<long long>& p, size_t expect) {
    if (p.size() != expect)
        throw ValidationError(family + " expects " + std::to_string(expect) + " parameter(s)");
    for (long long v : p)
        if (v < 0) throw ValidationError(family + ": parameters must be >= 0");
}

}  // namespace

Structure build_corpus(const std::string& family, const std::vector<long long>& params) {
    if (family == "PURESET") {
        check_params(family, params, 1);
        if (params[0] < 1) throw ValidationError("PURESET requires n >= 1");
        return Structure("PURESET" + std::to_string(params[0]), Signature({}, {}),
                         static_cast<Elem>(params[0]), {}, {});
    }
    if (family == "EQ2") {
        check_params(family, params, 2);
        int s = static_cast<int>(params[0]), d = static_cast<int>(params[1]);
        if (s + 2 * d < 1) throw ValidationError("EQ2 requires s + 2d >= 1");
        return make_eq_like("EQ2_" + std::to_string(s) + "_" + std::to_string(d), s, d, 0);
    }
    if (family == "M0T") {
        check_params(family, params, 3);
        int a = static_cast<int>(params[0]), b = static_cast<int>(params[1]),
            c = static_cast<int>(params[2]);
        if (a + 2 * b + 3 * c < 1) throw ValidationError("M0T requires a + 2b + 3c >= 1");
        return make_eq_like(
            "M0T_" + std::to_string(a) + "_" + std::to_string(b) + "_" + std::to_string(c), a, b, c);
    }
    if (family == "M1P" || family == "M1PP") {
        check_params(family, params, 2);
        int s = static_cast<int>(params[0]), d = static_cast<int>(params[1]);
        bool with_consts = family == "M1P";
        if (with_consts && s < 2) throw ValidationError("M1P requires s >= 2");
        if (s + 2 * d < 1) throw ValidationError(family + " requires a nonempty domain");
        Elem n = static_cast<Elem>(s + 2 * d);
        std::vector<std::vector<Elem>> e;
        for (int i = 0; i < s; ++i) add_class(e, static_cast<Elem>(i), 1);
        for (int j = 0; j < d; ++j) add_class(e, static_cast<Elem>(s + 2 * j), 2);
        std::vector<RelationSymbol> rels = {{"E", 2}, {"Q", 1}};
        std::vector<RelTable> tables;
        tables.emplace_back(2, std::move(e));
        tables.emplace_back(1, q_marks(s, d));
        if (family == "M1PP") {
            rels.push_back({"R", 1});
            std::vector<std::vector<Elem>> r;
            std::vector<bool> in_q(n, false);
            for (int j = 0; j < d; ++j) in_q[s + 2 * j] = true;
            for (Elem x = 0; x < n; ++x)
                if (!in_q[x]) r.push_back({x});
            tables.emplace_back(1, std::move(r));
            Signature sig(std::move(rels), {});
            return Structure("M1PP_" + std::to_string(s) + "_" + std::to_string(d), std::move(sig), n,
                             std::move(tables), {});
        }
        Signature sig(std::move(rels), {"c0", "c1"});
        return Structure("M1P_" + std::to_string(s) + "_" + std::to_string(d), std::move(sig), n,
                         std::move(tables), {0, 1});
    }
    if (family == "M2T" || family == "M2TC") {
        check_params(family, params, 2);
        int p = static_cast<int>(params[0]), q = static_cast<int>(params[1]);
        bool with_consts = family == "M2TC";
        int base = with_consts ? 2 : 0;
        Elem n = static_cast<Elem>(base + q + p);
        if (n < 1) throw ValidationError(family + " requires a nonempty domain");
        std::vector<std::vector<Elem>> ptab;
        for (int i = 0; i < p; ++i) ptab.push_back({static_cast<Elem>(base + q + i)});
        std::vector<RelTable> tables;
        tables.emplace_back(1, std::move(ptab));
        if (with_consts) {
            Signature sig({{"P", 1}}, {"c0", "c1"});
            return Structure("M2TC_" + std::to_string(p) + "_" + std::to_string(q), std::move(sig), n,
                             std::move(tables), {0, 1});
        }
        Signature sig({{"P", 1}}, {});
        return Structure("M2T_" + std::to_string(p) + "_" + std::to_string(q), std::move(sig), n,
                         std::move(tables), {});
    }
    if (family == "ARROW") {
        check_params(family, params, 0);
        Signature sig({{"R", 2}}, {});
        std::vector<RelTable> tables;
        tables.emplace_back(2, std::vector<std::vector<Elem>>{{0, 1}});
        return Structure("ARROW", std::move(sig), 2, std::move(tables), {});
    }
    throw ValidationError("unknown corpus family '" + family + "'");
}

std::vector<std::pair<std::string, int>> corpus_families() {
    return {{"PURESET", 1}, {"EQ2", 2}, {"M0T", 3}, {"M1P", 2},
            {"M1PP", 2},    {"M2T", 2}, {"M2TC", 2}, {"ARROW", 0}};
}

}  // namespace finrel

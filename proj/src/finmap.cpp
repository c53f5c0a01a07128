#include "finrel/finmap.hpp"

#include <algorithm>

namespace finrel {

FinMap::FinMap(StructurePtr src, StructurePtr tgt, std::vector<uint16_t> image)
    : source(std::move(src)), target(std::move(tgt)), img(std::move(image)) {
    if (!source || !target) throw ValidationError("map requires source and target structures");
    if (img.size() != source->size()) throw ValidationError("image table length must equal source size");
    if (target->size() > 65535) throw GuardError("map targets are capped at 65535 elements");
    for (uint16_t v : img)
        if (v >= target->size()) throw ValidationError("image entry out of range");
}

std::vector<Elem> FinMap::apply_tuple(const Elem* t, int k) const {
    std::vector<Elem> out(k);
    for (int i = 0; i < k; ++i) out[i] = img[t[i]];
    return out;
}

FinMap FinMap::identity(StructurePtr s) {
    std::vector<uint16_t> img(s->size());
    for (size_t i = 0; i < img.size(); ++i) img[i] = static_cast<uint16_t>(i);
    return FinMap(s, s, std::move(img));
}

FinMap FinMap::constant(StructurePtr s, Elem value) {
    std::vector<uint16_t> img(s->size(), static_cast<uint16_t>(value));
    return FinMap(s, s, std::move(img));
}

FinMap compose(const FinMap& f, const FinMap& g) {
    if (f.target->size() != g.source->size())
        throw ValidationError("compose: inner domains do not match");
    std::vector<uint16_t> img(f.img.size());
    for (size_t i = 0; i < img.size(); ++i) img[i] = g.img[f.img[i]];
    return FinMap(f.source, g.target, std::move(img));
}

MapKind classify_map(const FinMap& f) {
    const Structure& A = *f.source;
    const Structure& B = *f.target;
    if (!(A.sig() == B.sig())) throw ValidationError("classify_map: signature mismatch");

    MapKind k;
    k.homomorphism = true;
    for (size_t r = 0; r < A.sig().relations().size() && k.homomorphism; ++r) {
        const RelTable& ta = A.table(static_cast<int>(r));
        const RelTable& tb = B.table(static_cast<int>(r));
        for (size_t i = 0; i < ta.size(); ++i) {
            auto img = f.apply_tuple(ta.tuple(i), ta.arity());
            if (!tb.contains(img)) {
                k.homomorphism = false;
                break;
            }
        }
    }
    for (size_t c = 0; c < A.constant_values().size() && k.homomorphism; ++c)
        if (f(A.constant_value(static_cast<int>(c))) != B.constant_value(static_cast<int>(c)))
            k.homomorphism = false;

    // injective / surjective
    std::vector<uint32_t> hits(B.size(), 0);
    for (Elem x = 0; x < A.size(); ++x) ++hits[f(x)];
    k.injective = std::all_of(hits.begin(), hits.end(), [](uint32_t h) { return h <= 1; });
    k.surjective = std::all_of(hits.begin(), hits.end(), [](uint32_t h) { return h >= 1; });

    // strong: every source tuple whose image lies in R_B must itself lie in R_A
    k.strong = true;
    std::vector<std::vector<Elem>> inv(B.size());
    for (Elem x = 0; x < A.size(); ++x) inv[f(x)].push_back(x);
    for (size_t r = 0; r < A.sig().relations().size() && k.strong; ++r) {
        const RelTable& ta = A.table(static_cast<int>(r));
        const RelTable& tb = B.table(static_cast<int>(r));
        const int arity = ta.arity();
        for (size_t i = 0; i < tb.size() && k.strong; ++i) {
            const Elem* s = tb.tuple(i);
            bool covered = true;
            for (int j = 0; j < arity && covered; ++j) covered = !inv[s[j]].empty();
            if (!covered) continue;
            std::vector<size_t> pick(arity, 0);
            while (k.strong) {
                std::vector<Elem> t(arity);
                for (int j = 0; j < arity; ++j) t[j] = inv[s[j]][pick[j]];
                if (!ta.contains(t)) k.strong = false;
                int j = 0;
                for (; j < arity; ++j) {
                    if (++pick[j] < inv[s[j]].size()) break;
                    pick[j] = 0;
                }
                if (j == arity) break;
            }
        }
    }
    return k;
}

// --- backtracking search --------------------------------------------------

namespace {

struct BitDom {
    int words;
    std::vector<uint64_t> bits;  // nA * words

    uint64_t* row(size_t v) { return bits.data() + v * words; }
    const uint64_t* row(size_t v) const { return bits.data() + v * words; }
    bool test(size_t v, int b) const { return (row(v)[b >> 6] >> (b & 63)) & 1; }
    bool empty(size_t v) const {
        for (int w = 0; w < words; ++w)
            if (row(v)[w]) return false;
        return true;
    }
};

struct Searcher {
    const Structure& A;
    const Structure& B;
    StructurePtr a_ptr, b_ptr;
    MapFilter filter;
    const std::function<bool(const FinMap&)>& yield;

    size_t nA;
    int nB, words;
    BitDom dom;
    std::vector<std::pair<uint32_t, uint64_t>> trail;  // (word index, old value)
    std::vector<uint16_t> asg;
    std::vector<uint32_t> use_count;
    int distinct_used = 0;
    uint64_t delivered = 0;
    bool stopped = false;

    // tuples checked exactly when their largest variable is assigned
    struct Check {
        int rel;
        uint32_t tuple;
    };
    std::vector<std::vector<Check>> checks;

    // binary forward pruning: when v is assigned, restrict partner u
    struct BinEdge {
        uint32_t other;
        int rel;
        bool other_is_second;  // (v, other) in R_A if true, (other, v) otherwise
    };
    std::vector<std::vector<BinEdge>> bin_edges;
    std::vector<std::vector<uint64_t>> rows;  // per binary rel: nB bitsets of second components
    std::vector<std::vector<uint64_t>> cols;  // per binary rel: nB bitsets of first components
    std::vector<bool> rel_full;               // target table is total: constraint vacuous

    Searcher(StructurePtr a, StructurePtr b, const MapFilter& flt,
             const std::function<bool(const FinMap&)>& cb)
        : A(*a), B(*b), a_ptr(std::move(a)), b_ptr(std::move(b)), filter(flt), yield(cb) {
        nA = A.size();
        nB = static_cast<int>(B.size());
        words = (nB + 63) / 64;
        dom.words = words;
        dom.bits.assign(nA * words, 0);
        for (size_t v = 0; v < nA; ++v)
            for (int b = 0; b < nB; ++b) dom.row(v)[b >> 6] |= 1ull << (b & 63);
        asg.assign(nA, UNSET_IMG);
        use_count.assign(nB, 0);
        checks.resize(nA);
        bin_edges.resize(nA);

        rel_full.resize(A.sig().relations().size());
        rows.resize(A.sig().relations().size());
        cols.resize(A.sig().relations().size());
        for (size_t r = 0; r < A.sig().relations().size(); ++r) {
            const RelTable& tb = B.table(static_cast<int>(r));
            uint64_t full = 1;
            for (int j = 0; j < tb.arity(); ++j) full *= nB;
            rel_full[r] = tb.size() == full;
            if (tb.arity() == 2) {
                rows[r].assign(static_cast<size_t>(nB) * words, 0);
                cols[r].assign(static_cast<size_t>(nB) * words, 0);
                for (size_t i = 0; i < tb.size(); ++i) {
                    Elem x = tb.tuple(i)[0], y = tb.tuple(i)[1];
                    rows[r][x * words + (y >> 6)] |= 1ull << (y & 63);
                    cols[r][y * words + (x >> 6)] |= 1ull << (x & 63);
                }
            }
        }
        for (size_t r = 0; r < A.sig().relations().size(); ++r) {
            const RelTable& ta = A.table(static_cast<int>(r));
            for (size_t i = 0; i < ta.size(); ++i) {
                const Elem* t = ta.tuple(i);
                Elem mx = t[0];
                for (int j = 1; j < ta.arity(); ++j) mx = std::max(mx, t[j]);
                checks[mx].push_back({static_cast<int>(r), static_cast<uint32_t>(i)});
                if (ta.arity() == 2 && !rel_full[r]) {
                    if (t[0] != t[1]) {
                        bin_edges[t[0]].push_back({t[1], static_cast<int>(r), true});
                        bin_edges[t[1]].push_back({t[0], static_cast<int>(r), false});
                    }
                }
            }
        }
    }

    bool init_constraints(const std::vector<uint16_t>& partial) {
        // unary relation tables restrict candidates up front
        for (size_t r = 0; r < A.sig().relations().size(); ++r) {
            const RelTable& ta = A.table(static_cast<int>(r));
            if (ta.arity() != 1 || rel_full[r]) continue;
            const RelTable& tb = B.table(static_cast<int>(r));
            std::vector<uint64_t> allowed(words, 0);
            for (size_t i = 0; i < tb.size(); ++i) {
                Elem b = tb.tuple(i)[0];
                allowed[b >> 6] |= 1ull << (b & 63);
            }
            for (size_t i = 0; i < ta.size(); ++i) {
                Elem v = ta.tuple(i)[0];
                for (int w = 0; w < words; ++w) dom.row(v)[w] &= allowed[w];
                if (dom.empty(v)) return false;
            }
        }
        // constants are pinned
        for (size_t c = 0; c < A.constant_values().size(); ++c) {
            Elem v = A.constant_value(static_cast<int>(c));
            Elem b = B.constant_value(static_cast<int>(c));
            if (!dom.test(v, static_cast<int>(b))) return false;
            std::fill(dom.row(v), dom.row(v) + words, 0);
            dom.row(v)[b >> 6] = 1ull << (b & 63);
        }
        // caller-provided partial assignment
        if (!partial.empty()) {
            if (partial.size() != nA) throw ValidationError("partial assignment length mismatch");
            for (size_t v = 0; v < nA; ++v) {
                if (partial[v] == UNSET_IMG) continue;
                if (partial[v] >= nB) throw ValidationError("partial assignment value out of range");
                if (!dom.test(v, partial[v])) return false;
                std::fill(dom.row(v), dom.row(v) + words, 0);
                dom.row(v)[partial[v] >> 6] = 1ull << (partial[v] & 63);
            }
        }
        return true;
    }

    void clear_bit(size_t v, int b) {
        uint32_t wi = static_cast<uint32_t>(v * words + (b >> 6));
        uint64_t old = dom.bits[wi];
        uint64_t nw = old & ~(1ull << (b & 63));
        if (nw != old) {
            trail.emplace_back(wi, old);
            dom.bits[wi] = nw;
        }
    }

    bool restrict_row(size_t v, const uint64_t* mask) {
        bool nonempty = false;
        for (int w = 0; w < words; ++w) {
            uint32_t wi = static_cast<uint32_t>(v * words + w);
            uint64_t old = dom.bits[wi];
            uint64_t nw = old & mask[w];
            if (nw != old) {
                trail.emplace_back(wi, old);
                dom.bits[wi] = nw;
            }
            nonempty |= nw != 0;
        }
        return nonempty;
    }

    // exact checks + one round of binary pruning for the assignment v -> c
    bool propagate(size_t v, int c) {
        for (const Check& ck : checks[v]) {
            const RelTable& ta = A.table(ck.rel);
            const Elem* t = ta.tuple(ck.tuple);
            const RelTable& tb = B.table(ck.rel);
            std::vector<Elem> img(ta.arity());
            for (int j = 0; j < ta.arity(); ++j) img[j] = asg[t[j]];
            if (!tb.contains(img)) return false;
        }
        for (const BinEdge& e : bin_edges[v]) {
            if (asg[e.other] != UNSET_IMG) continue;
            const uint64_t* mask = e.other_is_second ? &rows[e.rel][static_cast<size_t>(c) * words]
                                                     : &cols[e.rel][static_cast<size_t>(c) * words];
            if (!restrict_row(e.other, mask)) return false;
        }
        return true;
    }

    bool leaf_ok() {
        if (filter.surjective && distinct_used != nB) return false;
        if (filter.strong) {
            FinMap f(a_ptr, b_ptr, asg);
            if (!classify_map(f).strong) return false;
        }
        return true;
    }

    void descend(size_t v) {
        if (stopped) return;
        if (v == nA) {
            if (leaf_ok()) {
                ++delivered;
                if (!yield(FinMap(a_ptr, b_ptr, asg))) stopped = true;
            }
            return;
        }
        if (filter.surjective) {
            int needed = nB - distinct_used;
            if (needed > static_cast<int>(nA - v)) return;
        }
        for (int c = 0; c < nB && !stopped; ++c) {
            if (!dom.test(v, c)) continue;
            if (filter.injective && use_count[c] > 0) continue;
            size_t mark = trail.size();
            asg[v] = static_cast<uint16_t>(c);
            if (use_count[c]++ == 0) ++distinct_used;
            if (propagate(v, c)) descend(v + 1);
            if (--use_count[c] == 0) --distinct_used;
            asg[v] = UNSET_IMG;
            while (trail.size() > mark) {
                dom.bits[trail.back().first] = trail.back().second;
                trail.pop_back();
            }
        }
    }
};

}  // namespace

uint64_t search_homs(const StructurePtr& source, const StructurePtr& target, const MapFilter& filter,
                     const std::vector<uint16_t>& partial,
                     const std::function<bool(const FinMap&)>& yield) {
    if (!(source->sig() == target->sig()))
        throw ValidationError("search_homs: source and target must share a signature");
    if (target->size() > 65535) throw GuardError("search target exceeds 65535 elements");
    MapFilter f = filter;
    if (!f.homomorphism && f.strong)
        throw ValidationError("strong filter requires the homomorphism filter");
    Searcher s(source, target, f, yield);
    if (!f.homomorphism) {
        // raw map enumeration: drop relation/constant constraints
        s.checks.assign(s.nA, {});
        s.bin_edges.assign(s.nA, {});
        if (!partial.empty()) {
            if (partial.size() != s.nA) throw ValidationError("partial assignment length mismatch");
            for (size_t v = 0; v < s.nA; ++v)
                if (partial[v] != UNSET_IMG) {
                    std::fill(s.dom.row(v), s.dom.row(v) + s.words, 0);
                    s.dom.row(v)[partial[v] >> 6] = 1ull << (partial[v] & 63);
                }
        }
        s.descend(0);
        return s.delivered;
    }
    if (!s.init_constraints(partial)) return 0;
    s.descend(0);
    return s.delivered;
}

std::vector<FinMap> search_homs_all(const StructurePtr& source, const StructurePtr& target,
                                    const MapFilter& filter, const std::vector<uint16_t>& partial) {
    std::vector<FinMap> out;
    search_homs(source, target, filter, partial, [&](const FinMap& f) {
        out.push_back(f);
        return true;
    });
    return out;
}

std::vector<FinMap> polymorphisms(const StructurePtr& a, int n, uint64_t power_cap) {
    if (n < 1) throw ValidationError("polymorphism arity must be >= 1");
    auto pw = std::make_shared<const Structure>(power(*a, n, power_cap));
    return search_homs_all(pw, a, MapFilter::endomorphism());
}

PreserveResult preserves(const FinMap& f, int n, const TupleSet& x) {
    if (x.home()->size() != f.target->size())
        throw ValidationError("preserves: tuple set must live over the map's target");
    uint64_t expect = 1;
    for (int i = 0; i < n; ++i) expect *= x.home()->size();
    if (f.source->size() != expect)
        throw ValidationError("preserves: map source is not the expected power");

    PreserveResult res;
    if (x.empty()) return res;
    const int k = x.arity();
    const Elem base = x.home()->size();
    uint64_t combos = 1;
    for (int i = 0; i < n; ++i) {
        combos *= x.size();
        if (combos > 10000000) throw GuardError("preserves: too many argument combinations");
    }
    std::vector<size_t> pick(n, 0);
    std::vector<Elem> coords(n), img(k);
    while (true) {
        for (int j = 0; j < k; ++j) {
            for (int i = 0; i < n; ++i) coords[i] = x.tuple(pick[i])[j];
            img[j] = f(static_cast<Elem>(power_encode(coords, base)));
        }
        if (!x.contains(img)) {
            res.preserved = false;
            for (int i = 0; i < n; ++i) res.witness_args.push_back(x.tuple_vec(pick[i]));
            res.witness_image = img;
            return res;
        }
        int i = 0;
        for (; i < n; ++i) {
            if (++pick[i] < x.size()) break;
            pick[i] = 0;
        }
        if (i == n) break;
    }
    return res;
}

}  // namespace finrel

#include "finrel/structure.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace finrel {

namespace {

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// Names of the form x<digits> are reserved for formula variables.
bool looks_like_variable(const std::string& s) {
    if (s.size() < 2 || s[0] != 'x') return false;
    return std::all_of(s.begin() + 1, s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Signature::Signature(std::vector<RelationSymbol> rels, std::vector<std::string> consts)
    : rels_(std::move(rels)), consts_(std::move(consts)) {
    std::unordered_set<std::string> seen;
    for (const auto& r : rels_) {
        if (!valid_identifier(r.name) || looks_like_variable(r.name))
            throw ValidationError("bad relation name '" + r.name + "'");
        if (r.arity < 1) throw ValidationError("relation " + r.name + " has arity < 1");
        if (!seen.insert(r.name).second) throw ValidationError("duplicate symbol name '" + r.name + "'");
    }
    for (const auto& c : consts_) {
        if (!valid_identifier(c) || looks_like_variable(c))
            throw ValidationError("bad constant name '" + c + "'");
        if (!seen.insert(c).second) throw ValidationError("duplicate symbol name '" + c + "'");
    }
}

int Signature::relation_index(const std::string& name) const {
    for (size_t i = 0; i < rels_.size(); ++i)
        if (rels_[i].name == name) return static_cast<int>(i);
    return -1;
}

int Signature::constant_index(const std::string& name) const {
    for (size_t i = 0; i < consts_.size(); ++i)
        if (consts_[i] == name) return static_cast<int>(i);
    return -1;
}

// --- RelTable -------------------------------------------------------------

uint64_t RelTable::key(const Elem* t) const {
    uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < arity_; ++i) {
        h ^= t[i];
        h *= 1099511628211ull;
    }
    return h;
}

RelTable::RelTable(int arity, std::vector<std::vector<Elem>> tuples) : arity_(arity) {
    if (arity < 1) throw ValidationError("relation arity must be >= 1");
    for (auto& t : tuples)
        if (static_cast<int>(t.size()) != arity)
            throw ValidationError("tuple length does not match relation arity");
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    flat_.reserve(tuples.size() * arity);
    for (const auto& t : tuples) {
        flat_.insert(flat_.end(), t.begin(), t.end());
        index_.insert(key(t.data()));
    }
}

bool RelTable::contains(const Elem* t) const {
    if (index_.find(key(t)) == index_.end()) return false;
    // hash hit: confirm against the sorted list (collisions possible in principle)
    size_t lo = 0, hi = size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        const Elem* m = tuple(mid);
        int cmp = 0;
        for (int i = 0; i < arity_ && cmp == 0; ++i)
            cmp = (m[i] < t[i]) ? -1 : (m[i] > t[i]) ? 1 : 0;
        if (cmp == 0) return true;
        if (cmp < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return false;
}

std::vector<std::vector<Elem>> RelTable::tuples() const {
    std::vector<std::vector<Elem>> out;
    out.reserve(size());
    for (size_t i = 0; i < size(); ++i) out.push_back({tuple(i), tuple(i) + arity_});
    return out;
}

Elem RelTable::max_entry() const {
    Elem m = 0;
    for (Elem e : flat_) m = std::max(m, e);
    return m;
}

// --- Structure --------------------------------------------------------------

Structure::Structure(std::string name, Signature sig, Elem domain_size,
                     std::vector<RelTable> tables, std::vector<Elem> constant_values)
    : name_(std::move(name)),
      sig_(std::move(sig)),
      n_(domain_size),
      tables_(std::move(tables)),
      const_values_(std::move(constant_values)) {
    if (n_ < 1) throw ValidationError("empty domains are rejected");
    if (tables_.size() != sig_.relations().size())
        throw ValidationError("table count does not match signature");
    if (const_values_.size() != sig_.constants().size())
        throw ValidationError("constant count does not match signature");
    for (size_t i = 0; i < tables_.size(); ++i) {
        if (tables_[i].arity() != sig_.relations()[i].arity)
            throw ValidationError("table arity mismatch for relation " + sig_.relations()[i].name);
        if (!tables_[i].empty() && tables_[i].max_entry() >= n_)
            throw ValidationError("tuple entry " + std::to_string(tables_[i].max_entry()) +
                                  " out of range for domain size " + std::to_string(n_) +
                                  " in relation " + sig_.relations()[i].name);
    }
    for (size_t i = 0; i < const_values_.size(); ++i)
        if (const_values_[i] >= n_)
            throw ValidationError("constant " + sig_.constants()[i] + " value out of range");
}

const RelTable* Structure::table(const std::string& rel_name) const {
    int i = sig_.relation_index(rel_name);
    return i < 0 ? nullptr : &tables_[i];
}

bool Structure::operator==(const Structure& o) const {
    if (name_ != o.name_ || !(sig_ == o.sig_) || n_ != o.n_ || const_values_ != o.const_values_)
        return false;
    for (size_t i = 0; i < tables_.size(); ++i)
        if (tables_[i].tuples() != o.tables_[i].tuples()) return false;
    return true;
}

// --- TupleSet ---------------------------------------------------------------

uint64_t TupleSet::key(const Elem* t) const {
    uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < arity_; ++i) {
        h ^= t[i];
        h *= 1099511628211ull;
    }
    return h;
}

TupleSet::TupleSet(StructurePtr home, int arity) : home_(std::move(home)), arity_(arity) {
    if (arity_ < 1) throw ValidationError("tuple set arity must be >= 1");
}

TupleSet::TupleSet(StructurePtr home, int arity, std::vector<std::vector<Elem>> tuples)
    : TupleSet(std::move(home), arity) {
    for (auto& t : tuples) {
        if (static_cast<int>(t.size()) != arity_) throw ValidationError("tuple length mismatch in tuple set");
        for (Elem e : t)
            if (e >= home_->size()) throw ValidationError("tuple entry out of range in tuple set");
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    flat_.reserve(tuples.size() * arity_);
    for (const auto& t : tuples) {
        flat_.insert(flat_.end(), t.begin(), t.end());
        index_.insert(key(t.data()));
    }
}

bool TupleSet::contains(const Elem* t) const {
    if (index_.find(key(t)) == index_.end()) return false;
    size_t lo = 0, hi = size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        const Elem* m = tuple(mid);
        int cmp = 0;
        for (int i = 0; i < arity_ && cmp == 0; ++i)
            cmp = (m[i] < t[i]) ? -1 : (m[i] > t[i]) ? 1 : 0;
        if (cmp == 0) return true;
        if (cmp < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return false;
}

std::vector<std::vector<Elem>> TupleSet::tuples() const {
    std::vector<std::vector<Elem>> out;
    out.reserve(size());
    for (size_t i = 0; i < size(); ++i) out.push_back(tuple_vec(i));
    return out;
}

bool TupleSet::is_full() const {
    uint64_t full = 1;
    for (int i = 0; i < arity_; ++i) {
        full *= home_->size();
        if (full > size()) return false;
    }
    return full == size();
}

TupleSet TupleSet::full(StructurePtr home, int arity) {
    std::vector<std::vector<Elem>> all;
    std::vector<Elem> cur(arity, 0);
    const Elem n = home->size();
    while (true) {
        all.push_back(cur);
        int i = 0;
        for (; i < arity; ++i) {
            if (++cur[i] < n) break;
            cur[i] = 0;
        }
        if (i == arity) break;
    }
    std::sort(all.begin(), all.end());
    return TupleSet(std::move(home), arity, std::move(all));
}

// --- text serialization ----------------------------------------------------

namespace {

struct Line {
    std::string text;
    int no;
};

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

}  // namespace

Structure load_structure(const std::string& text) {
    std::vector<Line> lines;
    {
        std::istringstream is(text);
        std::string l;
        int no = 0;
        while (std::getline(is, l)) {
            ++no;
            size_t h = l.find('#');
            if (h != std::string::npos) l = l.substr(0, h);
            if (split_ws(l).empty()) continue;
            lines.push_back({l, no});
        }
    }
    if (lines.empty()) throw ParseError("empty input");

    size_t i = 0;
    auto words = split_ws(lines[i].text);
    if (words.size() != 2 || words[0] != "structure")
        throw ParseError("expected 'structure <name>'", lines[i].no);
    std::string name = words[1];
    ++i;

    if (i >= lines.size()) throw ParseError("expected 'domain <n>'");
    words = split_ws(lines[i].text);
    if (words.size() != 2 || words[0] != "domain")
        throw ParseError("expected 'domain <n>'", lines[i].no);
    long long n_ll = -1;
    try {
        n_ll = std::stoll(words[1]);
    } catch (...) {
        throw ParseError("bad domain size '" + words[1] + "'", lines[i].no);
    }
    if (n_ll < 1) throw ValidationError("empty domains are rejected");
    Elem n = static_cast<Elem>(n_ll);
    ++i;

    std::vector<RelationSymbol> rels;
    std::vector<std::vector<std::vector<Elem>>> rel_tuples;
    std::vector<std::string> consts;
    std::vector<Elem> const_vals;

    while (i < lines.size()) {
        words = split_ws(lines[i].text);
        if (words[0] == "relation") {
            if (words.size() != 2) throw ParseError("expected 'relation <name>/<arity>'", lines[i].no);
            size_t slash = words[1].find('/');
            if (slash == std::string::npos)
                throw ParseError("expected 'relation <name>/<arity>'", lines[i].no);
            std::string rname = words[1].substr(0, slash);
            int arity = 0;
            try {
                arity = std::stoi(words[1].substr(slash + 1));
            } catch (...) {
                throw ParseError("bad arity in relation header", lines[i].no);
            }
            ++i;
            // tuple lines run until the next keyword
            std::string body;
            while (i < lines.size()) {
                auto w0 = split_ws(lines[i].text)[0];
                if (w0 == "relation" || w0 == "constant") break;
                body += " " + lines[i].text;
                ++i;
            }
            std::vector<std::vector<Elem>> tuples;
            std::vector<Elem> cur;
            bool open = false;
            int tok_line = lines[i - 1].no;
            std::string num;
            auto flush_num = [&] {
                if (num.empty()) return;
                long long v = -1;
                try {
                    v = std::stoll(num);
                } catch (...) {
                    throw ParseError("bad tuple entry '" + num + "'", tok_line);
                }
                if (v < 0) throw ParseError("negative tuple entry", tok_line);
                cur.push_back(static_cast<Elem>(v));
                num.clear();
            };
            for (char c : body) {
                if (c == '(') {
                    if (open) throw ParseError("nested '(' in tuple list", tok_line);
                    open = true;
                    cur.clear();
                } else if (c == ')') {
                    if (!open) throw ParseError("unmatched ')' in tuple list", tok_line);
                    flush_num();
                    open = false;
                    tuples.push_back(cur);
                } else if (std::isspace(static_cast<unsigned char>(c))) {
                    flush_num();
                } else if (std::isdigit(static_cast<unsigned char>(c))) {
                    if (!open) throw ParseError("tuple entry outside parentheses", tok_line);
                    num += c;
                } else {
                    throw ParseError(std::string("unexpected character '") + c + "' in tuple list", tok_line);
                }
            }
            if (open) throw ParseError("unterminated tuple", tok_line);
            for (const auto& t : tuples)
                if (static_cast<int>(t.size()) != arity)
                    throw ValidationError("tuple length does not match relation arity in " + rname);
            rels.push_back({rname, arity});
            rel_tuples.push_back(std::move(tuples));
        } else if (words[0] == "constant") {
            // constant <name> = <k>
            if (words.size() != 4 || words[2] != "=")
                throw ParseError("expected 'constant <name> = <k>'", lines[i].no);
            long long v = -1;
            try {
                v = std::stoll(words[3]);
            } catch (...) {
                throw ParseError("bad constant value", lines[i].no);
            }
            if (v < 0) throw ParseError("negative constant value", lines[i].no);
            consts.push_back(words[1]);
            const_vals.push_back(static_cast<Elem>(v));
            ++i;
        } else {
            throw ParseError("unexpected directive '" + words[0] + "'", lines[i].no);
        }
    }

    Signature sig(std::move(rels), std::move(consts));
    std::vector<RelTable> tables;
    for (size_t r = 0; r < rel_tuples.size(); ++r)
        tables.emplace_back(sig.relations()[r].arity, std::move(rel_tuples[r]));
    return Structure(std::move(name), std::move(sig), n, std::move(tables), std::move(const_vals));
}

std::string serialize(const Structure& s) {
    std::ostringstream os;
    os << "structure " << s.name() << "\n";
    os << "domain " << s.size() << "\n";
    for (size_t r = 0; r < s.sig().relations().size(); ++r) {
        const auto& sym = s.sig().relations()[r];
        os << "relation " << sym.name << "/" << sym.arity << "\n";
        const auto& tab = s.table(static_cast<int>(r));
        if (tab.size() > 0) {
            for (size_t i = 0; i < tab.size(); ++i) {
                os << (i ? " (" : "(");
                for (int j = 0; j < sym.arity; ++j) os << (j ? " " : "") << tab.tuple(i)[j];
                os << ")";
            }
            os << "\n";
        }
    }
    for (size_t c = 0; c < s.sig().constants().size(); ++c)
        os << "constant " << s.sig().constants()[c] << " = " << s.constant_value(static_cast<int>(c))
           << "\n";
    return os.str();
}

Structure load_structure_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw ParseError(e.what());
    }
    try {
        std::string name = j.at("name").get<std::string>();
        long long n = j.at("domain").get<long long>();
        if (n < 1) throw ValidationError("empty domains are rejected");
        std::vector<RelationSymbol> rels;
        std::vector<std::vector<std::vector<Elem>>> rel_tuples;
        for (const auto& rj : j.value("relations", nlohmann::json::array())) {
            rels.push_back({rj.at("name").get<std::string>(), rj.at("arity").get<int>()});
            std::vector<std::vector<Elem>> tuples;
            for (const auto& tj : rj.at("tuples")) tuples.push_back(tj.get<std::vector<Elem>>());
            rel_tuples.push_back(std::move(tuples));
        }
        std::vector<std::string> consts;
        std::vector<Elem> vals;
        if (j.contains("constants"))
            for (const auto& [k, v] : j.at("constants").items()) {
                consts.push_back(k);
                vals.push_back(v.get<Elem>());
            }
        Signature sig(std::move(rels), std::move(consts));
        std::vector<RelTable> tables;
        for (size_t r = 0; r < rel_tuples.size(); ++r)
            tables.emplace_back(sig.relations()[r].arity, std::move(rel_tuples[r]));
        return Structure(std::move(name), std::move(sig), static_cast<Elem>(n), std::move(tables),
                         std::move(vals));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad structure json: ") + e.what());
    }
}

std::string serialize_json(const Structure& s) {
    nlohmann::ordered_json j;
    j["name"] = s.name();
    j["domain"] = s.size();
    j["relations"] = nlohmann::ordered_json::array();
    for (size_t r = 0; r < s.sig().relations().size(); ++r) {
        nlohmann::ordered_json rj;
        rj["name"] = s.sig().relations()[r].name;
        rj["arity"] = s.sig().relations()[r].arity;
        rj["tuples"] = s.table(static_cast<int>(r)).tuples();
        j["relations"].push_back(rj);
    }
    j["constants"] = nlohmann::ordered_json::object();
    for (size_t c = 0; c < s.sig().constants().size(); ++c)
        j["constants"][s.sig().constants()[c]] = s.constant_value(static_cast<int>(c));
    return j.dump();
}

// --- power and substructure --------------------------------------------------

uint64_t power_encode(const std::vector<Elem>& coords, Elem base) {
    uint64_t code = 0;
    for (size_t i = coords.size(); i-- > 0;) code = code * base + coords[i];
    return code;
}

std::vector<Elem> power_decode(uint64_t code, Elem base, int n) {
    std::vector<Elem> out(n);
    for (int i = 0; i < n; ++i) {
        out[i] = static_cast<Elem>(code % base);
        code /= base;
    }
    return out;
}

Structure power(const Structure& a, int n, uint64_t size_cap) {
    if (n < 1) throw ValidationError("power exponent must be >= 1");
    uint64_t dom = 1;
    for (int i = 0; i < n; ++i) {
        dom *= a.size();
        if (dom > size_cap)
            throw GuardError("power domain " + std::to_string(a.size()) + "^" + std::to_string(n) +
                             " exceeds cap " + std::to_string(size_cap));
    }
    std::vector<RelTable> tables;
    for (size_t r = 0; r < a.sig().relations().size(); ++r) {
        const auto& tab = a.table(static_cast<int>(r));
        const int arity = tab.arity();
        // each n-fold choice of base tuples yields one product tuple
        uint64_t count = 1;
        for (int i = 0; i < n; ++i) {
            count *= tab.size();
            if (count > size_cap * 8)
                throw GuardError("power relation table for " + a.sig().relations()[r].name +
                                 " exceeds cap");
        }
        std::vector<std::vector<Elem>> tuples;
        tuples.reserve(count);
        if (count > 0 && tab.size() > 0) {
            std::vector<size_t> choice(n, 0);
            std::vector<Elem> coords(n);
            while (true) {
                std::vector<Elem> t(arity);
                for (int pos = 0; pos < arity; ++pos) {
                    for (int i = 0; i < n; ++i) coords[i] = tab.tuple(choice[i])[pos];
                    t[pos] = static_cast<Elem>(power_encode(coords, a.size()));
                }
                tuples.push_back(std::move(t));
                int i = 0;
                for (; i < n; ++i) {
                    if (++choice[i] < tab.size()) break;
                    choice[i] = 0;
                }
                if (i == n) break;
            }
        }
        tables.emplace_back(arity, std::move(tuples));
    }
    std::vector<Elem> consts;
    for (Elem c : a.constant_values()) {
        std::vector<Elem> diag(n, c);
        consts.push_back(static_cast<Elem>(power_encode(diag, a.size())));
    }
    return Structure(a.name() + "^" + std::to_string(n), a.sig(), static_cast<Elem>(dom),
                     std::move(tables), std::move(consts));
}

SubstructureResult induced_substructure(const Structure& a, const std::vector<Elem>& s_in) {
    std::vector<Elem> s = s_in;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw ValidationError("substructure domain must be nonempty");
    if (s.back() >= a.size()) throw ValidationError("substructure element out of range");
    std::vector<Elem> rename(a.size(), UINT32_MAX);
    for (size_t i = 0; i < s.size(); ++i) rename[s[i]] = static_cast<Elem>(i);
    for (size_t c = 0; c < a.constant_values().size(); ++c)
        if (rename[a.constant_value(static_cast<int>(c))] == UINT32_MAX)
            throw ValidationError("constant " + a.sig().constants()[c] + " outside substructure domain");

    std::vector<RelTable> tables;
    for (size_t r = 0; r < a.sig().relations().size(); ++r) {
        const auto& tab = a.table(static_cast<int>(r));
        std::vector<std::vector<Elem>> kept;
        for (size_t i = 0; i < tab.size(); ++i) {
            const Elem* t = tab.tuple(i);
            bool inside = true;
            for (int j = 0; j < tab.arity() && inside; ++j) inside = rename[t[j]] != UINT32_MAX;
            if (!inside) continue;
            std::vector<Elem> nt(tab.arity());
            for (int j = 0; j < tab.arity(); ++j) nt[j] = rename[t[j]];
            kept.push_back(std::move(nt));
        }
        tables.emplace_back(tab.arity(), std::move(kept));
    }
    std::vector<Elem> consts;
    for (Elem c : a.constant_values()) consts.push_back(rename[c]);
    Structure sub(a.name() + "|S", a.sig(), static_cast<Elem>(s.size()), std::move(tables),
                  std::move(consts));
    return {std::move(sub), std::move(rename)};
}

}  // namespace finrel

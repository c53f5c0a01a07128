#include "finrel/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace finrel {

Formula Formula::conj(std::vector<Formula> fs) {
    if (fs.empty()) return top();
    if (fs.size() == 1) return std::move(fs[0]);
    return {FKind::And, {}, {}, 0, std::move(fs)};
}

Formula Formula::disj(std::vector<Formula> fs) {
    if (fs.empty()) return bot();
    if (fs.size() == 1) return std::move(fs[0]);
    return {FKind::Or, {}, {}, 0, std::move(fs)};
}

size_t node_count(const Formula& f) {
    size_t n = 1;
    for (const auto& s : f.sub) n += node_count(s);
    return n;
}

namespace {

void collect_vars(const Formula& f, std::set<int>& bound, std::set<int>& free, std::set<int>& all) {
    switch (f.kind) {
        case FKind::Top:
        case FKind::Bot:
            return;
        case FKind::Rel:
        case FKind::Eq:
            for (const auto& t : f.args)
                if (!t.is_const) {
                    all.insert(t.var);
                    if (!bound.count(t.var)) free.insert(t.var);
                }
            return;
        case FKind::Not:
        case FKind::And:
        case FKind::Or:
            for (const auto& s : f.sub) collect_vars(s, bound, free, all);
            return;
        case FKind::Exists:
        case FKind::Forall: {
            all.insert(f.qvar);
            bool was = bound.count(f.qvar) > 0;
            bound.insert(f.qvar);
            collect_vars(f.sub[0], bound, free, all);
            if (!was) bound.erase(f.qvar);
            return;
        }
    }
}

}  // namespace

std::set<int> free_vars(const Formula& f) {
    std::set<int> bound, free, all;
    collect_vars(f, bound, free, all);
    return free;
}

std::set<int> all_vars(const Formula& f) {
    std::set<int> bound, free, all;
    collect_vars(f, bound, free, all);
    return all;
}

Formula rename_vars(const Formula& f, const std::vector<int>& var_map) {
    Formula out = f;
    auto map_var = [&](int v) { return v < static_cast<int>(var_map.size()) ? var_map[v] : v; };
    for (auto& t : out.args)
        if (!t.is_const) t.var = map_var(t.var);
    if (out.kind == FKind::Exists || out.kind == FKind::Forall) out.qvar = map_var(out.qvar);
    for (auto& s : out.sub) s = rename_vars(s, var_map);
    return out;
}

// --- fragments ---------------------------------------------------------------

const char* fragment_name(Fragment f) {
    switch (f) {
        case Fragment::QF: return "QF";
        case Fragment::EXIST: return "EXIST";
        case Fragment::POS: return "POS";
        case Fragment::PEX: return "PEX";
        case Fragment::PEX_NEQ: return "PEX_NEQ";
        case Fragment::POS_NEQ: return "POS_NEQ";
        case Fragment::PP: return "PP";
        case Fragment::FO: return "FO";
    }
    return "?";
}

Fragment fragment_from_name(const std::string& s) {
    for (Fragment f : all_fragments())
        if (s == fragment_name(f)) return f;
    // CLI-friendly lowercase aliases
    std::string u;
    for (char c : s) u += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u != s) return fragment_from_name(u);
    throw ValidationError("unknown fragment '" + s + "'");
}

std::vector<Fragment> all_fragments() {
    return {Fragment::QF,      Fragment::EXIST, Fragment::POS, Fragment::PEX,
            Fragment::PEX_NEQ, Fragment::POS_NEQ, Fragment::PP, Fragment::FO};
}

namespace {

struct Traits {
    bool has_quant = false;
    bool has_forall = false;
    bool neg_on_rel = false;      // negation applied directly to a relation atom
    bool neg_on_eq = false;       // negation applied directly to an equality
    bool neg_elsewhere = false;   // negation applied to anything else
};

void scan(const Formula& f, Traits& t) {
    switch (f.kind) {
        case FKind::Top:
        case FKind::Bot:
        case FKind::Rel:
        case FKind::Eq:
            return;
        case FKind::Not: {
            const Formula& c = f.sub[0];
            if (c.kind == FKind::Rel)
                t.neg_on_rel = true;
            else if (c.kind == FKind::Eq)
                t.neg_on_eq = true;
            else
                t.neg_elsewhere = true;
            scan(c, t);
            return;
        }
        case FKind::And:
        case FKind::Or:
            for (const auto& s : f.sub) scan(s, t);
            return;
        case FKind::Exists:
            t.has_quant = true;
            scan(f.sub[0], t);
            return;
        case FKind::Forall:
            t.has_quant = true;
            t.has_forall = true;
            scan(f.sub[0], t);
            return;
    }
}

bool pp_matrix(const Formula& f) {
    switch (f.kind) {
        case FKind::Rel:
        case FKind::Eq:
            return true;
        case FKind::And:
            return std::all_of(f.sub.begin(), f.sub.end(), pp_matrix);
        default:
            return false;
    }
}

bool is_pp(const Formula& f) {
    const Formula* g = &f;
    while (g->kind == FKind::Exists) g = &g->sub[0];
    return pp_matrix(*g);
}

}  // namespace

std::set<Fragment> classify(const Formula& f) {
    Traits t;
    scan(f, t);
    bool any_neg = t.neg_on_rel || t.neg_on_eq || t.neg_elsewhere;
    std::set<Fragment> out;
    out.insert(Fragment::FO);
    if (!t.has_quant) out.insert(Fragment::QF);
    if (!t.has_forall && !t.neg_elsewhere) out.insert(Fragment::EXIST);
    if (!any_neg) out.insert(Fragment::POS);
    if (!any_neg && !t.has_forall) out.insert(Fragment::PEX);
    if (!t.neg_on_rel && !t.neg_elsewhere && !t.has_forall) out.insert(Fragment::PEX_NEQ);
    if (!t.neg_on_rel && !t.neg_elsewhere) out.insert(Fragment::POS_NEQ);
    if (is_pp(f)) out.insert(Fragment::PP);
    return out;
}

bool in_fragment(const Formula& f, Fragment frag) { return classify(f).count(frag) > 0; }

// --- text form -----------------------------------------------------------------

namespace {

struct Tokenizer {
    std::string s;
    size_t i = 0;
    std::string next() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i >= s.size()) return {};
        if (s[i] == '(' || s[i] == ')') return std::string(1, s[i++]);
        size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
               s[i] != ')')
            ++i;
        return s.substr(start, i - start);
    }
};

bool parse_var(const std::string& tok, int& out) {
    if (tok.size() < 2 || tok[0] != 'x') return false;
    for (size_t j = 1; j < tok.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(tok[j]))) return false;
    out = std::stoi(tok.substr(1));
    return true;
}

Term parse_term(const std::string& tok) {
    int v;
    if (parse_var(tok, v)) return Term::V(v);
    if (tok.empty() || tok == "(" || tok == ")") throw ParseError("expected a term");
    return Term::C(tok);
}

Formula parse_expr(Tokenizer& tz) {
    std::string tok = tz.next();
    if (tok.empty()) throw ParseError("unexpected end of formula");
    if (tok == "top") return Formula::top();
    if (tok == "bot") return Formula::bot();
    if (tok != "(") throw ParseError("expected '(' or top/bot, got '" + tok + "'");
    std::string head = tz.next();
    if (head.empty() || head == "(" || head == ")") throw ParseError("expected operator after '('");

    auto parse_children = [&](int min_n) {
        std::vector<Formula> kids;
        while (true) {
            size_t save = tz.i;
            std::string peek = tz.next();
            if (peek == ")") break;
            tz.i = save;
            kids.push_back(parse_expr(tz));
        }
        if (static_cast<int>(kids.size()) < min_n)
            throw ParseError("operator '" + head + "' needs at least " + std::to_string(min_n) +
                             " argument(s)");
        return kids;
    };

    if (head == "and" || head == "or") {
        auto kids = parse_children(1);
        return head == "and" ? Formula{FKind::And, {}, {}, 0, std::move(kids)}
                             : Formula{FKind::Or, {}, {}, 0, std::move(kids)};
    }
    if (head == "not") {
        auto kids = parse_children(1);
        if (kids.size() != 1) throw ParseError("'not' takes exactly one argument");
        return Formula::neg(std::move(kids[0]));
    }
    if (head == "exists" || head == "forall") {
        std::string vtok = tz.next();
        int v;
        if (!parse_var(vtok, v)) throw ParseError("expected variable after '" + head + "'");
        Formula body = parse_expr(tz);
        if (tz.next() != ")") throw ParseError("expected ')' closing '" + head + "'");
        return head == "exists" ? Formula::exists(v, std::move(body))
                                : Formula::forall(v, std::move(body));
    }
    if (head == "=") {
        std::string a = tz.next(), b = tz.next();
        Term ta = parse_term(a), tb = parse_term(b);
        if (tz.next() != ")") throw ParseError("expected ')' closing '='");
        return Formula::eq(std::move(ta), std::move(tb));
    }
    // relation atom
    std::vector<Term> args;
    while (true) {
        std::string a = tz.next();
        if (a == ")") break;
        if (a.empty()) throw ParseError("unexpected end inside atom " + head);
        args.push_back(parse_term(a));
    }
    if (args.empty()) throw ParseError("relation atom '" + head + "' needs arguments");
    return Formula::rel_atom(head, std::move(args));
}

void print_term(std::ostringstream& os, const Term& t) {
    if (t.is_const)
        os << t.const_name;
    else
        os << "x" << t.var;
}

void print_rec(std::ostringstream& os, const Formula& f) {
    switch (f.kind) {
        case FKind::Top: os << "top"; return;
        case FKind::Bot: os << "bot"; return;
        case FKind::Rel:
            os << "(" << f.rel;
            for (const auto& t : f.args) {
                os << " ";
                print_term(os, t);
            }
            os << ")";
            return;
        case FKind::Eq:
            os << "(= ";
            print_term(os, f.args[0]);
            os << " ";
            print_term(os, f.args[1]);
            os << ")";
            return;
        case FKind::Not:
            os << "(not ";
            print_rec(os, f.sub[0]);
            os << ")";
            return;
        case FKind::And:
        case FKind::Or:
            os << (f.kind == FKind::And ? "(and" : "(or");
            for (const auto& s : f.sub) {
                os << " ";
                print_rec(os, s);
            }
            os << ")";
            return;
        case FKind::Exists:
        case FKind::Forall:
            os << (f.kind == FKind::Exists ? "(exists x" : "(forall x") << f.qvar << " ";
            print_rec(os, f.sub[0]);
            os << ")";
            return;
    }
}

}  // namespace

Formula parse_formula(const std::string& text) {
    Tokenizer tz{text};
    Formula f = parse_expr(tz);
    std::string rest = tz.next();
    if (!rest.empty()) throw ParseError("trailing input after formula: '" + rest + "'");
    return f;
}

std::string print_formula(const Formula& f) {
    std::ostringstream os;
    print_rec(os, f);
    return os.str();
}

void validate_against(const Formula& f, const Signature& sig) {
    switch (f.kind) {
        case FKind::Top:
        case FKind::Bot:
            return;
        case FKind::Rel: {
            int r = sig.relation_index(f.rel);
            if (r < 0) throw ValidationError("unknown relation symbol '" + f.rel + "'");
            if (sig.relations()[r].arity != static_cast<int>(f.args.size()))
                throw ValidationError("arity mismatch for relation '" + f.rel + "'");
            for (const auto& t : f.args)
                if (t.is_const && sig.constant_index(t.const_name) < 0)
                    throw ValidationError("unknown constant symbol '" + t.const_name + "'");
            return;
        }
        case FKind::Eq:
            for (const auto& t : f.args)
                if (t.is_const && sig.constant_index(t.const_name) < 0)
                    throw ValidationError("unknown constant symbol '" + t.const_name + "'");
            return;
        default:
            for (const auto& s : f.sub) validate_against(s, sig);
            return;
    }
}

}  // namespace finrel

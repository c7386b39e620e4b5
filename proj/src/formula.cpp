#include "modelth/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "modelth/errors.hpp"

namespace modelth {

Signature Signature::pure_equality() { return Signature{}; }

Signature Signature::membership_only() {
    Signature s;
    s.relations.push_back({"in", 2});
    s.membership = "in";
    return s;
}

Signature Signature::graph() {
    Signature s;
    s.relations.push_back({"E", 2});
    return s;
}

int Signature::relation_arity(const std::string& name) const {
    for (const auto& [n, a] : relations)
        if (n == name) return a;
    if (membership && *membership == name) return 2;
    return -1;
}

int Signature::function_arity(const std::string& name) const {
    for (const auto& [n, a] : functions)
        if (n == name) return a;
    return -1;
}

void Signature::validate() const {
    std::set<std::string> seen;
    auto check = [&](const std::string& n, int a) {
        if (a < 0) throw SpecError("negative arity for symbol '" + n + "'");
        if (!seen.insert(n).second) throw SpecError("duplicate symbol '" + n + "'");
    };
    for (const auto& [n, a] : relations) check(n, a);
    for (const auto& [n, a] : functions) check(n, a);
    if (membership) {
        int a = relation_arity(*membership);
        if (a != 2) throw SpecError("membership symbol '" + *membership + "' must be a binary relation");
        if (function_arity(*membership) >= 0)
            throw SpecError("membership symbol '" + *membership + "' clashes with a function");
    }
}

Formula Formula::atom(std::string rel, std::vector<Term> args) {
    Formula f;
    f.kind = FKind::Atom;
    f.sym = std::move(rel);
    f.terms = std::move(args);
    return f;
}
Formula Formula::equal(Term a, Term b) {
    Formula f;
    f.kind = FKind::Equal;
    f.terms = {std::move(a), std::move(b)};
    return f;
}
Formula Formula::member(Term a, Term b) {
    Formula f;
    f.kind = FKind::Member;
    f.sym = "in"; // display name; parse() overrides it with the flagged symbol
    f.terms = {std::move(a), std::move(b)};
    return f;
}
Formula Formula::lnot(Formula g) {
    Formula f;
    f.kind = FKind::Not;
    f.sub = {std::move(g)};
    return f;
}
static Formula binary(FKind k, Formula a, Formula b) {
    Formula f;
    f.kind = k;
    f.sub = {std::move(a), std::move(b)};
    return f;
}
Formula Formula::land(Formula a, Formula b) { return binary(FKind::And, std::move(a), std::move(b)); }
Formula Formula::lor(Formula a, Formula b) { return binary(FKind::Or, std::move(a), std::move(b)); }
Formula Formula::implies(Formula a, Formula b) { return binary(FKind::Implies, std::move(a), std::move(b)); }
Formula Formula::iff(Formula a, Formula b) { return binary(FKind::Iff, std::move(a), std::move(b)); }
Formula Formula::forall(std::string var, Formula body) {
    Formula f;
    f.kind = FKind::Forall;
    f.sym = std::move(var);
    f.sub = {std::move(body)};
    return f;
}
Formula Formula::exists(std::string var, Formula body) {
    Formula f;
    f.kind = FKind::Exists;
    f.sym = std::move(var);
    f.sub = {std::move(body)};
    return f;
}
Formula Formula::bounded_forall(std::string var, Term bound, Formula body) {
    Formula f;
    f.kind = FKind::BoundedForall;
    f.sym = std::move(var);
    f.terms = {std::move(bound)};
    f.sub = {std::move(body)};
    return f;
}
Formula Formula::bounded_exists(std::string var, Term bound, Formula body) {
    Formula f;
    f.kind = FKind::BoundedExists;
    f.sym = std::move(var);
    f.terms = {std::move(bound)};
    f.sub = {std::move(body)};
    return f;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct SExpr {
    bool is_atom = true;
    std::string atom;
    std::vector<SExpr> items;
    std::size_t offset = 0;
};

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    SExpr read() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
        std::size_t start = pos;
        if (text[pos] == '(') {
            pos++;
            SExpr e;
            e.is_atom = false;
            e.offset = start;
            while (true) {
                skip_ws();
                if (pos >= text.size()) throw ParseError("missing ')'", pos);
                if (text[pos] == ')') {
                    pos++;
                    return e;
                }
                e.items.push_back(read());
            }
        }
        if (text[pos] == ')') throw ParseError("unexpected ')'", pos);
        SExpr e;
        e.offset = start;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
               text[pos] != '(' && text[pos] != ')')
            pos++;
        e.atom = text.substr(start, pos - start);
        return e;
    }
};

// variable identifiers: [a-z][a-z0-9_]*
bool is_identifier(const std::string& s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!(std::islower(static_cast<unsigned char>(c)) ||
              std::isdigit(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    return true;
}

class FormulaReader {
public:
    explicit FormulaReader(const Signature& sig) : sig_(sig) {}

    Formula formula(const SExpr& e) {
        if (e.is_atom) throw ParseError("expected a formula, got atom '" + e.atom + "'", e.offset);
        if (e.items.empty()) throw ParseError("empty form", e.offset);
        const SExpr& head = e.items[0];
        if (!head.is_atom) throw ParseError("form head must be a symbol", head.offset);
        const std::string& h = head.atom;

        auto arity_check = [&](std::size_t n, const char* what) {
            if (e.items.size() != n + 1)
                throw ParseError(std::string("'") + h + "' expects " + std::to_string(n) + " " + what,
                                 e.offset);
        };

        if (h == "and" || h == "or" || h == "->" || h == "iff") {
            arity_check(2, "subformulas");
            FKind k = h == "and" ? FKind::And : h == "or" ? FKind::Or : h == "->" ? FKind::Implies : FKind::Iff;
            return binary(k, formula(e.items[1]), formula(e.items[2]));
        }
        if (h == "not") {
            arity_check(1, "subformula");
            return Formula::lnot(formula(e.items[1]));
        }
        if (h == "forall" || h == "exists") {
            arity_check(2, "arguments");
            std::string v = variable(e.items[1]);
            Formula body = formula(e.items[2]);
            return h == "forall" ? Formula::forall(v, std::move(body)) : Formula::exists(v, std::move(body));
        }
        if (h == "forall-in" || h == "exists-in") {
            arity_check(3, "arguments");
            std::string v = variable(e.items[1]);
            Term bound = term(e.items[2]);
            for (const auto& tv : term_vars(bound))
                if (tv == v)
                    throw ParseError("bound term of '" + h + "' contains its bound variable '" + v + "'",
                                     e.items[2].offset);
            Formula body = formula(e.items[3]);
            return h == "forall-in" ? Formula::bounded_forall(v, std::move(bound), std::move(body))
                                    : Formula::bounded_exists(v, std::move(bound), std::move(body));
        }
        if (h == "=") {
            arity_check(2, "terms");
            return Formula::equal(term(e.items[1]), term(e.items[2]));
        }
        if (sig_.is_membership(h)) {
            arity_check(2, "terms");
            Formula m = Formula::member(term(e.items[1]), term(e.items[2]));
            m.sym = h;
            return m;
        }
        int ra = sig_.relation_arity(h);
        if (ra >= 0) {
            arity_check(static_cast<std::size_t>(ra), "terms");
            std::vector<Term> args;
            for (std::size_t i = 1; i < e.items.size(); i++) args.push_back(term(e.items[i]));
            return Formula::atom(h, std::move(args));
        }
        if (sig_.has_function(h))
            throw ParseError("function symbol '" + h + "' used as a formula head", head.offset);
        throw ParseError("undeclared relation symbol '" + h + "'", head.offset);
    }

    Term term(const SExpr& e) {
        if (e.is_atom) {
            if (!is_identifier(e.atom)) throw ParseError("bad identifier '" + e.atom + "'", e.offset);
            if (sig_.has_relation(e.atom) || sig_.has_function(e.atom))
                throw ParseError("symbol '" + e.atom + "' cannot be used as a variable", e.offset);
            return Term::var(e.atom);
        }
        if (e.items.empty()) throw ParseError("empty term", e.offset);
        const SExpr& head = e.items[0];
        if (!head.is_atom) throw ParseError("term head must be a symbol", head.offset);
        int fa = sig_.function_arity(head.atom);
        if (fa < 0) throw ParseError("undeclared function symbol '" + head.atom + "'", head.offset);
        if (e.items.size() != static_cast<std::size_t>(fa) + 1)
            throw ParseError("arity mismatch for function '" + head.atom + "': expected " +
                                 std::to_string(fa) + " arguments",
                             e.offset);
        std::vector<Term> args;
        for (std::size_t i = 1; i < e.items.size(); i++) args.push_back(term(e.items[i]));
        return Term::app(head.atom, std::move(args));
    }

    std::string variable(const SExpr& e) {
        if (!e.is_atom) throw ParseError("expected a variable", e.offset);
        if (!is_identifier(e.atom)) throw ParseError("bad variable '" + e.atom + "'", e.offset);
        if (sig_.has_relation(e.atom) || sig_.has_function(e.atom))
            throw ParseError("symbol '" + e.atom + "' cannot be bound as a variable", e.offset);
        return e.atom;
    }

private:
    const Signature& sig_;
};

} // namespace

Formula parse(const std::string& text, const Signature& sig) {
    Lexer lex{text};
    SExpr e = lex.read();
    if (!lex.at_end()) throw ParseError("trailing input after formula", lex.pos);
    FormulaReader r(sig);
    Formula f = r.formula(e);
    validate(f, sig);
    return f;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

std::string print(const Term& t) {
    if (t.kind == TermKind::Variable) return t.name;
    std::string out = "(" + t.name;
    for (const auto& a : t.args) out += " " + print(a);
    out += ")";
    return out;
}

std::string print(const Formula& f) {
    switch (f.kind) {
    case FKind::Atom: {
        std::string out = "(" + f.sym;
        for (const auto& t : f.terms) out += " " + print(t);
        out += ")";
        return out;
    }
    case FKind::Equal:
        return "(= " + print(f.terms[0]) + " " + print(f.terms[1]) + ")";
    case FKind::Member:
        return "(" + (f.sym.empty() ? std::string("in") : f.sym) + " " + print(f.terms[0]) + " " +
               print(f.terms[1]) + ")";
    case FKind::Not:
        return "(not " + print(f.sub[0]) + ")";
    case FKind::And:
        return "(and " + print(f.sub[0]) + " " + print(f.sub[1]) + ")";
    case FKind::Or:
        return "(or " + print(f.sub[0]) + " " + print(f.sub[1]) + ")";
    case FKind::Implies:
        return "(-> " + print(f.sub[0]) + " " + print(f.sub[1]) + ")";
    case FKind::Iff:
        return "(iff " + print(f.sub[0]) + " " + print(f.sub[1]) + ")";
    case FKind::Forall:
        return "(forall " + f.sym + " " + print(f.sub[0]) + ")";
    case FKind::Exists:
        return "(exists " + f.sym + " " + print(f.sub[0]) + ")";
    case FKind::BoundedForall:
        return "(forall-in " + f.sym + " " + print(f.terms[0]) + " " + print(f.sub[0]) + ")";
    case FKind::BoundedExists:
        return "(exists-in " + f.sym + " " + print(f.terms[0]) + " " + print(f.sub[0]) + ")";
    }
    throw SpecError("unreachable formula kind");
}

// ---------------------------------------------------------------------------
// Variables
// ---------------------------------------------------------------------------

static void term_vars_into(const Term& t, std::vector<std::string>& out) {
    if (t.kind == TermKind::Variable) {
        if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
        return;
    }
    for (const auto& a : t.args) term_vars_into(a, out);
}

std::vector<std::string> term_vars(const Term& t) {
    std::vector<std::string> out;
    term_vars_into(t, out);
    return out;
}

static void free_vars_into(const Formula& f, std::vector<std::string>& bound,
                           std::vector<std::string>& out) {
    auto add_term = [&](const Term& t) {
        for (const auto& v : term_vars(t))
            if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
                std::find(out.begin(), out.end(), v) == out.end())
                out.push_back(v);
    };
    switch (f.kind) {
    case FKind::Atom:
    case FKind::Equal:
    case FKind::Member:
        for (const auto& t : f.terms) add_term(t);
        return;
    case FKind::Not:
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
        for (const auto& s : f.sub) free_vars_into(s, bound, out);
        return;
    case FKind::Forall:
    case FKind::Exists:
        bound.push_back(f.sym);
        free_vars_into(f.sub[0], bound, out);
        bound.pop_back();
        return;
    case FKind::BoundedForall:
    case FKind::BoundedExists:
        add_term(f.terms[0]);
        bound.push_back(f.sym);
        free_vars_into(f.sub[0], bound, out);
        bound.pop_back();
        return;
    }
}

std::vector<std::string> free_vars(const Formula& f) {
    std::vector<std::string> bound, out;
    free_vars_into(f, bound, out);
    return out;
}

static void all_vars_into(const Formula& f, std::vector<std::string>& out) {
    auto add = [&](const std::string& v) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    for (const auto& t : f.terms)
        for (const auto& v : term_vars(t)) add(v);
    if (f.is_quantifier() || f.is_bounded_quantifier()) add(f.sym);
    for (const auto& s : f.sub) all_vars_into(s, out);
}

std::vector<std::string> all_vars(const Formula& f) {
    std::vector<std::string> out;
    all_vars_into(f, out);
    return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

static void validate_term(const Term& t, const Signature& sig) {
    if (t.kind == TermKind::Variable) {
        if (!t.args.empty()) throw SpecError("variable with arguments");
        return;
    }
    int fa = sig.function_arity(t.name);
    if (fa < 0) throw SpecError("undeclared function symbol '" + t.name + "'");
    if (static_cast<int>(t.args.size()) != fa)
        throw SpecError("arity mismatch for function '" + t.name + "'");
    for (const auto& a : t.args) validate_term(a, sig);
}

void validate(const Formula& f, const Signature& sig) {
    switch (f.kind) {
    case FKind::Atom: {
        int ra = sig.relation_arity(f.sym);
        if (ra < 0) throw SpecError("undeclared relation symbol '" + f.sym + "'");
        if (static_cast<int>(f.terms.size()) != ra)
            throw SpecError("arity mismatch for relation '" + f.sym + "'");
        for (const auto& t : f.terms) validate_term(t, sig);
        return;
    }
    case FKind::Equal:
        if (f.terms.size() != 2) throw SpecError("equality needs two terms");
        for (const auto& t : f.terms) validate_term(t, sig);
        return;
    case FKind::Member:
        if (!sig.membership) throw SpecError("membership atom in a signature without membership symbol");
        if (f.terms.size() != 2) throw SpecError("membership needs two terms");
        for (const auto& t : f.terms) validate_term(t, sig);
        return;
    case FKind::Not:
        if (f.sub.size() != 1) throw SpecError("negation needs one subformula");
        validate(f.sub[0], sig);
        return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
        if (f.sub.size() != 2) throw SpecError("binary connective needs two subformulas");
        validate(f.sub[0], sig);
        validate(f.sub[1], sig);
        return;
    case FKind::Forall:
    case FKind::Exists:
        if (f.sub.size() != 1 || f.sym.empty()) throw SpecError("malformed quantifier");
        validate(f.sub[0], sig);
        return;
    case FKind::BoundedForall:
    case FKind::BoundedExists: {
        if (f.sub.size() != 1 || f.terms.size() != 1 || f.sym.empty())
            throw SpecError("malformed bounded quantifier");
        validate_term(f.terms[0], sig);
        for (const auto& v : term_vars(f.terms[0]))
            if (v == f.sym)
                throw SpecError("bound term contains its bound variable '" + f.sym + "'");
        validate(f.sub[0], sig);
        return;
    }
    }
}

// ---------------------------------------------------------------------------
// Substitution and renaming
// ---------------------------------------------------------------------------

Term subst(const Term& in, const std::string& v, const Term& t) {
    if (in.kind == TermKind::Variable) return in.name == v ? t : in;
    Term out = in;
    for (auto& a : out.args) a = subst(a, v, t);
    return out;
}

static std::string fresh_name(const std::vector<std::string>& avoid) {
    for (int i = 0;; i++) {
        std::string cand = "v" + std::to_string(i);
        if (std::find(avoid.begin(), avoid.end(), cand) == avoid.end()) return cand;
    }
}

Formula subst(const Formula& f, const std::string& v, const Term& t) {
    switch (f.kind) {
    case FKind::Atom:
    case FKind::Equal:
    case FKind::Member: {
        Formula out = f;
        for (auto& tm : out.terms) tm = subst(tm, v, t);
        return out;
    }
    case FKind::Not:
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff: {
        Formula out = f;
        for (auto& s : out.sub) s = subst(s, v, t);
        return out;
    }
    case FKind::Forall:
    case FKind::Exists:
    case FKind::BoundedForall:
    case FKind::BoundedExists: {
        Formula out = f;
        if (f.is_bounded_quantifier()) out.terms[0] = subst(f.terms[0], v, t);
        if (f.sym == v) return out; // v is shadowed in the body
        auto inserted = term_vars(t);
        if (std::find(inserted.begin(), inserted.end(), f.sym) != inserted.end()) {
            // the quantifier would capture a variable of t: rename it first
            std::vector<std::string> avoid = all_vars(f);
            avoid.insert(avoid.end(), inserted.begin(), inserted.end());
            avoid.push_back(v);
            std::string nv = fresh_name(avoid);
            out.sym = nv;
            out.sub[0] = subst(f.sub[0], f.sym, Term::var(nv));
        }
        out.sub[0] = subst(out.sub[0], v, t);
        return out;
    }
    }
    throw SpecError("unreachable");
}

namespace {

struct Renamer {
    std::vector<std::string> taken; // every name that may not be reused for a binder
    std::vector<std::pair<std::string, std::string>> scope;

    std::string lookup(const std::string& v) const {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
            if (it->first == v) return it->second;
        return v;
    }

    Term rename(const Term& t) const {
        if (t.kind == TermKind::Variable) return Term::var(lookup(t.name));
        Term out = t;
        for (auto& a : out.args) a = rename(a);
        return out;
    }

    Formula rename(const Formula& f) {
        switch (f.kind) {
        case FKind::Atom:
        case FKind::Equal:
        case FKind::Member: {
            Formula out = f;
            for (auto& tm : out.terms) tm = rename(tm);
            return out;
        }
        case FKind::Not:
        case FKind::And:
        case FKind::Or:
        case FKind::Implies:
        case FKind::Iff: {
            Formula out = f;
            for (auto& s : out.sub) s = rename(s);
            return out;
        }
        default: {
            Formula out = f;
            if (f.is_bounded_quantifier()) out.terms[0] = rename(f.terms[0]);
            std::string name = f.sym;
            if (std::find(taken.begin(), taken.end(), name) != taken.end())
                name = fresh_name(taken);
            taken.push_back(name);
            out.sym = name;
            scope.push_back({f.sym, name});
            out.sub[0] = rename(f.sub[0]);
            scope.pop_back();
            return out;
        }
        }
    }
};

} // namespace

Formula normalize_bound(const Formula& f) {
    Renamer r;
    r.taken = free_vars(f);
    return r.rename(f);
}

int node_count(const Term& t) {
    int n = 1;
    for (const auto& a : t.args) n += node_count(a);
    return n;
}

int node_count(const Formula& f) {
    int n = 1;
    for (const auto& t : f.terms) n += node_count(t);
    for (const auto& s : f.sub) n += node_count(s);
    return n;
}

} // namespace modelth

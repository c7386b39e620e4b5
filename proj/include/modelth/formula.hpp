#ifndef MODELTH_FORMULA_HPP
#define MODELTH_FORMULA_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace modelth {

/// Symbol table for a first-order signature. Constants are 0-ary functions.
/// At most one binary relation may be flagged as the membership symbol; it is
/// implicitly declared as a binary relation if not listed explicitly.
struct Signature {
    std::vector<std::pair<std::string, int>> relations;
    std::vector<std::pair<std::string, int>> functions;
    std::optional<std::string> membership;

    static Signature pure_equality();
    /// {in} with "in" flagged as membership.
    static Signature membership_only();
    /// One binary relation E (simple-graph style signatures).
    static Signature graph();

    bool has_relation(const std::string& name) const { return relation_arity(name) >= 0; }
    bool has_function(const std::string& name) const { return function_arity(name) >= 0; }
    int relation_arity(const std::string& name) const;
    int function_arity(const std::string& name) const;
    bool is_membership(const std::string& name) const { return membership && *membership == name; }

    /// Enforces unique names, non-negative arities, membership flagged at most once
    /// and binary. Throws SpecError.
    void validate() const;

    bool operator==(const Signature&) const = default;
};

enum class TermKind { Variable, App };

struct Term {
    TermKind kind = TermKind::Variable;
    std::string name;
    std::vector<Term> args; // empty for variables; 0-ary apps are constants

    static Term var(std::string n) { return Term{TermKind::Variable, std::move(n), {}}; }
    static Term app(std::string n, std::vector<Term> a = {}) {
        return Term{TermKind::App, std::move(n), std::move(a)};
    }
    bool operator==(const Term&) const = default;
};

enum class FKind {
    Atom,
    Equal,
    Member,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Forall,
    Exists,
    BoundedForall,
    BoundedExists,
};

/// Formula AST. Bounded quantifiers are first-class nodes: (forall-in w t body)
/// keeps its bound term in terms[0] so that Delta0 detection stays syntactic.
struct Formula {
    FKind kind = FKind::Atom;
    std::string sym;            // Atom: relation name; quantifiers: bound variable
    std::vector<Term> terms;    // Atom args; Equal/Member: both sides; bounded qf: bound term
    std::vector<Formula> sub;   // subformulas

    static Formula atom(std::string rel, std::vector<Term> args);
    static Formula equal(Term a, Term b);
    static Formula member(Term a, Term b);
    static Formula lnot(Formula f);
    static Formula land(Formula a, Formula b);
    static Formula lor(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula iff(Formula a, Formula b);
    static Formula forall(std::string var, Formula body);
    static Formula exists(std::string var, Formula body);
    static Formula bounded_forall(std::string var, Term bound, Formula body);
    static Formula bounded_exists(std::string var, Term bound, Formula body);

    bool is_quantifier() const { return kind == FKind::Forall || kind == FKind::Exists; }
    bool is_bounded_quantifier() const {
        return kind == FKind::BoundedForall || kind == FKind::BoundedExists;
    }

    bool operator==(const Formula&) const = default;
};

/// Parses the S-expression concrete syntax. All symbols must be declared in `sig`.
Formula parse(const std::string& text, const Signature& sig);

/// Canonical concrete syntax; parse(print(f), sig) == f for valid f.
std::string print(const Formula& f);
std::string print(const Term& t);

/// Free variables in first-occurrence order.
std::vector<std::string> free_vars(const Formula& f);
std::vector<std::string> term_vars(const Term& t);

/// All variable names occurring (free or bound).
std::vector<std::string> all_vars(const Formula& f);

/// Checks Formula invariants against a signature: declared symbols, matching
/// arities, bound terms not containing their bound variable. Throws SpecError.
void validate(const Formula& f, const Signature& sig);

/// Capture-avoiding substitution of `t` for free occurrences of variable `v`.
Formula subst(const Formula& f, const std::string& v, const Term& t);
Term subst(const Term& in, const std::string& v, const Term& t);

/// Renames bound variables so they are pairwise distinct and disjoint from free
/// variables (fresh names v0, v1, ... only where a clash forces it).
Formula normalize_bound(const Formula& f);

/// Number of AST nodes (formula nodes plus term nodes).
int node_count(const Formula& f);
int node_count(const Term& t);

} // namespace modelth

#endif

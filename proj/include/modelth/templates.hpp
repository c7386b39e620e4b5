#ifndef MODELTH_TEMPLATES_HPP
#define MODELTH_TEMPLATES_HPP

#include <functional>
#include <string>
#include <vector>

#include "modelth/structure.hpp"

namespace modelth {

/// Literal over template variables 0..nvars-1. rel == -1 means equality
/// (vars.size() == 2, vars[0] <= vars[1]); otherwise rel indexes rel_names.
struct TLiteral {
    bool positive = true;
    int rel = -1;
    std::vector<int> vars;
};

/// Quantifier template: free variables 0..free_arity-1 are parameter slots,
/// then block1 quantified variables, then block2. The matrix is a conjunction
/// or a disjunction (clause) of literals.
struct QTemplate {
    int free_arity = 0;
    int block1 = 0;
    bool block1_universal = false;
    int block2 = 0;
    bool block2_universal = false;
    bool conj_matrix = true;
    std::vector<TLiteral> lits;

    int total_vars() const { return free_arity + block1 + block2; }
};

/// Relation symbols of a signature in declaration order (the membership symbol
/// is appended if flagged but not listed).
std::vector<std::pair<std::string, int>> template_relations(const Signature& sig);

/// Literal universe for nvars variables: equality literals first ((i,j) with
/// i <= j, lexicographic, positive before negative), then relation atoms in
/// symbol order and argument-tuple order, positive before negative.
std::vector<TLiteral> literal_universe(const Signature& sig, int nvars);

struct TemplateEnumConfig {
    int max_literals = 4;
    bool require_all_vars_used = true;
    long long cap = 2'000'000;
};

/// Streams all matrices (literal subsets of size 1..max_literals in
/// (size, lexicographic) order) for a fixed quantifier shape. Throws GuardError
/// when the cap is hit. Returns the number of templates emitted.
long long enumerate_templates(const Signature& sig, int free_arity, int block1, bool block1_universal,
                              int block2, bool block2_universal, bool conj_matrix,
                              const TemplateEnumConfig& cfg,
                              const std::function<void(const QTemplate&)>& emit);

/// Evaluates a template at the given parameter tuple (params has free_arity
/// entries). Quantifiers range over the whole domain.
bool eval_template(const FinStructure& m, const QTemplate& t, const std::vector<int>& params);

/// Resolves relation tables once so literal checks are direct array reads;
/// use this for bulk template evaluation over one structure.
class TemplateEvaluator {
public:
    explicit TemplateEvaluator(const FinStructure& m);
    bool eval(const QTemplate& t, const std::vector<int>& params) const;

private:
    bool literal(const TLiteral& lit, const int* env) const;
    bool matrix(const QTemplate& t, const int* env) const;
    bool block(const QTemplate& t, int* env, int pos) const;

    const FinStructure* m_;
    std::vector<const RelTable*> tables_;
};

/// Variable names from the pool x, y, z, w, u, v (parameters first, quantified
/// variables continue with the next unused names); custom parameter names may
/// be supplied.
std::vector<std::string> template_var_names(const QTemplate& t,
                                            const std::vector<std::string>& param_names = {});

/// Renders the template as a Formula over the signature.
Formula template_formula(const Signature& sig, const QTemplate& t,
                         const std::vector<std::string>& param_names = {});

/// True when the matrix contains a literal and its negation, or a reflexive
/// equality literal (either sign); such matrices are degenerate for search.
bool degenerate_matrix(const QTemplate& t);

} // namespace modelth

#endif

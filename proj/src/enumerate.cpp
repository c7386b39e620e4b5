#include "modelth/enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "modelth/errors.hpp"
#include "modelth/levy.hpp"
#include "modelth/templates.hpp"

namespace modelth {

namespace {

// ground instance of a universal axiom: evaluable as soon as its last relation
// cell is decided
struct GroundInstance {
    const Formula* matrix;
    Assignment env;
    int last_decision; // global decision index of the latest referenced cell
};

struct Prefix {
    std::vector<std::string> vars;
    const Formula* matrix;
};

// splits a prenexed axiom into an all-universal prefix and a matrix usable for
// pruning: quantifier-free, no bounded quantifiers, no function terms
bool pruning_shape(const Formula& prenexed, Prefix& out) {
    const Formula* cur = &prenexed;
    out.vars.clear();
    while (cur->kind == FKind::Forall) {
        out.vars.push_back(cur->sym);
        cur = &cur->sub[0];
    }
    auto clean = [&](auto&& self, const Formula& g) -> bool {
        if (g.is_quantifier() || g.is_bounded_quantifier()) return false;
        for (const auto& t : g.terms)
            if (t.kind == TermKind::App) return false;
        for (const auto& s : g.sub)
            if (!self(self, s)) return false;
        return true;
    };
    if (!clean(clean, *cur)) return false;
    out.matrix = cur;
    return true;
}

void collect_cells(const Formula& matrix, const Assignment& env, const FinStructure& shape,
                   const std::vector<std::pair<std::string, int>>& rels,
                   const std::map<std::string, int>& rel_base, std::vector<int>& cells) {
    switch (matrix.kind) {
    case FKind::Atom:
    case FKind::Member: {
        std::string name = matrix.kind == FKind::Member ? *shape.sig.membership : matrix.sym;
        std::vector<int> tup;
        for (const auto& t : matrix.terms) tup.push_back(lookup(env, t.name));
        cells.push_back(rel_base.at(name) + shape.tuple_index(tup));
        return;
    }
    case FKind::Equal:
        return;
    default:
        for (const auto& s : matrix.sub) collect_cells(s, env, shape, rels, rel_base, cells);
    }
}

bool eval_ground(const Formula& matrix, const Assignment& env, const FinStructure& m) {
    switch (matrix.kind) {
    case FKind::Atom: {
        std::vector<int> tup;
        for (const auto& t : matrix.terms) tup.push_back(lookup(env, t.name));
        return m.rel_holds(matrix.sym, tup);
    }
    case FKind::Member: {
        std::vector<int> tup;
        for (const auto& t : matrix.terms) tup.push_back(lookup(env, t.name));
        return m.rel_holds(*m.sig.membership, tup);
    }
    case FKind::Equal:
        return lookup(env, matrix.terms[0].name) == lookup(env, matrix.terms[1].name);
    case FKind::Not:
        return !eval_ground(matrix.sub[0], env, m);
    case FKind::And:
        return eval_ground(matrix.sub[0], env, m) && eval_ground(matrix.sub[1], env, m);
    case FKind::Or:
        return eval_ground(matrix.sub[0], env, m) || eval_ground(matrix.sub[1], env, m);
    case FKind::Implies:
        return !eval_ground(matrix.sub[0], env, m) || eval_ground(matrix.sub[1], env, m);
    case FKind::Iff:
        return eval_ground(matrix.sub[0], env, m) == eval_ground(matrix.sub[1], env, m);
    default:
        throw SpecError("non-ground matrix");
    }
}

} // namespace

std::vector<FinStructure> enumerate_structures(const Signature& sig, int max_size,
                                               const std::vector<Formula>& axioms,
                                               const EnumConfig& cfg) {
    sig.validate();
    for (const auto& f : axioms) {
        validate(f, sig);
        if (!free_vars(f).empty()) throw SpecError("axioms must be sentences");
    }
    bool has_real_functions = std::any_of(sig.functions.begin(), sig.functions.end(),
                                          [](const auto& p) { return p.second >= 1; });
    if (has_real_functions && max_size > 5)
        throw GuardError("function symbols of arity >= 1 are rejected above size 5");

    std::vector<FinStructure> out;
    long long leaves = 0;

    for (int n = 1; n <= max_size; n++) {
        FinStructure shape = FinStructure::empty(sig, n);
        auto rels = template_relations(sig);

        // global decision indexing: relation cells first (signature order), then
        // function cells
        std::map<std::string, int> rel_base;
        int ndecisions = 0;
        for (const auto& [name, arity] : rels) {
            rel_base[name] = ndecisions;
            ndecisions += shape.pow_size(arity);
        }
        int first_func_decision = ndecisions;
        std::map<std::string, int> func_base;
        for (const auto& [name, arity] : sig.functions) {
            func_base[name] = ndecisions;
            ndecisions += shape.pow_size(arity);
        }

        // split axioms into pruning instances and leaf checks; instances whose
        // matrices mention function terms cannot prune
        std::vector<Formula> prenexed;
        std::vector<const Formula*> leaf_axioms;
        std::vector<std::vector<GroundInstance>> buckets(ndecisions);
        std::vector<GroundInstance> immediate; // no cells referenced at all
        for (const auto& ax : axioms) prenexed.push_back(to_prenex(ax));
        for (std::size_t i = 0; i < prenexed.size(); i++) {
            Prefix pre;
            if (!pruning_shape(prenexed[i], pre)) {
                leaf_axioms.push_back(&axioms[i]);
                continue;
            }
            // enumerate ground instances over the prefix variables
            Assignment env;
            for (const auto& v : pre.vars) env.push_back({v, 0});
            long long count = 1;
            for (std::size_t k = 0; k < pre.vars.size(); k++) count *= n;
            for (long long code = 0; code < count; code++) {
                long long rem = code;
                for (int k = static_cast<int>(pre.vars.size()) - 1; k >= 0; k--) {
                    env[k].second = static_cast<int>(rem % n);
                    rem /= n;
                }
                std::vector<int> cells;
                collect_cells(*pre.matrix, env, shape, rels, rel_base, cells);
                GroundInstance gi{pre.matrix, env, -1};
                for (int c : cells) gi.last_decision = std::max(gi.last_decision, c);
                if (gi.last_decision < 0)
                    immediate.push_back(std::move(gi));
                else
                    buckets[gi.last_decision].push_back(std::move(gi));
            }
        }

        FinStructure cur = shape;
        for (const auto& gi : immediate)
            if (!eval_ground(*gi.matrix, gi.env, cur)) goto next_size;

        {
            std::map<std::vector<int>, FinStructure> canon;
            auto decide = [&](auto&& self, int d) -> void {
                if (d == ndecisions) {
                    if (++leaves > cfg.leaf_cap) throw GuardError("enumeration cost guard exceeded");
                    for (const Formula* ax : leaf_axioms)
                        if (!satisfies(cur, *ax)) return;
                    FinStructure c = cur.canonical_form();
                    canon.emplace(c.encoding(), std::move(c));
                    return;
                }
                auto check_bucket = [&]() {
                    for (const auto& gi : buckets[d])
                        if (!eval_ground(*gi.matrix, gi.env, cur)) return false;
                    return true;
                };
                if (d < first_func_decision) {
                    // locate the relation cell for this decision index
                    for (const auto& [name, arity] : rels) {
                        int base = rel_base[name];
                        int span = shape.pow_size(arity);
                        if (d < base || d >= base + span) continue;
                        for (int bit = 0; bit <= 1; bit++) {
                            cur.relations[name].cells[d - base] = static_cast<std::uint8_t>(bit);
                            if (check_bucket()) self(self, d + 1);
                        }
                        cur.relations[name].cells[d - base] = 0;
                        return;
                    }
                } else {
                    for (const auto& [name, arity] : sig.functions) {
                        int base = func_base[name];
                        int span = shape.pow_size(arity);
                        if (d < base || d >= base + span) continue;
                        for (int v = 0; v < n; v++) {
                            cur.functions[name].cells[d - base] = v;
                            if (check_bucket()) self(self, d + 1);
                        }
                        cur.functions[name].cells[d - base] = 0;
                        return;
                    }
                }
            };
            decide(decide, 0);
            for (auto& [enc, st] : canon) out.push_back(std::move(st));
        }
    next_size:;
    }
    return out;
}

} // namespace modelth

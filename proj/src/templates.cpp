#include "modelth/templates.hpp"

#include <algorithm>

#include "modelth/errors.hpp"

namespace modelth {

std::vector<std::pair<std::string, int>> template_relations(const Signature& sig) {
    auto rels = sig.relations;
    if (sig.membership) {
        bool listed = false;
        for (const auto& [n, a] : rels)
            if (n == *sig.membership) listed = true;
        if (!listed) rels.push_back({*sig.membership, 2});
    }
    return rels;
}

std::vector<TLiteral> literal_universe(const Signature& sig, int nvars) {
    std::vector<TLiteral> out;
    for (int i = 0; i < nvars; i++)
        for (int j = i; j < nvars; j++) {
            out.push_back(TLiteral{true, -1, {i, j}});
            out.push_back(TLiteral{false, -1, {i, j}});
        }
    auto rels = template_relations(sig);
    for (int r = 0; r < static_cast<int>(rels.size()); r++) {
        int arity = rels[r].second;
        long long tuples = 1;
        for (int i = 0; i < arity; i++) tuples *= nvars;
        for (long long idx = 0; idx < tuples; idx++) {
            std::vector<int> vars(arity);
            long long rem = idx;
            for (int i = arity - 1; i >= 0; i--) {
                vars[i] = static_cast<int>(rem % nvars);
                rem /= nvars;
            }
            out.push_back(TLiteral{true, r, vars});
            out.push_back(TLiteral{false, r, vars});
        }
    }
    return out;
}

long long enumerate_templates(const Signature& sig, int free_arity, int block1, bool block1_universal,
                              int block2, bool block2_universal, bool conj_matrix,
                              const TemplateEnumConfig& cfg,
                              const std::function<void(const QTemplate&)>& emit) {
    const int nvars = free_arity + block1 + block2;
    if (nvars == 0) return 0;
    std::vector<TLiteral> universe = literal_universe(sig, nvars);
    const int u = static_cast<int>(universe.size());
    long long emitted = 0;

    QTemplate t;
    t.free_arity = free_arity;
    t.block1 = block1;
    t.block1_universal = block1_universal;
    t.block2 = block2;
    t.block2_universal = block2_universal;
    t.conj_matrix = conj_matrix;

    std::vector<int> combo;
    auto vars_used_ok = [&]() {
        if (!cfg.require_all_vars_used) return true;
        std::vector<char> used(nvars, 0);
        for (int idx : combo)
            for (int v : universe[idx].vars) used[v] = 1;
        return std::all_of(used.begin(), used.end(), [](char c) { return c != 0; });
    };
    // enumerate matrices in (size, lexicographic) tiers
    for (int sz = 1; sz <= cfg.max_literals; sz++) {
        std::vector<int> idx(sz);
        auto tier = [&](auto&& self, int pos, int start) -> void {
            if (pos == sz) {
                combo.assign(idx.begin(), idx.end());
                if (vars_used_ok()) {
                    if (emitted >= cfg.cap) throw GuardError("template cap exceeded");
                    t.lits.clear();
                    for (int k : combo) t.lits.push_back(universe[k]);
                    emit(t);
                    emitted++;
                }
                return;
            }
            for (int i = start; i <= u - (sz - pos); i++) {
                idx[pos] = i;
                self(self, pos + 1, i + 1);
            }
        };
        tier(tier, 0, 0);
    }
    return emitted;
}

namespace {

bool eval_literal(const FinStructure& m, const TLiteral& lit,
                  const std::vector<std::pair<std::string, int>>& rels, const std::vector<int>& env) {
    bool v;
    if (lit.rel < 0) {
        v = env[lit.vars[0]] == env[lit.vars[1]];
    } else {
        std::vector<int> t(lit.vars.size());
        for (std::size_t i = 0; i < lit.vars.size(); i++) t[i] = env[lit.vars[i]];
        v = m.rel_holds(rels[lit.rel].first, t);
    }
    return lit.positive ? v : !v;
}

bool eval_matrix(const FinStructure& m, const QTemplate& t,
                 const std::vector<std::pair<std::string, int>>& rels, const std::vector<int>& env) {
    if (t.conj_matrix) {
        for (const auto& lit : t.lits)
            if (!eval_literal(m, lit, rels, env)) return false;
        return true;
    }
    for (const auto& lit : t.lits)
        if (eval_literal(m, lit, rels, env)) return true;
    return false;
}

bool eval_block(const FinStructure& m, const QTemplate& t,
                const std::vector<std::pair<std::string, int>>& rels, std::vector<int>& env, int pos) {
    const int b1end = t.free_arity + t.block1;
    const int total = t.total_vars();
    if (pos == total) return eval_matrix(m, t, rels, env);
    bool universal = pos < b1end ? t.block1_universal : t.block2_universal;
    for (int e = 0; e < m.size; e++) {
        env[pos] = e;
        bool v = eval_block(m, t, rels, env, pos + 1);
        if (universal && !v) return false;
        if (!universal && v) return true;
    }
    return universal;
}

} // namespace

bool eval_template(const FinStructure& m, const QTemplate& t, const std::vector<int>& params) {
    if (static_cast<int>(params.size()) != t.free_arity)
        throw SpecError("template parameter count mismatch");
    auto rels = template_relations(m.sig);
    std::vector<int> env(t.total_vars(), 0);
    std::copy(params.begin(), params.end(), env.begin());
    return eval_block(m, t, rels, env, t.free_arity);
}

TemplateEvaluator::TemplateEvaluator(const FinStructure& m) : m_(&m) {
    for (const auto& [name, arity] : template_relations(m.sig))
        tables_.push_back(&m.relations.at(name));
}

bool TemplateEvaluator::literal(const TLiteral& lit, const int* env) const {
    bool v;
    if (lit.rel < 0) {
        v = env[lit.vars[0]] == env[lit.vars[1]];
    } else {
        const RelTable& table = *tables_[lit.rel];
        int idx = 0;
        for (int var : lit.vars) idx = idx * m_->size + env[var];
        v = table.cells[idx] != 0;
    }
    return lit.positive ? v : !v;
}

bool TemplateEvaluator::matrix(const QTemplate& t, const int* env) const {
    if (t.conj_matrix) {
        for (const auto& lit : t.lits)
            if (!literal(lit, env)) return false;
        return true;
    }
    for (const auto& lit : t.lits)
        if (literal(lit, env)) return true;
    return false;
}

bool TemplateEvaluator::block(const QTemplate& t, int* env, int pos) const {
    const int b1end = t.free_arity + t.block1;
    if (pos == t.total_vars()) return matrix(t, env);
    bool universal = pos < b1end ? t.block1_universal : t.block2_universal;
    for (int e = 0; e < m_->size; e++) {
        env[pos] = e;
        bool v = block(t, env, pos + 1);
        if (universal && !v) return false;
        if (!universal && v) return true;
    }
    return universal;
}

bool TemplateEvaluator::eval(const QTemplate& t, const std::vector<int>& params) const {
    if (static_cast<int>(params.size()) != t.free_arity)
        throw SpecError("template parameter count mismatch");
    int env[16];
    if (t.total_vars() > 16) throw GuardError("template variable count exceeds the evaluator limit");
    for (int i = 0; i < t.free_arity; i++) env[i] = params[i];
    return block(t, env, t.free_arity);
}

bool degenerate_matrix(const QTemplate& t) {
    for (std::size_t i = 0; i < t.lits.size(); i++) {
        const TLiteral& a = t.lits[i];
        if (a.rel == -1 && a.vars[0] == a.vars[1]) return true;
        for (std::size_t j = i + 1; j < t.lits.size(); j++) {
            const TLiteral& b = t.lits[j];
            if (a.rel == b.rel && a.vars == b.vars && a.positive != b.positive) return true;
        }
    }
    return false;
}

std::vector<std::string> template_var_names(const QTemplate& t,
                                            const std::vector<std::string>& param_names) {
    static const char* pool[] = {"x", "y", "z", "w", "u", "v"};
    std::vector<std::string> names;
    for (int i = 0; i < t.free_arity; i++) {
        if (i < static_cast<int>(param_names.size()))
            names.push_back(param_names[i]);
        else
            names.push_back(i < 6 ? pool[i] : "x" + std::to_string(i));
    }
    // quantified variables take the next short names not already used
    int pi = 0;
    for (int i = 0; i < t.block1 + t.block2; i++) {
        std::string cand;
        while (true) {
            cand = pi < 6 ? pool[pi] : "v" + std::to_string(pi - 6);
            pi++;
            if (std::find(names.begin(), names.end(), cand) == names.end()) break;
        }
        names.push_back(cand);
    }
    return names;
}

Formula template_formula(const Signature& sig, const QTemplate& t,
                          const std::vector<std::string>& param_names) {
    auto rels = template_relations(sig);
    std::vector<std::string> names = template_var_names(t, param_names);
    auto lit_formula = [&](const TLiteral& lit) {
        Formula atom;
        if (lit.rel < 0) {
            int i = lit.vars[0], j = lit.vars[1];
            // a quantified variable is displayed before a parameter
            bool i_bound = i >= t.free_arity, j_bound = j >= t.free_arity;
            if (j_bound && !i_bound)
                atom = Formula::equal(Term::var(names[j]), Term::var(names[i]));
            else
                atom = Formula::equal(Term::var(names[i]), Term::var(names[j]));
        } else {
            std::vector<Term> args;
            for (int v : lit.vars) args.push_back(Term::var(names[v]));
            const std::string& rel = rels[lit.rel].first;
            if (sig.is_membership(rel)) {
                atom = Formula::member(args[0], args[1]);
                atom.sym = rel;
            } else {
                atom = Formula::atom(rel, std::move(args));
            }
        }
        return lit.positive ? atom : Formula::lnot(std::move(atom));
    };
    Formula matrix = lit_formula(t.lits[0]);
    for (std::size_t i = 1; i < t.lits.size(); i++) {
        Formula next = lit_formula(t.lits[i]);
        matrix = t.conj_matrix ? Formula::land(std::move(matrix), std::move(next))
                               : Formula::lor(std::move(matrix), std::move(next));
    }
    for (int i = t.total_vars() - 1; i >= t.free_arity; i--) {
        bool universal = i < t.free_arity + t.block1 ? t.block1_universal : t.block2_universal;
        matrix = universal ? Formula::forall(names[i], std::move(matrix))
                           : Formula::exists(names[i], std::move(matrix));
    }
    return matrix;
}

} // namespace modelth

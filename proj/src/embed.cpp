#include "modelth/embed.hpp"

#include <algorithm>

#include "modelth/errors.hpp"
#include "modelth/templates.hpp"

namespace modelth {

bool is_embedding(const FinStructure& m, const FinStructure& n, const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != m.size) return false;
    std::vector<char> hit(n.size, 0);
    for (int v : map) {
        if (v < 0 || v >= n.size || hit[v]) return false;
        hit[v] = 1;
    }
    for (const auto& [name, r] : m.relations) {
        for (int idx = 0; idx < static_cast<int>(r.cells.size()); idx++) {
            std::vector<int> t = m.index_tuple(idx, r.arity);
            for (auto& x : t) x = map[x];
            if ((r.cells[idx] != 0) != n.rel_holds(name, t)) return false;
        }
    }
    for (const auto& [name, f] : m.functions) {
        for (int idx = 0; idx < static_cast<int>(f.cells.size()); idx++) {
            std::vector<int> t = m.index_tuple(idx, f.arity);
            for (auto& x : t) x = map[x];
            if (n.func_value(name, t) != map[f.cells[idx]]) return false;
        }
    }
    return true;
}

std::vector<Embedding> enumerate_embeddings(const FinStructure& m, const FinStructure& n) {
    if (m.sig != n.sig) throw SpecError("enumerate_embeddings: signature mismatch");
    std::vector<Embedding> out;
    if (m.size > n.size) return out;
    std::vector<int> map(m.size, -1);
    std::vector<char> used(n.size, 0);

    // checks every ground atom whose arguments are all already mapped
    auto consistent = [&](int placed) {
        for (const auto& [name, r] : m.relations) {
            for (int idx = 0; idx < static_cast<int>(r.cells.size()); idx++) {
                std::vector<int> t = m.index_tuple(idx, r.arity);
                bool uses_placed = false, all_mapped = true;
                for (int x : t) {
                    if (x == placed) uses_placed = true;
                    if (map[x] < 0) all_mapped = false;
                }
                if (!uses_placed || !all_mapped) continue;
                for (auto& x : t) x = map[x];
                if ((r.cells[idx] != 0) != n.rel_holds(name, t)) return false;
            }
        }
        for (const auto& [name, f] : m.functions) {
            for (int idx = 0; idx < static_cast<int>(f.cells.size()); idx++) {
                std::vector<int> t = m.index_tuple(idx, f.arity);
                bool uses_placed = (f.cells[idx] == placed);
                bool all_mapped = map[f.cells[idx]] >= 0;
                for (int x : t) {
                    if (x == placed) uses_placed = true;
                    if (map[x] < 0) all_mapped = false;
                }
                if (!uses_placed || !all_mapped) continue;
                std::vector<int> img = t;
                for (auto& x : img) x = map[x];
                if (n.func_value(name, img) != map[f.cells[idx]]) return false;
            }
        }
        return true;
    };

    auto rec = [&](auto&& self, int i) -> void {
        if (i == m.size) {
            out.push_back(Embedding{map});
            return;
        }
        for (int v = 0; v < n.size; v++) {
            if (used[v]) continue;
            map[i] = v;
            used[v] = 1;
            if (consistent(i)) self(self, i + 1);
            used[v] = 0;
            map[i] = -1;
        }
    };
    rec(rec, 0);
    return out;
}

AtomicDiagram atomic_diagram(const FinStructure& m) {
    AtomicDiagram d;
    d.expanded_sig = m.sig;
    for (int i = 0; i < m.size; i++)
        d.expanded_sig.functions.push_back({"c" + std::to_string(i), 0});
    auto c = [&](int i) { return Term::app("c" + std::to_string(i)); };

    auto rels = template_relations(m.sig);
    for (const auto& [name, arity] : rels) {
        const RelTable& r = m.relations.at(name);
        for (int idx = 0; idx < static_cast<int>(r.cells.size()); idx++) {
            std::vector<int> t = m.index_tuple(idx, arity);
            std::vector<Term> args;
            for (int x : t) args.push_back(c(x));
            Formula atom;
            if (m.sig.is_membership(name)) {
                atom = Formula::member(args[0], args[1]);
                atom.sym = name;
            } else {
                atom = Formula::atom(name, std::move(args));
            }
            d.sentences.push_back(r.cells[idx] ? atom : Formula::lnot(std::move(atom)));
        }
    }
    for (const auto& [name, arity] : m.sig.functions) {
        const FuncTable& f = m.functions.at(name);
        for (int idx = 0; idx < static_cast<int>(f.cells.size()); idx++) {
            std::vector<int> t = m.index_tuple(idx, arity);
            std::vector<Term> args;
            for (int x : t) args.push_back(c(x));
            d.sentences.push_back(Formula::equal(Term::app(name, std::move(args)), c(f.cells[idx])));
        }
    }
    for (int i = 0; i < m.size; i++)
        for (int j = i + 1; j < m.size; j++)
            d.sentences.push_back(Formula::lnot(Formula::equal(c(i), c(j))));
    return d;
}

ElemReport is_elementary_up_to(const FinStructure& m, const FinStructure& n, const Embedding& e,
                               const LevyClass& level, int qrank) {
    if (m.sig != n.sig) throw SpecError("is_elementary_up_to: signature mismatch");
    if (!is_embedding(m, n, e.map)) throw SpecError("is_elementary_up_to: not an embedding");
    ElemReport rep;
    if (level.tag == LevyTag::Delta0) return rep; // quantifier-free formulas always transfer

    TemplateBounds bounds;
    bounds.qrank = qrank;
    TemplateEnumConfig cfg;
    cfg.max_literals = bounds.max_literals;
    cfg.cap = bounds.cap;

    // template shapes per class: Sigma1/Pi1 reduce to primitive existentials,
    // Sigma2 to exists-forall clause prefixes
    struct Shape {
        int b1;
        bool u1;
        int b2;
        bool u2;
        bool conj;
    };
    std::vector<Shape> shapes;
    if (level.n == 1) {
        for (int b = 1; b <= qrank; b++) shapes.push_back({b, false, 0, false, true});
    } else if (level.n == 2) {
        for (int b1 = 1; b1 <= qrank; b1++)
            for (int b2 = 1; b1 + b2 <= qrank; b2++) shapes.push_back({b1, false, b2, true, false});
        if (shapes.empty()) return ElemReport{ElemStatus::CapExceeded, {}, {}, false, 0};
    } else {
        return ElemReport{ElemStatus::CapExceeded, {}, {}, false, 0};
    }

    try {
        for (int arity = 0; arity <= bounds.max_free; arity++) {
            std::vector<std::vector<int>> tuples;
            std::vector<int> t(arity, 0);
            auto gen = [&](auto&& self, int pos) -> void {
                if (pos == arity) {
                    tuples.push_back(t);
                    return;
                }
                for (int v = 0; v < m.size; v++) {
                    t[pos] = v;
                    self(self, pos + 1);
                }
            };
            gen(gen, 0);
            for (const Shape& sh : shapes) {
                bool failed = false;
                enumerate_templates(
                    m.sig, arity, sh.b1, sh.u1, sh.b2, sh.u2, sh.conj, cfg, [&](const QTemplate& qt) {
                        if (failed) return;
                        rep.templates_checked++;
                        for (const auto& params : tuples) {
                            bool vm = eval_template(m, qt, params);
                            std::vector<int> img(params.size());
                            for (std::size_t i = 0; i < params.size(); i++) img[i] = e.map[params[i]];
                            bool vn = eval_template(n, qt, img);
                            if (vm != vn) {
                                rep.status = ElemStatus::Refuted;
                                rep.witness = template_formula(m.sig, qt);
                                auto names = template_var_names(qt);
                                for (std::size_t i = 0; i < params.size(); i++)
                                    rep.assignment.push_back({names[i], params[i]});
                                rep.true_in_target = vn;
                                failed = true;
                                return;
                            }
                        }
                    });
                if (failed) return rep;
            }
        }
    } catch (const GuardError&) {
        rep.status = ElemStatus::CapExceeded;
        return rep;
    }
    return rep;
}

} // namespace modelth

#include "modelth/structure.hpp"

#include <algorithm>
#include <numeric>

#include "modelth/errors.hpp"

namespace modelth {

FinStructure FinStructure::empty(const Signature& sig, int size) {
    if (size <= 0) throw SpecError("structure size must be positive");
    FinStructure m;
    m.sig = sig;
    m.size = size;
    auto cells = [&](int arity) {
        int n = 1;
        for (int i = 0; i < arity; i++) n *= size;
        return n;
    };
    for (const auto& [name, arity] : sig.relations)
        m.relations[name] = RelTable{arity, std::vector<std::uint8_t>(cells(arity), 0)};
    if (sig.membership && !m.relations.count(*sig.membership))
        m.relations[*sig.membership] = RelTable{2, std::vector<std::uint8_t>(cells(2), 0)};
    for (const auto& [name, arity] : sig.functions)
        m.functions[name] = FuncTable{arity, std::vector<int>(cells(arity), 0)};
    return m;
}

FinStructure FinStructure::graph(int size, const std::vector<std::pair<int, int>>& edges) {
    FinStructure m = empty(Signature::graph(), size);
    for (auto [u, v] : edges) {
        m.set_rel("E", {u, v}, true);
        m.set_rel("E", {v, u}, true);
    }
    return m;
}

int FinStructure::pow_size(int arity) const {
    int n = 1;
    for (int i = 0; i < arity; i++) n *= size;
    return n;
}

int FinStructure::tuple_index(const std::vector<int>& t) const {
    int idx = 0;
    for (int x : t) idx = idx * size + x;
    return idx;
}

std::vector<int> FinStructure::index_tuple(int idx, int arity) const {
    std::vector<int> t(arity, 0);
    for (int i = arity - 1; i >= 0; i--) {
        t[i] = idx % size;
        idx /= size;
    }
    return t;
}

bool FinStructure::rel_holds(const std::string& name, const std::vector<int>& t) const {
    auto it = relations.find(name);
    if (it == relations.end()) throw SpecError("relation '" + name + "' not interpreted");
    return it->second.cells[tuple_index(t)] != 0;
}

void FinStructure::set_rel(const std::string& name, const std::vector<int>& t, bool v) {
    relations.at(name).cells[tuple_index(t)] = v ? 1 : 0;
}

int FinStructure::func_value(const std::string& name, const std::vector<int>& t) const {
    auto it = functions.find(name);
    if (it == functions.end()) throw SpecError("function '" + name + "' not interpreted");
    return it->second.cells[tuple_index(t)];
}

void FinStructure::set_func(const std::string& name, const std::vector<int>& t, int v) {
    functions.at(name).cells[tuple_index(t)] = v;
}

std::vector<std::vector<int>> FinStructure::rel_tuples(const std::string& name) const {
    const RelTable& r = relations.at(name);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < static_cast<int>(r.cells.size()); i++)
        if (r.cells[i]) out.push_back(index_tuple(i, r.arity));
    return out;
}

void FinStructure::validate() const {
    sig.validate();
    if (size <= 0) throw SpecError("structure size must be positive");
    for (const auto& [name, r] : relations) {
        if (sig.relation_arity(name) != r.arity)
            throw SpecError("relation table arity mismatch for '" + name + "'");
        if (static_cast<int>(r.cells.size()) != pow_size(r.arity))
            throw SpecError("relation table size mismatch for '" + name + "'");
    }
    for (const auto& [name, f] : functions) {
        if (sig.function_arity(name) != f.arity)
            throw SpecError("function table arity mismatch for '" + name + "'");
        if (static_cast<int>(f.cells.size()) != pow_size(f.arity))
            throw SpecError("function table size mismatch for '" + name + "'");
        for (int v : f.cells)
            if (v < 0 || v >= size) throw SpecError("function value out of range for '" + name + "'");
    }
}

std::vector<int> FinStructure::encoding() const {
    std::vector<int> out;
    out.push_back(size);
    auto rel = [&](const std::string& name) {
        const RelTable& r = relations.at(name);
        for (auto c : r.cells) out.push_back(c);
    };
    for (const auto& [name, arity] : sig.relations) rel(name);
    if (sig.membership && std::find_if(sig.relations.begin(), sig.relations.end(), [&](auto& p) {
                              return p.first == *sig.membership;
                          }) == sig.relations.end())
        rel(*sig.membership);
    for (const auto& [name, arity] : sig.functions) {
        const FuncTable& f = functions.at(name);
        for (int v : f.cells) out.push_back(v);
    }
    return out;
}

FinStructure FinStructure::apply_permutation(const std::vector<int>& perm) const {
    // perm maps old element i to new element perm[i]
    FinStructure out = *this;
    for (auto& [name, r] : out.relations) {
        const RelTable& src = relations.at(name);
        for (int idx = 0; idx < static_cast<int>(src.cells.size()); idx++) {
            std::vector<int> t = index_tuple(idx, src.arity);
            for (auto& x : t) x = perm[x];
            r.cells[tuple_index(t)] = src.cells[idx];
        }
    }
    for (auto& [name, f] : out.functions) {
        const FuncTable& src = functions.at(name);
        for (int idx = 0; idx < static_cast<int>(src.cells.size()); idx++) {
            std::vector<int> t = index_tuple(idx, src.arity);
            for (auto& x : t) x = perm[x];
            f.cells[tuple_index(t)] = perm[src.cells[idx]];
        }
    }
    return out;
}

FinStructure FinStructure::canonical_form() const {
    std::vector<int> perm(size);
    std::iota(perm.begin(), perm.end(), 0);
    FinStructure best = *this;
    std::vector<int> best_enc = encoding();
    std::vector<int> p = perm;
    while (std::next_permutation(p.begin(), p.end())) {
        FinStructure cand = apply_permutation(p);
        std::vector<int> enc = cand.encoding();
        if (enc < best_enc) {
            best_enc = std::move(enc);
            best = std::move(cand);
        }
    }
    return best;
}

int lookup(const Assignment& a, const std::string& var) {
    for (auto it = a.rbegin(); it != a.rend(); ++it)
        if (it->first == var) return it->second;
    throw SpecError("unassigned free variable '" + var + "'");
}

int eval_term(const FinStructure& m, const Term& t, const Assignment& a) {
    if (t.kind == TermKind::Variable) return lookup(a, t.name);
    std::vector<int> args;
    args.reserve(t.args.size());
    for (const auto& x : t.args) args.push_back(eval_term(m, x, a));
    return m.func_value(t.name, args);
}

bool satisfies(const FinStructure& m, const Formula& f, const Assignment& a0) {
    Assignment a = a0;
    auto rec = [&](auto&& self, const Formula& g) -> bool {
        switch (g.kind) {
        case FKind::Atom: {
            std::vector<int> args;
            args.reserve(g.terms.size());
            for (const auto& t : g.terms) args.push_back(eval_term(m, t, a));
            return m.rel_holds(g.sym, args);
        }
        case FKind::Equal:
            return eval_term(m, g.terms[0], a) == eval_term(m, g.terms[1], a);
        case FKind::Member: {
            if (!m.sig.membership)
                throw SpecError("membership atom evaluated without a flagged membership symbol");
            int lhs = eval_term(m, g.terms[0], a);
            int rhs = eval_term(m, g.terms[1], a);
            return m.rel_holds(*m.sig.membership, {lhs, rhs});
        }
        case FKind::Not:
            return !self(self, g.sub[0]);
        case FKind::And:
            return self(self, g.sub[0]) && self(self, g.sub[1]);
        case FKind::Or:
            return self(self, g.sub[0]) || self(self, g.sub[1]);
        case FKind::Implies:
            return !self(self, g.sub[0]) || self(self, g.sub[1]);
        case FKind::Iff:
            return self(self, g.sub[0]) == self(self, g.sub[1]);
        case FKind::Forall:
        case FKind::Exists: {
            bool want = g.kind == FKind::Exists;
            a.push_back({g.sym, 0});
            for (int e = 0; e < m.size; e++) {
                a.back().second = e;
                if (self(self, g.sub[0]) == want) {
                    a.pop_back();
                    return want;
                }
            }
            a.pop_back();
            return !want;
        }
        case FKind::BoundedForall:
        case FKind::BoundedExists: {
            if (!m.sig.membership)
                throw SpecError("bounded quantifier evaluated without a flagged membership symbol");
            bool want = g.kind == FKind::BoundedExists;
            int bound = eval_term(m, g.terms[0], a);
            a.push_back({g.sym, 0});
            for (int e = 0; e < m.size; e++) {
                if (!m.rel_holds(*m.sig.membership, {e, bound})) continue;
                a.back().second = e;
                if (self(self, g.sub[0]) == want) {
                    a.pop_back();
                    return want;
                }
            }
            a.pop_back();
            return !want;
        }
        }
        throw SpecError("unreachable");
    };
    return rec(rec, f);
}

bool satisfies_all(const FinStructure& m, const std::vector<Formula>& sentences) {
    for (const auto& s : sentences)
        if (!satisfies(m, s)) return false;
    return true;
}

} // namespace modelth

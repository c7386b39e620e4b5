#include "modelth/codestruct.hpp"

#include <algorithm>

#include "modelth/errors.hpp"

namespace modelth {

CodeStructure::CodeStructure(HfPool& pool, int m) : pool_(&pool), m_(m) {
    if (m < 1) throw SpecError("code structure needs m >= 1");
    if (m > 5) throw GuardError("code structure universe guard: m <= 5");
    materialized_ = m <= 4;
    if (materialized_) {
        std::uint64_t n = universe_size();
        collapse_.resize(n);
        for (std::uint64_t bits = 0; bits < n; bits++) {
            collapse_[bits] = compute_collapse(bits);
            if (collapse_[bits] >= 0) valid_.push_back(bits);
        }
    }
    // collapse classes are exactly the sets of transitive-closure size < m
    for (int id : pool.universe(m))
        if (pool.tc_size(id) < m_) classes_.push_back(id);
}

int CodeStructure::compute_collapse(std::uint64_t bits) const {
    PointedCode c = trim(code_from_bits(m_, bits));
    if (!is_wfe(c).ok) return -1;
    return collapse(*pool_, c);
}

bool CodeStructure::wfe(std::uint64_t bits) const { return collapse_id(bits) >= 0; }

int CodeStructure::collapse_id(std::uint64_t bits) const {
    if (materialized_) return collapse_[bits];
    return compute_collapse(bits);
}

bool CodeStructure::eq(std::uint64_t r, std::uint64_t s) const {
    int a = collapse_id(r), b = collapse_id(s);
    return a >= 0 && b >= 0 && a == b;
}

bool CodeStructure::mem(std::uint64_t r, std::uint64_t s) const {
    int a = collapse_id(r), b = collapse_id(s);
    return a >= 0 && b >= 0 && pool_->member(a, b);
}

bool CodeStructure::eq_raw(std::uint64_t r, std::uint64_t s) const {
    return pointed_iso(trim(code_from_bits(m_, r)), trim(code_from_bits(m_, s)));
}

bool CodeStructure::mem_raw(std::uint64_t r, std::uint64_t s) const {
    return graph_mem_iso(trim(code_from_bits(m_, r)), trim(code_from_bits(m_, s)));
}

const std::vector<std::uint64_t>& CodeStructure::valid() const {
    if (!materialized_) throw GuardError("valid list requires a materialized structure (m <= 4)");
    return valid_;
}

const std::vector<int>& CodeStructure::classes() const { return classes_; }

CodeStructure build_code_structure(HfPool& pool, int m) { return CodeStructure(pool, m); }

Signature code_signature() {
    Signature s;
    s.relations.push_back({"WFE", 1});
    s.relations.push_back({"EQ", 2});
    s.relations.push_back({"MEM", 2});
    return s;
}

namespace {

template <typename Value, typename AtomEval, typename Range>
bool eval_generic(const Formula& f, std::vector<std::pair<std::string, Value>>& env,
                  const AtomEval& atom_eval, const Range& range) {
    switch (f.kind) {
    case FKind::Atom:
        return atom_eval(f, env);
    case FKind::Equal:
    case FKind::Member:
        throw SpecError("code formulas use WFE/EQ/MEM atoms only");
    case FKind::Not:
        return !eval_generic(f.sub[0], env, atom_eval, range);
    case FKind::And:
        return eval_generic(f.sub[0], env, atom_eval, range) &&
               eval_generic(f.sub[1], env, atom_eval, range);
    case FKind::Or:
        return eval_generic(f.sub[0], env, atom_eval, range) ||
               eval_generic(f.sub[1], env, atom_eval, range);
    case FKind::Implies:
        return !eval_generic(f.sub[0], env, atom_eval, range) ||
               eval_generic(f.sub[1], env, atom_eval, range);
    case FKind::Iff:
        return eval_generic(f.sub[0], env, atom_eval, range) ==
               eval_generic(f.sub[1], env, atom_eval, range);
    case FKind::Forall:
    case FKind::Exists: {
        bool want = f.kind == FKind::Exists;
        env.push_back({f.sym, Value{}});
        for (const Value& v : range) {
            env.back().second = v;
            if (eval_generic(f.sub[0], env, atom_eval, range) == want) {
                env.pop_back();
                return want;
            }
        }
        env.pop_back();
        return !want;
    }
    default:
        throw SpecError("bounded quantifiers are not part of the code language");
    }
}

template <typename Value>
Value env_get(const std::vector<std::pair<std::string, Value>>& env, const std::string& name) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == name) return it->second;
    throw SpecError("unassigned variable '" + name + "'");
}

} // namespace

bool eval_code_brute(const CodeStructure& cs, const Formula& f,
                     const std::vector<std::pair<std::string, std::uint64_t>>& assignment,
                     bool raw_atoms) {
    std::vector<std::uint64_t> range(cs.universe_size());
    for (std::uint64_t i = 0; i < range.size(); i++) range[i] = i;
    auto env = assignment;
    auto atom_eval = [&](const Formula& g, std::vector<std::pair<std::string, std::uint64_t>>& e) {
        auto arg = [&](int i) { return env_get(e, g.terms[i].name); };
        if (g.sym == "WFE") return cs.wfe(arg(0));
        if (g.sym == "EQ") return raw_atoms ? cs.eq_raw(arg(0), arg(1)) : cs.eq(arg(0), arg(1));
        if (g.sym == "MEM") return raw_atoms ? cs.mem_raw(arg(0), arg(1)) : cs.mem(arg(0), arg(1));
        throw SpecError("unknown code predicate '" + g.sym + "'");
    };
    return eval_generic(f, env, atom_eval, range);
}

bool eval_code_quotient(const CodeStructure& cs, const Formula& f,
                        const std::vector<std::pair<std::string, int>>& assignment) {
    std::vector<int> range;
    range.push_back(-1); // the invalid class
    for (int id : cs.classes()) range.push_back(id);
    auto env = assignment;
    HfPool& pool = cs.pool();
    auto atom_eval = [&](const Formula& g, std::vector<std::pair<std::string, int>>& e) {
        auto arg = [&](int i) { return env_get(e, g.terms[i].name); };
        if (g.sym == "WFE") return arg(0) >= 0;
        if (g.sym == "EQ") {
            int a = arg(0), b = arg(1);
            return a >= 0 && b >= 0 && a == b;
        }
        if (g.sym == "MEM") {
            int a = arg(0), b = arg(1);
            return a >= 0 && b >= 0 && pool.member(a, b);
        }
        throw SpecError("unknown code predicate '" + g.sym + "' (raw atoms need brute evaluation)");
    };
    return eval_generic(f, env, atom_eval, range);
}

std::uint64_t embed_bits(const PointedCode& c, int m) {
    if (c.domain > m) throw SpecError("code does not fit the universe");
    std::uint64_t bits = 0;
    for (auto [u, v] : c.rel) bits |= 1ULL << (u * m + v);
    return bits;
}

} // namespace modelth

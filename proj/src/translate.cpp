#include "modelth/translate.hpp"

#include <algorithm>

#include "modelth/errors.hpp"
#include "modelth/levy.hpp"

namespace modelth {

namespace {

Formula wfe_atom(const std::string& v) { return Formula::atom("WFE", {Term::var(v)}); }

std::string require_var(const Term& t) {
    if (t.kind != TermKind::Variable)
        throw SpecError("translate: membership formulas must use variable terms");
    return t.name;
}

Formula translate_rec(const Formula& f, GuardMode mode) {
    switch (f.kind) {
    case FKind::Atom:
        throw SpecError("translate: relation symbols other than membership present ('" + f.sym + "')");
    case FKind::Equal: {
        std::string x = require_var(f.terms[0]), y = require_var(f.terms[1]);
        Formula base = Formula::atom("EQ", {Term::var(x), Term::var(y)});
        if (mode == GuardMode::DropAtomGuards) return base;
        return Formula::land(wfe_atom(x), Formula::land(wfe_atom(y), std::move(base)));
    }
    case FKind::Member: {
        std::string x = require_var(f.terms[0]), y = require_var(f.terms[1]);
        Formula base = Formula::atom("MEM", {Term::var(x), Term::var(y)});
        if (mode == GuardMode::DropAtomGuards) return base;
        return Formula::land(wfe_atom(x), Formula::land(wfe_atom(y), std::move(base)));
    }
    case FKind::Not:
        return Formula::lnot(translate_rec(f.sub[0], mode));
    case FKind::And:
        return Formula::land(translate_rec(f.sub[0], mode), translate_rec(f.sub[1], mode));
    case FKind::Or:
        return Formula::lor(translate_rec(f.sub[0], mode), translate_rec(f.sub[1], mode));
    case FKind::Implies:
        return Formula::implies(translate_rec(f.sub[0], mode), translate_rec(f.sub[1], mode));
    case FKind::Iff:
        return Formula::iff(translate_rec(f.sub[0], mode), translate_rec(f.sub[1], mode));
    case FKind::Exists: {
        Formula body = translate_rec(f.sub[0], mode);
        if (mode == GuardMode::DropExistsGuard) return Formula::exists(f.sym, std::move(body));
        return Formula::exists(f.sym, Formula::land(std::move(body), wfe_atom(f.sym)));
    }
    case FKind::Forall: {
        Formula body = translate_rec(f.sub[0], mode);
        if (mode == GuardMode::DropForallGuard) return Formula::forall(f.sym, std::move(body));
        return Formula::forall(f.sym, Formula::implies(wfe_atom(f.sym), std::move(body)));
    }
    default:
        throw SpecError("translate: bounded quantifier survived desugaring");
    }
}

} // namespace

Formula translate(const Formula& f, GuardMode mode) {
    Formula g = desugar_bounded(f);
    Formula out = translate_rec(g, mode);
    validate(out, code_signature());
    return out;
}

VerifyReport verify_translation(HfPool& pool, const Formula& f, int m, GuardMode mode,
                                bool raw_atoms, bool force_brute,
                                const std::vector<int>* assign_from) {
    Formula theta = translate(f, mode);
    std::vector<std::string> fvs = free_vars(f);
    CodeStructure cs = build_code_structure(pool, m);
    const std::vector<int>& small = cs.classes(); // sets of TC-size < m
    const std::vector<int>& draws = assign_from ? *assign_from : small;
    for (int id : draws)
        if (pool.tc_size(id) >= m)
            throw SpecError("assignment draw does not fit the scale m");
    bool brute = raw_atoms || force_brute;
    if (brute && !cs.materialized())
        throw GuardError("brute verification requires a materialized structure (m <= 4)");

    VerifyReport rep;
    std::vector<int> idx(fvs.size(), 0);
    while (true) {
        std::vector<std::pair<std::string, int>> hf_assign;
        for (std::size_t i = 0; i < fvs.size(); i++) hf_assign.push_back({fvs[i], draws[idx[i]]});
        bool lhs = hf_eval_over(pool, f, small, hf_assign);
        bool rhs;
        if (brute) {
            std::vector<std::pair<std::string, std::uint64_t>> bits;
            for (const auto& [v, id] : hf_assign)
                bits.push_back({v, embed_bits(encode(pool, id), m)});
            rhs = eval_code_brute(cs, theta, bits, raw_atoms);
        } else {
            rhs = eval_code_quotient(cs, theta, hf_assign);
        }
        rep.assignments_checked++;
        if (lhs != rhs) {
            rep.pass = false;
            rep.counterexample = hf_assign;
            rep.lhs_value = lhs;
            return rep;
        }
        // advance the assignment tuple
        std::size_t k = 0;
        while (k < idx.size()) {
            if (++idx[k] < static_cast<int>(draws.size())) break;
            idx[k] = 0;
            k++;
        }
        if (fvs.empty() || k == idx.size()) break;
    }
    return rep;
}

ConfinementReport atomic_confinement(const CodeStructure& cs, GuardMode mode, bool raw_atoms) {
    Signature msig = Signature::membership_only();
    Formula eq_atom = parse("(= x y)", msig);
    Formula mem_atom = parse("(in x y)", msig);
    Formula teq = translate(eq_atom, mode);
    Formula tmem = translate(mem_atom, mode);
    ConfinementReport rep;
    for (std::uint64_t r = 0; r < cs.universe_size(); r++)
        for (std::uint64_t s = 0; s < cs.universe_size(); s++) {
            if (cs.wfe(r) && cs.wfe(s)) continue;
            std::vector<std::pair<std::string, std::uint64_t>> a = {{"x", r}, {"y", s}};
            if (eval_code_brute(cs, teq, a, raw_atoms) || eval_code_brute(cs, tmem, a, raw_atoms)) {
                rep.pass = false;
                rep.r = r;
                rep.s = s;
                return rep;
            }
        }
    return rep;
}

UniversalForm universal_form(const Formula& f) {
    LevyClass cls = levy_classify(f);
    bool sigma1 = cls.tag == LevyTag::Delta0 || (cls.tag == LevyTag::Sigma && cls.n == 1);
    if (!sigma1) throw SpecError("universal_form requires a Sigma1 formula, got " + cls.str());

    std::vector<std::string> fvs = free_vars(f);
    UniversalForm out;
    out.hybrid_sig.relations.push_back({"Cod", 2});
    out.hybrid_sig.relations.push_back({"Theta_f", static_cast<int>(fvs.size())});
    for (std::size_t i = 0; i < fvs.size(); i++)
        out.code_vars.push_back(fvs.size() == 1 ? "r" : "r" + std::to_string(i));

    std::vector<Term> code_terms;
    for (const auto& v : out.code_vars) code_terms.push_back(Term::var(v));
    Formula theta_atom = Formula::atom("Theta_f", code_terms);
    if (fvs.empty()) {
        out.formula = theta_atom;
        return out;
    }
    Formula link = Formula::atom("Cod", {Term::var(out.code_vars[0]), Term::var(fvs[0])});
    for (std::size_t i = 1; i < fvs.size(); i++)
        link = Formula::land(std::move(link),
                             Formula::atom("Cod", {Term::var(out.code_vars[i]), Term::var(fvs[i])}));
    Formula body = Formula::implies(std::move(link), std::move(theta_atom));
    for (auto it = out.code_vars.rbegin(); it != out.code_vars.rend(); ++it)
        body = Formula::forall(*it, std::move(body));
    out.formula = std::move(body);
    return out;
}

VerifyReport verify_universal_form(HfPool& pool, const Formula& f, int m) {
    UniversalForm uf = universal_form(f);
    Formula theta = translate(f);
    CodeStructure cs = build_code_structure(pool, m);
    const std::vector<int>& small = cs.classes();
    std::vector<std::string> fvs = free_vars(f);

    VerifyReport rep;
    std::vector<int> idx(fvs.size(), 0);
    while (true) {
        std::vector<std::pair<std::string, int>> hf_assign;
        for (std::size_t i = 0; i < fvs.size(); i++) hf_assign.push_back({fvs[i], small[idx[i]]});
        bool lhs = hf_eval_over(pool, f, small, hf_assign);
        // the universal form holds iff every tuple of codes linked by Cod to the
        // assigned sets satisfies Theta_f; with Cod interpreted via collapse this
        // is the quotient truth of theta at the assigned classes
        bool rhs = eval_code_quotient(cs, theta, hf_assign);
        rep.assignments_checked++;
        if (lhs != rhs) {
            rep.pass = false;
            rep.counterexample = hf_assign;
            rep.lhs_value = lhs;
            return rep;
        }
        std::size_t k = 0;
        while (k < idx.size()) {
            if (++idx[k] < static_cast<int>(small.size())) break;
            idx[k] = 0;
            k++;
        }
        if (fvs.empty() || k == idx.size()) break;
    }
    return rep;
}

Signature expanded_code_signature() {
    Signature s;
    s.relations.push_back({"Desc", 2});
    s.relations.push_back({"Iso", 3});
    s.relations.push_back({"IsoP", 3});
    return s;
}

Formula expand_code_predicates(const Formula& translated) {
    int fresh = 0;
    auto rec = [&](auto&& self, const Formula& g) -> Formula {
        if (g.kind == FKind::Atom) {
            std::string h = "g" + std::to_string(fresh++);
            if (g.sym == "WFE")
                return Formula::forall(
                    h, Formula::lnot(Formula::atom("Desc", {Term::var(h), g.terms[0]})));
            if (g.sym == "EQ")
                return Formula::exists(h,
                                       Formula::atom("Iso", {Term::var(h), g.terms[0], g.terms[1]}));
            if (g.sym == "MEM")
                return Formula::exists(h,
                                       Formula::atom("IsoP", {Term::var(h), g.terms[0], g.terms[1]}));
            throw SpecError("unexpected predicate '" + g.sym + "'");
        }
        Formula out = g;
        for (auto& s : out.sub) s = self(self, s);
        return out;
    };
    return rec(rec, translated);
}

} // namespace modelth

#include "modelth/morley.hpp"

#include <algorithm>

#include "modelth/errors.hpp"

namespace modelth {

MorleyizationResult morleyize(const Signature& sig,
                              const std::vector<std::pair<Formula, bool>>& selected) {
    sig.validate();
    MorleyizationResult out;
    out.expanded = sig;
    for (std::size_t i = 0; i < selected.size(); i++) {
        const auto& [phi, skolem] = selected[i];
        validate(phi, sig);
        for (std::size_t j = 0; j < i; j++)
            if (selected[j].first == phi && selected[j].second == skolem)
                throw SpecError("duplicate selection at index " + std::to_string(i));
        std::vector<std::string> fv = free_vars(phi);
        MorleyizationResult::Entry entry;
        entry.source = phi;
        entry.skolem = skolem;
        entry.free = fv;
        if (!skolem) {
            entry.symbol = "R_" + std::to_string(i);
            out.expanded.relations.push_back({entry.symbol, static_cast<int>(fv.size())});
            std::vector<Term> args;
            for (const auto& v : fv) args.push_back(Term::var(v));
            Formula ax = Formula::iff(phi, Formula::atom(entry.symbol, std::move(args)));
            for (auto it = fv.rbegin(); it != fv.rend(); ++it) ax = Formula::forall(*it, std::move(ax));
            out.axioms.push_back(std::move(ax));
        } else {
            if (fv.empty())
                throw SpecError("skolem selection needs at least one free variable (index " +
                                std::to_string(i) + ")");
            entry.symbol = "f_" + std::to_string(i);
            const std::string& witness = fv[0];
            std::vector<std::string> params(fv.begin() + 1, fv.end());
            out.expanded.functions.push_back({entry.symbol, static_cast<int>(params.size())});
            std::vector<Term> args;
            for (const auto& v : params) args.push_back(Term::var(v));
            Formula instantiated = subst(phi, witness, Term::app(entry.symbol, std::move(args)));
            Formula ax = Formula::implies(Formula::exists(witness, phi), std::move(instantiated));
            for (auto it = params.rbegin(); it != params.rend(); ++it)
                ax = Formula::forall(*it, std::move(ax));
            out.axioms.push_back(std::move(ax));
        }
        out.entries.push_back(std::move(entry));
    }
    out.expanded.validate();
    return out;
}

FinStructure expand_morley(const FinStructure& m, const MorleyizationResult& mr) {
    FinStructure out = m;
    out.sig = mr.expanded;
    for (const auto& entry : mr.entries) {
        int arity = static_cast<int>(entry.free.size());
        if (!entry.skolem) {
            RelTable r{arity, std::vector<std::uint8_t>(m.pow_size(arity), 0)};
            for (int idx = 0; idx < static_cast<int>(r.cells.size()); idx++) {
                std::vector<int> tup = m.index_tuple(idx, arity);
                Assignment a;
                for (int i = 0; i < arity; i++) a.push_back({entry.free[i], tup[i]});
                r.cells[idx] = satisfies(m, entry.source, a) ? 1 : 0;
            }
            out.relations[entry.symbol] = std::move(r);
        } else {
            int params = arity - 1;
            FuncTable f{params, std::vector<int>(m.pow_size(params), 0)};
            for (int idx = 0; idx < static_cast<int>(f.cells.size()); idx++) {
                std::vector<int> tup = m.index_tuple(idx, params);
                Assignment a;
                for (int i = 0; i < params; i++) a.push_back({entry.free[i + 1], tup[i]});
                a.push_back({entry.free[0], 0});
                int value = params > 0 ? tup[0] : 0; // no-witness default
                for (int w = 0; w < m.size; w++) {
                    a.back().second = w;
                    if (satisfies(m, entry.source, a)) {
                        value = w;
                        break;
                    }
                }
                f.cells[idx] = value;
            }
            out.functions[entry.symbol] = std::move(f);
        }
    }
    return out;
}

} // namespace modelth

#include "modelth/modelcomp.hpp"

#include <algorithm>
#include <bit>

#include "modelth/errors.hpp"
#include "modelth/parallel.hpp"

namespace modelth {

void BoundedClass::validate() const {
    sig.validate();
    for (const auto& ax : axioms) modelth::validate(ax, sig);
    for (const auto& m : models) {
        if (m.sig != sig) throw SpecError("class model over a different signature");
        if (m.size > size_bound) throw SpecError("class model exceeds the size bound");
        if (!satisfies_all(m, axioms)) throw SpecError("class model violates an axiom");
    }
}

BoundedClass build_class(const Signature& sig, const std::vector<Formula>& axioms, int n) {
    BoundedClass c;
    c.sig = sig;
    c.axioms = axioms;
    c.size_bound = n;
    c.models = enumerate_structures(sig, n, axioms);
    return c;
}

BoundedClass class_from_models(const Signature& sig, const std::vector<Formula>& axioms, int n,
                               std::vector<FinStructure> models) {
    BoundedClass c;
    c.sig = sig;
    c.axioms = axioms;
    c.size_bound = n;
    c.models = std::move(models);
    c.validate();
    return c;
}

std::string to_string(EcVerdict v) {
    switch (v) {
    case EcVerdict::EcWithinBounds: return "ec-within-bounds";
    case EcVerdict::Refuted: return "refuted";
    case EcVerdict::BoundaryVacuous: return "boundary-vacuous";
    }
    return "?";
}

namespace {

// Per-class Sigma1 template scan: templates grouped by parameter arity, truth
// bitsets per (model, parameter tuple). Built once, read from many threads.
struct EcScan {
    std::vector<std::vector<QTemplate>> templates; // by arity
    std::vector<int> words;                        // bitset words per arity
    // sat[model][arity]: tuples * words
    std::vector<std::vector<std::vector<std::uint64_t>>> sat;

    static int tuple_count(int size, int arity) {
        int n = 1;
        for (int i = 0; i < arity; i++) n *= size;
        return n;
    }
};

EcScan build_scan(const BoundedClass& c, int qrank, const EcOptions& opts) {
    EcScan scan;
    scan.templates.resize(opts.max_params + 1);
    TemplateEnumConfig cfg;
    cfg.max_literals = opts.max_literals;
    cfg.cap = opts.template_cap;
    for (int arity = 0; arity <= opts.max_params; arity++) {
        for (int b = 1; b <= qrank; b++) {
            enumerate_templates(c.sig, arity, b, false, 0, false, true, cfg,
                                [&](const QTemplate& t) {
                                    if (degenerate_matrix(t)) return;
                                    scan.templates[arity].push_back(t);
                                });
        }
        scan.words.push_back((static_cast<int>(scan.templates[arity].size()) + 63) / 64);
    }
    auto eval_model = [&](int mi) {
        const FinStructure& m = c.models[mi];
        TemplateEvaluator ev(m);
        std::vector<std::vector<std::uint64_t>> per_arity;
        for (int arity = 0; arity <= opts.max_params; arity++) {
            int tuples = EcScan::tuple_count(m.size, arity);
            std::vector<std::uint64_t> bits(static_cast<std::size_t>(tuples) * scan.words[arity], 0);
            std::vector<int> params(arity, 0);
            for (int ti = 0; ti < tuples; ti++) {
                int rem = ti;
                for (int i = arity - 1; i >= 0; i--) {
                    params[i] = rem % m.size;
                    rem /= m.size;
                }
                for (std::size_t k = 0; k < scan.templates[arity].size(); k++)
                    if (ev.eval(scan.templates[arity][k], params))
                        bits[ti * scan.words[arity] + k / 64] |= 1ULL << (k % 64);
            }
            per_arity.push_back(std::move(bits));
        }
        return per_arity;
    };
    scan.sat = parallel_map<std::vector<std::vector<std::uint64_t>>>(
        static_cast<int>(c.models.size()), opts.jobs, eval_model);
    return scan;
}

// first template gained by N at the image of the tuple, or -1
int first_gain(const EcScan& scan, int arity, const std::vector<std::uint64_t>& msat, int mt,
               const std::vector<std::uint64_t>& nsat, int nt) {
    int w = scan.words[arity];
    for (int k = 0; k < w; k++) {
        std::uint64_t gain = nsat[static_cast<std::size_t>(nt) * w + k] &
                             ~msat[static_cast<std::size_t>(mt) * w + k];
        if (gain) return k * 64 + std::countr_zero(gain);
    }
    return -1;
}

bool any_nonbijective_embedding(const BoundedClass& c) {
    for (std::size_t i = 0; i < c.models.size(); i++)
        for (std::size_t j = 0; j < c.models.size(); j++) {
            if (c.models[i].size >= c.models[j].size) continue;
            if (!enumerate_embeddings(c.models[i], c.models[j]).empty()) return true;
        }
    return false;
}

EcReport ec_verdict(const BoundedClass& c, int model_index, const EcOptions& opts,
                    const EcScan* scan) {
    const FinStructure& m = c.models[model_index];
    EcReport rep;
    rep.model_index = model_index;
    if (m.size == c.size_bound) {
        rep.verdict = EcVerdict::BoundaryVacuous;
        return rep;
    }
    for (std::size_t ni = 0; ni < c.models.size(); ni++) {
        const FinStructure& n = c.models[ni];
        if (n.size <= m.size) continue; // same-size embeddings are isomorphisms
        for (const Embedding& e : enumerate_embeddings(m, n)) {
            for (int arity = 0; arity <= opts.max_params && scan; arity++) {
                if (scan->templates[arity].empty()) continue;
                int mtuples = EcScan::tuple_count(m.size, arity);
                std::vector<int> params(arity, 0);
                for (int ti = 0; ti < mtuples; ti++) {
                    int rem = ti;
                    for (int i = arity - 1; i >= 0; i--) {
                        params[i] = rem % m.size;
                        rem /= m.size;
                    }
                    int nt = 0;
                    for (int i = 0; i < arity; i++) nt = nt * n.size + e.map[params[i]];
                    int k = first_gain(*scan, arity, scan->sat[model_index][arity], ti,
                                       scan->sat[ni][arity], nt);
                    rep.templates_checked += scan->templates[arity].size();
                    if (k >= 0) {
                        const QTemplate& t = scan->templates[arity][k];
                        rep.verdict = EcVerdict::Refuted;
                        rep.extension_index = static_cast<int>(ni);
                        rep.embedding = e;
                        rep.witness = template_formula(c.sig, t);
                        auto names = template_var_names(t);
                        for (int i = 0; i < arity; i++)
                            rep.parameters.push_back({names[i], params[i]});
                        return rep;
                    }
                }
            }
        }
    }
    rep.verdict = EcVerdict::EcWithinBounds;
    return rep;
}

} // namespace

EcReport is_ec_in_class(const BoundedClass& c, int model_index, int qrank, const EcOptions& opts) {
    if (model_index < 0 || model_index >= static_cast<int>(c.models.size()))
        throw SpecError("model index out of range");
    const FinStructure& m = c.models[model_index];
    if (m.size == c.size_bound) {
        EcReport rep;
        rep.model_index = model_index;
        rep.verdict = EcVerdict::BoundaryVacuous;
        return rep;
    }
    // the template scan is needed only when some proper extension exists
    bool extends = false;
    for (const auto& n : c.models)
        if (m.size < n.size && !enumerate_embeddings(m, n).empty()) {
            extends = true;
            break;
        }
    if (!extends) {
        EcReport rep;
        rep.model_index = model_index;
        rep.verdict = EcVerdict::EcWithinBounds;
        return rep;
    }
    EcScan scan = build_scan(c, qrank, opts);
    return ec_verdict(c, model_index, opts, &scan);
}

std::vector<EcReport> ec_models(const BoundedClass& c, int qrank, const EcOptions& opts) {
    // the template scan is built only when some model genuinely extends inside
    // the class; Morleyized classes usually have no proper extensions at all
    std::unique_ptr<EcScan> scan;
    if (any_nonbijective_embedding(c)) scan = std::make_unique<EcScan>(build_scan(c, qrank, opts));
    auto verdict = [&](int i) { return ec_verdict(c, i, opts, scan.get()); };
    return parallel_map<EcReport>(static_cast<int>(c.models.size()), opts.jobs, verdict);
}

ModelCompleteReport check_model_complete_bounded(const BoundedClass& c, int qrank,
                                                 const EcOptions& opts) {
    ModelCompleteReport out;
    out.reports = ec_models(c, qrank, opts);
    for (const auto& r : out.reports)
        if (r.verdict == EcVerdict::Refuted) {
            out.pass = false;
            out.counterexample = r;
            break;
        }
    return out;
}

SeparatorReport pi1_separator(const BoundedClass& ct, const BoundedClass& cs, int qrank, int max_vars,
                              const EcOptions& opts) {
    if (ct.sig != cs.sig) throw SpecError("pi1_separator: signature mismatch");
    SeparatorReport rep;
    TemplateEnumConfig cfg;
    cfg.max_literals = opts.max_literals;
    cfg.cap = opts.template_cap;
    (void)qrank; // for universal sentences the prefix length is the variable count
    std::vector<TemplateEvaluator> ct_ev, cs_ev;
    for (const auto& m : ct.models) ct_ev.emplace_back(m);
    for (const auto& m : cs.models) cs_ev.emplace_back(m);
    try {
        for (int vars = 1; vars <= max_vars; vars++) {
            SeparatorReport found;
            found.kind = SeparatorReport::Kind::UnknownWithinBounds;
            enumerate_templates(ct.sig, 0, vars, true, 0, false, false, cfg, [&](const QTemplate& t) {
                if (found.separator) return;
                if (degenerate_matrix(t)) return;
                for (const auto& ev : ct_ev)
                    if (!ev.eval(t, {})) return;
                for (const auto& ev : cs_ev)
                    if (ev.eval(t, {})) return;
                found.kind = SeparatorReport::Kind::Separator;
                found.separator = template_formula(ct.sig, t);
            });
            if (found.separator) return found;
        }
    } catch (const GuardError&) {
        rep.kind = SeparatorReport::Kind::CapExceeded;
        return rep;
    }
    // no separator within bounds: an embedding of a cs-model into a ct-model
    // certifies that none exists at any bound
    for (std::size_t si = 0; si < cs.models.size(); si++)
        for (std::size_t ti = 0; ti < ct.models.size(); ti++) {
            auto embs = enumerate_embeddings(cs.models[si], ct.models[ti]);
            if (!embs.empty()) {
                rep.kind = SeparatorReport::Kind::AbsentWithEmbedding;
                rep.s_model = static_cast<int>(si);
                rep.t_model = static_cast<int>(ti);
                rep.embedding = embs.front();
                return rep;
            }
        }
    rep.kind = SeparatorReport::Kind::UnknownWithinBounds;
    return rep;
}

UniversalEquivalentReport find_universal_equivalent(const Formula& phi, const BoundedClass& c,
                                                    int qrank, const EcOptions& opts) {
    LevyClass cls = levy_classify(phi);
    if (!(cls.tag == LevyTag::Delta0 || (cls.tag == LevyTag::Sigma && cls.n == 1)))
        throw SpecError("find_universal_equivalent needs a Sigma1 formula, got " + cls.str());
    validate(phi, c.sig);
    std::vector<std::string> fvs = free_vars(phi);
    int arity = static_cast<int>(fvs.size());

    UniversalEquivalentReport rep;
    TemplateEnumConfig cfg;
    cfg.max_literals = opts.max_literals;
    cfg.cap = opts.template_cap;
    try {
        for (int b = 0; b <= qrank && !rep.equivalent; b++) {
            enumerate_templates(c.sig, arity, b, true, 0, false, false, cfg, [&](const QTemplate& t) {
                if (rep.equivalent) return;
                std::vector<int> params(arity, 0);
                for (const auto& m : c.models) {
                    int tuples = 1;
                    for (int i = 0; i < arity; i++) tuples *= m.size;
                    for (int ti = 0; ti < tuples; ti++) {
                        int rem = ti;
                        for (int i = arity - 1; i >= 0; i--) {
                            params[i] = rem % m.size;
                            rem /= m.size;
                        }
                        Assignment a;
                        for (int i = 0; i < arity; i++) a.push_back({fvs[i], params[i]});
                        if (satisfies(m, phi, a) != eval_template(m, t, params)) return;
                    }
                }
                rep.equivalent = template_formula(c.sig, t, fvs);
            });
        }
    } catch (const GuardError&) {
        rep.cap_exceeded = true;
    }
    return rep;
}

KaiserHullReport kaiser_hull_pi2(const BoundedClass& c, int qrank, int max_vars,
                                 const EcOptions& opts) {
    KaiserHullReport rep;
    rep.ec_reports = ec_models(c, qrank, opts);
    std::vector<const FinStructure*> survivors;
    for (const auto& r : rep.ec_reports)
        if (r.verdict == EcVerdict::EcWithinBounds) survivors.push_back(&c.models[r.model_index]);

    std::vector<TemplateEvaluator> surv_ev, all_ev;
    for (const FinStructure* m : survivors) surv_ev.emplace_back(*m);
    for (const auto& m : c.models) all_ev.emplace_back(m);
    TemplateEnumConfig cfg;
    cfg.max_literals = opts.max_literals;
    cfg.cap = opts.template_cap;
    for (int a = 0; a <= max_vars; a++)
        for (int b = 0; b <= qrank; b++) {
            if (a + b == 0) continue;
            enumerate_templates(c.sig, 0, a, true, b, false, true, cfg, [&](const QTemplate& t) {
                if (degenerate_matrix(t)) return;
                for (const auto& ev : surv_ev)
                    if (!ev.eval(t, {})) return;
                bool consistent = false;
                for (const auto& ev : all_ev)
                    if (ev.eval(t, {})) {
                        consistent = true;
                        break;
                    }
                if (!consistent) return;
                rep.sentences.push_back(template_formula(c.sig, t));
            });
        }
    return rep;
}

} // namespace modelth

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modelth/code.hpp"
#include "modelth/codestruct.hpp"
#include "modelth/embed.hpp"
#include "modelth/errors.hpp"
#include "modelth/hf.hpp"
#include "modelth/json_io.hpp"
#include "modelth/levy.hpp"
#include "modelth/modelcomp.hpp"
#include "modelth/morley.hpp"
#include "modelth/quotient.hpp"
#include "modelth/suite.hpp"
#include "modelth/translate.hpp"

using namespace modelth;

namespace {

struct Options {
    std::string formula;
    std::string sig_path;
    std::vector<std::string> structures;
    std::vector<std::string> classes;
    std::vector<std::string> axioms;
    std::vector<std::string> selects;
    std::vector<std::string> skolems;
    std::vector<std::string> assigns;
    std::string set_literal;
    std::string code_path;
    long long ack = -1;
    int size = 3;
    int qrank = 1;
    int max_vars = 2;
    int m = 3;
    int k = 4;
    int jobs = 1;
    std::uint64_t seed = 0;
    bool strict = false;
    std::string out;
};

Signature load_sig(const Options& o) {
    if (o.sig_path.empty()) return Signature::membership_only();
    return signature_from_json(load_json_file(o.sig_path));
}

Json config_block(const std::string& sub, const Options& o) {
    Json j;
    j["subcommand"] = sub;
    j["seed"] = o.seed;
    return j;
}

void emit(const Options& o, Json j) {
    std::string text = j.dump(2) + "\n";
    if (o.out.empty())
        std::cout << text;
    else
        write_text_file(o.out, text);
}

Assignment parse_assigns(const std::vector<std::string>& raw) {
    Assignment a;
    for (const auto& s : raw) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw SpecError("assignment must look like x=0");
        a.push_back({s.substr(0, eq), std::stoi(s.substr(eq + 1))});
    }
    return a;
}

int verdict_exit(const Options& o, bool failed) { return o.strict && failed ? 1 : 0; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-scale model companionship and set-coding workbench"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--sig", o.sig_path, "signature JSON file (default: membership-only)");
        sub->add_option("--out", o.out, "write the JSON report here instead of stdout");
        sub->add_option("--jobs", o.jobs, "parallelism degree (reports do not depend on it)");
        sub->add_option("--seed", o.seed, "seed recorded in the report");
        sub->add_flag("--strict", o.strict, "exit 1 on a refuted/fail verdict");
    };

    auto* classify = app.add_subcommand("classify", "Levy-classify a formula (levy_classify)");
    classify->add_option("--formula", o.formula)->required();
    add_common(classify);

    auto* prenex = app.add_subcommand("prenex", "prenex normal form (to_prenex)");
    prenex->add_option("--formula", o.formula)->required();
    add_common(prenex);

    auto* morley = app.add_subcommand("morleyize", "signature expansion with AX0/AX1 (morleyize)");
    morley->add_option("--select", o.selects, "relation-kind formula (repeatable)");
    morley->add_option("--skolem", o.skolems, "skolem-kind formula (repeatable)");
    add_common(morley);

    auto* eval = app.add_subcommand("eval", "Tarski satisfaction (satisfies)");
    eval->add_option("--formula", o.formula)->required();
    eval->add_option("--structure", o.structures, "structure JSON file")->required();
    eval->add_option("--assign", o.assigns, "x=0 (repeatable)");
    add_common(eval);

    auto* embcmd = app.add_subcommand("embeddings", "embeddings of the first structure into the second");
    embcmd->add_option("--structure", o.structures, "two structure files")->expected(2);
    add_common(embcmd);

    auto* diag = app.add_subcommand("diagram", "atomic diagram (atomic_diagram)");
    diag->add_option("--structure", o.structures)->required();
    add_common(diag);

    auto* enumcmd = app.add_subcommand("enum", "models up to isomorphism (enumerate_structures)");
    enumcmd->add_option("--size", o.size, "size bound");
    enumcmd->add_option("--axiom", o.axioms, "axiom sentence (repeatable)");
    add_common(enumcmd);

    auto* ec = app.add_subcommand("ec", "existential closedness reports (ec_models)");
    ec->add_option("--class", o.classes, "class JSON file")->required();
    ec->add_option("--qrank", o.qrank);
    add_common(ec);

    auto* sep = app.add_subcommand("separate", "Pi1 separator search (pi1_separator)");
    sep->add_option("--class", o.classes, "two class files: T then S")->expected(2);
    sep->add_option("--qrank", o.qrank);
    sep->add_option("--max-vars", o.max_vars);
    add_common(sep);

    auto* mc = app.add_subcommand("modelcomplete",
                                  "Robinson's test surrogate (check_model_complete_bounded)");
    mc->add_option("--class", o.classes)->required();
    mc->add_option("--qrank", o.qrank);
    add_common(mc);

    auto* hull = app.add_subcommand("hull", "Pi2 Kaiser hull (kaiser_hull_pi2)");
    hull->add_option("--class", o.classes)->required();
    hull->add_option("--qrank", o.qrank);
    hull->add_option("--max-vars", o.max_vars);
    add_common(hull);

    auto* ueq = app.add_subcommand("univ-equiv", "universal equivalent (find_universal_equivalent)");
    ueq->add_option("--class", o.classes)->required();
    ueq->add_option("--formula", o.formula)->required();
    ueq->add_option("--qrank", o.qrank);
    add_common(ueq);

    auto* hf = app.add_subcommand("hf", "hereditarily finite sets and codes");
    hf->require_subcommand(1);
    auto* hfenc = hf->add_subcommand("encode", "canonical code of a set (encode)");
    hfenc->add_option("--set", o.set_literal, "HF literal, e.g. {{},{{}}}")->required();
    add_common(hfenc);
    auto* hfdec = hf->add_subcommand("decode", "collapse a code or decode an Ackermann number");
    hfdec->add_option("--code", o.code_path, "pointed code JSON file");
    hfdec->add_option("--n", o.ack, "Ackermann code");
    add_common(hfdec);
    auto* hfeval = hf->add_subcommand("eval", "evaluate over HF(k) (hf_eval)");
    hfeval->add_option("--formula", o.formula)->required();
    hfeval->add_option("--k", o.k);
    hfeval->add_option("--assign", o.assigns, "x={{}} (repeatable)");
    add_common(hfeval);
    auto* hfuni = hf->add_subcommand("universe", "HF(k) in Ackermann order (hf_universe)");
    hfuni->add_option("--k", o.k);
    add_common(hfuni);
    auto* hfquo = hf->add_subcommand("quotient", "by-interpretability check (quotient_check)");
    hfquo->add_option("--m", o.m);
    hfquo->add_option("--k", o.k);
    add_common(hfquo);

    auto* tr = app.add_subcommand("translate", "membership-to-code compilation (translate)");
    tr->add_option("--formula", o.formula)->required();
    add_common(tr);

    auto* vtr = app.add_subcommand("verify-translation",
                                   "exhaustive soundness check (verify_translation)");
    vtr->add_option("--formula", o.formula)->required();
    vtr->add_option("--m", o.m);
    add_common(vtr);

    auto* uform = app.add_subcommand("universal-form", "universal form of a Sigma1 formula");
    uform->add_option("--formula", o.formula)->required();
    uform->add_option("--m", o.m, "also verify the equivalence at this scale");
    add_common(uform);

    auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
    add_common(suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (classify->parsed()) {
            Signature sig = load_sig(o);
            Json j;
            j["config"] = config_block("classify", o);
            j["class"] = levy_classify(parse(o.formula, sig)).str();
            emit(o, j);
            return 0;
        }
        if (prenex->parsed()) {
            Signature sig = load_sig(o);
            Json j;
            j["config"] = config_block("prenex", o);
            j["prenex"] = print(to_prenex(parse(o.formula, sig)));
            emit(o, j);
            return 0;
        }
        if (morley->parsed()) {
            Signature sig = load_sig(o);
            std::vector<std::pair<Formula, bool>> sel;
            for (const auto& s : o.selects) sel.push_back({parse(s, sig), false});
            for (const auto& s : o.skolems) sel.push_back({parse(s, sig), true});
            MorleyizationResult mr = morleyize(sig, sel);
            Json j;
            j["config"] = config_block("morleyize", o);
            j["signature"] = signature_to_json(mr.expanded);
            j["axioms"] = Json::array();
            for (const auto& ax : mr.axioms) j["axioms"].push_back(print(ax));
            Json map = Json::array();
            for (const auto& e : mr.entries)
                map.push_back(Json{{"formula", print(e.source)},
                                   {"kind", e.skolem ? "skolem" : "relation"},
                                   {"symbol", e.symbol}});
            j["map"] = std::move(map);
            emit(o, j);
            return 0;
        }
        if (eval->parsed()) {
            Signature sig = load_sig(o);
            FinStructure m = structure_from_json(load_json_file(o.structures[0]), sig);
            bool v = satisfies(m, parse(o.formula, sig), parse_assigns(o.assigns));
            Json j;
            j["config"] = config_block("eval", o);
            j["value"] = v;
            emit(o, j);
            return 0;
        }
        if (embcmd->parsed()) {
            Signature sig = load_sig(o);
            FinStructure a = structure_from_json(load_json_file(o.structures[0]), sig);
            FinStructure b = structure_from_json(load_json_file(o.structures[1]), sig);
            auto embs = enumerate_embeddings(a, b);
            Json j;
            j["config"] = config_block("embeddings", o);
            j["count"] = static_cast<int>(embs.size());
            j["embeddings"] = Json::array();
            for (const auto& e : embs) j["embeddings"].push_back(e.map);
            emit(o, j);
            return 0;
        }
        if (diag->parsed()) {
            Signature sig = load_sig(o);
            FinStructure m = structure_from_json(load_json_file(o.structures[0]), sig);
            AtomicDiagram d = atomic_diagram(m);
            Json j;
            j["config"] = config_block("diagram", o);
            j["signature"] = signature_to_json(d.expanded_sig);
            j["sentences"] = Json::array();
            for (const auto& s : d.sentences) j["sentences"].push_back(print(s));
            emit(o, j);
            return 0;
        }
        if (enumcmd->parsed()) {
            Signature sig = load_sig(o);
            std::vector<Formula> axs;
            for (const auto& s : o.axioms) axs.push_back(parse(s, sig));
            BoundedClass c = build_class(sig, axs, o.size);
            Json j = class_to_json(c);
            j["config"] = config_block("enum", o);
            emit(o, j);
            return 0;
        }
        if (ec->parsed()) {
            BoundedClass c = class_from_json(load_json_file(o.classes[0]));
            EcOptions opts;
            opts.jobs = o.jobs;
            auto reports = ec_models(c, o.qrank, opts);
            Json j;
            j["config"] = config_block("ec", o);
            j["qrank"] = o.qrank;
            j["reports"] = Json::array();
            bool any_refuted = false;
            for (const auto& r : reports) {
                j["reports"].push_back(ec_report_to_json(r));
                any_refuted = any_refuted || r.verdict == EcVerdict::Refuted;
            }
            emit(o, j);
            return verdict_exit(o, any_refuted);
        }
        if (sep->parsed()) {
            BoundedClass ct = class_from_json(load_json_file(o.classes[0]));
            BoundedClass cs = class_from_json(load_json_file(o.classes[1]));
            EcOptions opts;
            opts.jobs = o.jobs;
            SeparatorReport r = pi1_separator(ct, cs, o.qrank, o.max_vars, opts);
            Json j;
            j["config"] = config_block("separate", o);
            switch (r.kind) {
            case SeparatorReport::Kind::Separator:
                j["kind"] = "separator";
                j["separator"] = print(*r.separator);
                break;
            case SeparatorReport::Kind::AbsentWithEmbedding:
                j["kind"] = "absent-with-embedding";
                j["s_model"] = r.s_model;
                j["t_model"] = r.t_model;
                j["embedding"] = r.embedding.map;
                break;
            case SeparatorReport::Kind::UnknownWithinBounds:
                j["kind"] = "unknown-within-bounds";
                break;
            case SeparatorReport::Kind::CapExceeded:
                j["kind"] = "template-cap-exceeded";
                break;
            }
            emit(o, j);
            return 0;
        }
        if (mc->parsed()) {
            BoundedClass c = class_from_json(load_json_file(o.classes[0]));
            EcOptions opts;
            opts.jobs = o.jobs;
            ModelCompleteReport r = check_model_complete_bounded(c, o.qrank, opts);
            Json j;
            j["config"] = config_block("modelcomplete", o);
            j["pass"] = r.pass;
            if (r.counterexample) j["counterexample"] = ec_report_to_json(*r.counterexample);
            emit(o, j);
            return verdict_exit(o, !r.pass);
        }
        if (hull->parsed()) {
            BoundedClass c = class_from_json(load_json_file(o.classes[0]));
            EcOptions opts;
            opts.jobs = o.jobs;
            KaiserHullReport r = kaiser_hull_pi2(c, o.qrank, o.max_vars, opts);
            Json j;
            j["config"] = config_block("hull", o);
            j["sentences"] = Json::array();
            for (const auto& s : r.sentences) j["sentences"].push_back(print(s));
            emit(o, j);
            return 0;
        }
        if (ueq->parsed()) {
            BoundedClass c = class_from_json(load_json_file(o.classes[0]));
            Formula phi = parse(o.formula, c.sig);
            EcOptions opts;
            opts.jobs = o.jobs;
            UniversalEquivalentReport r = find_universal_equivalent(phi, c, o.qrank, opts);
            Json j;
            j["config"] = config_block("univ-equiv", o);
            j["equivalent"] = r.equivalent ? Json(print(*r.equivalent)) : Json(nullptr);
            j["cap_exceeded"] = r.cap_exceeded;
            emit(o, j);
            return 0;
        }
        if (hfenc->parsed()) {
            HfPool pool;
            int id = pool.parse_literal(o.set_literal);
            Json j = code_to_json(encode(pool, id));
            j["config"] = config_block("hf encode", o);
            emit(o, j);
            return 0;
        }
        if (hfdec->parsed()) {
            HfPool pool;
            Json j;
            j["config"] = config_block("hf decode", o);
            if (!o.code_path.empty()) {
                PointedCode c = code_from_json(load_json_file(o.code_path));
                WfeCheck w = is_wfe(c);
                j["wfe"] = w.ok;
                if (!w.ok)
                    j["reason"] = w.reason;
                else
                    j["set"] = pool.literal(collapse(pool, c));
            } else if (o.ack >= 0) {
                j["set"] = pool.literal(pool.ackermann_decode(static_cast<std::uint64_t>(o.ack)));
            } else {
                throw SpecError("hf decode needs --code or --n");
            }
            emit(o, j);
            return 0;
        }
        if (hfeval->parsed()) {
            HfPool pool;
            Signature msig = Signature::membership_only();
            Formula f = parse(o.formula, msig);
            Assignment raw;
            std::vector<std::pair<std::string, int>> assign;
            for (const auto& s : o.assigns) {
                auto eq = s.find('=');
                if (eq == std::string::npos) throw SpecError("assignment must look like x={{}}");
                assign.push_back({s.substr(0, eq), pool.parse_literal(s.substr(eq + 1))});
            }
            (void)raw;
            bool v = hf_eval(pool, f, o.k, assign);
            Json j;
            j["config"] = config_block("hf eval", o);
            j["k"] = o.k;
            j["value"] = v;
            emit(o, j);
            return 0;
        }
        if (hfuni->parsed()) {
            HfPool pool;
            Json j;
            j["config"] = config_block("hf universe", o);
            j["k"] = o.k;
            j["sets"] = Json::array();
            for (int id : pool.universe(o.k)) j["sets"].push_back(pool.literal(id));
            emit(o, j);
            return 0;
        }
        if (hfquo->parsed()) {
            HfPool pool;
            QuotientReport r = quotient_check(pool, o.m, o.k);
            Json j;
            j["config"] = config_block("hf quotient", o);
            j["m"] = o.m;
            j["k"] = o.k;
            j["pass"] = r.pass;
            j["codes"] = r.total_codes;
            j["classes"] = r.classes;
            j["sets"] = Json::array();
            for (int id : r.class_sets) j["sets"].push_back(pool.literal(id));
            j["checks"] = Json{{"dual_path_equal", r.dual_path_equal_ok},
                               {"dual_path_mem", r.dual_path_mem_ok},
                               {"equivalence", r.equivalence_ok},
                               {"congruence", r.congruence_ok},
                               {"matches_reference", r.matches_reference_ok}};
            if (!r.detail.empty()) j["detail"] = r.detail;
            emit(o, j);
            return verdict_exit(o, !r.pass);
        }
        if (tr->parsed()) {
            Signature msig = Signature::membership_only();
            Formula f = parse(o.formula, msig);
            Json j;
            j["config"] = config_block("translate", o);
            j["translation"] = print(translate(f));
            emit(o, j);
            return 0;
        }
        if (vtr->parsed()) {
            HfPool pool;
            Signature msig = Signature::membership_only();
            Formula f = parse(o.formula, msig);
            VerifyReport r = verify_translation(pool, f, o.m);
            Json j;
            j["config"] = config_block("verify-translation", o);
            j["m"] = o.m;
            j["pass"] = r.pass;
            j["assignments"] = r.assignments_checked;
            if (!r.pass) {
                Json ce = Json::object();
                for (const auto& [v, id] : r.counterexample) ce[v] = pool.literal(id);
                j["counterexample"] = std::move(ce);
                j["membership_side_value"] = r.lhs_value;
            }
            emit(o, j);
            return verdict_exit(o, !r.pass);
        }
        if (uform->parsed()) {
            HfPool pool;
            Signature msig = Signature::membership_only();
            Formula f = parse(o.formula, msig);
            UniversalForm uf = universal_form(f);
            Json j;
            j["config"] = config_block("universal-form", o);
            j["universal_form"] = print(uf.formula);
            j["signature"] = signature_to_json(uf.hybrid_sig);
            VerifyReport r = verify_universal_form(pool, f, o.m);
            j["equivalence_checked_at_m"] = o.m;
            j["pass"] = r.pass;
            emit(o, j);
            return verdict_exit(o, !r.pass);
        }
        if (suite->parsed()) {
            SuiteOptions sopts;
            sopts.jobs = o.jobs;
            sopts.seed = o.seed;
            auto results = run_acceptance_suite(sopts);
            std::cout << suite_lines(results);
            bool all = true;
            for (const auto& r : results) all = all && r.pass;
            if (!o.out.empty()) write_text_file(o.out, suite_report(results, sopts).dump(2) + "\n");
            return verdict_exit(o, !all);
        }
    } catch (const GuardError& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

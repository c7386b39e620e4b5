#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <optional>
#include <random>

#include "modelth/embed.hpp"
#include "modelth/enumerate.hpp"
#include "modelth/errors.hpp"
#include "modelth/json_io.hpp"
#include "modelth/structure.hpp"
#include "modelth/suite.hpp"

using namespace modelth;

static FinStructure path3() { return FinStructure::graph(3, {{0, 1}, {1, 2}}); }
static FinStructure k2() { return FinStructure::graph(2, {{0, 1}}); }
static FinStructure k3() { return FinStructure::graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

TEST_CASE("satisfaction on the documented graphs") {
    Signature g = Signature::graph();
    FinStructure p3 = path3();
    CHECK(satisfies(p3, parse("(exists x (exists y (E x y)))", g)));
    CHECK(satisfies(p3, parse("(forall x (exists y (E x y)))", g)));
    FinStructure lonely = FinStructure::graph(2, {});
    CHECK_FALSE(satisfies(lonely, parse("(forall x (exists y (E x y)))", g)));
    CHECK_THROWS_AS(satisfies(p3, parse("(E x y)", g), {}), SpecError); // unassigned variable
}

TEST_CASE("bounded quantifiers need a membership symbol") {
    Signature g = Signature::graph();
    Formula f = Formula::bounded_forall("w", Term::var("x"), Formula::atom("E", {Term::var("w"), Term::var("x")}));
    FinStructure p3 = path3();
    CHECK_THROWS_AS(satisfies(p3, f, {{"x", 0}}), SpecError);
}

namespace {

// an independently written evaluator: compiles to closures over a map-based
// environment instead of walking the tree with an assignment vector
using Env = std::map<std::string, int>;

std::function<int(const FinStructure&, Env&)> compile_term(const Term& t) {
    if (t.kind == TermKind::Variable)
        return [name = t.name](const FinStructure&, Env& e) { return e.at(name); };
    std::vector<std::function<int(const FinStructure&, Env&)>> args;
    for (const auto& a : t.args) args.push_back(compile_term(a));
    return [name = t.name, args](const FinStructure& m, Env& e) {
        std::vector<int> vals;
        for (const auto& a : args) vals.push_back(a(m, e));
        return m.func_value(name, vals);
    };
}

bool eval2(const FinStructure& m, const Formula& f, Env& env) {
    switch (f.kind) {
    case FKind::Atom: {
        std::vector<int> vals;
        for (const auto& t : f.terms) vals.push_back(compile_term(t)(m, env));
        return m.rel_holds(f.sym, vals);
    }
    case FKind::Equal:
        return compile_term(f.terms[0])(m, env) == compile_term(f.terms[1])(m, env);
    case FKind::Member:
        return m.rel_holds(*m.sig.membership, {compile_term(f.terms[0])(m, env),
                                               compile_term(f.terms[1])(m, env)});
    case FKind::Not:
        return !eval2(m, f.sub[0], env);
    case FKind::And:
        return eval2(m, f.sub[0], env) && eval2(m, f.sub[1], env);
    case FKind::Or:
        return eval2(m, f.sub[0], env) || eval2(m, f.sub[1], env);
    case FKind::Implies:
        return !eval2(m, f.sub[0], env) || eval2(m, f.sub[1], env);
    case FKind::Iff:
        return eval2(m, f.sub[0], env) == eval2(m, f.sub[1], env);
    case FKind::Forall: {
        auto saved = env.find(f.sym) != env.end() ? std::optional<int>(env[f.sym]) : std::nullopt;
        for (int v = 0; v < m.size; v++) {
            env[f.sym] = v;
            if (!eval2(m, f.sub[0], env)) {
                if (saved) env[f.sym] = *saved; else env.erase(f.sym);
                return false;
            }
        }
        if (saved) env[f.sym] = *saved; else env.erase(f.sym);
        return true;
    }
    case FKind::Exists: {
        auto saved = env.find(f.sym) != env.end() ? std::optional<int>(env[f.sym]) : std::nullopt;
        for (int v = 0; v < m.size; v++) {
            env[f.sym] = v;
            if (eval2(m, f.sub[0], env)) {
                if (saved) env[f.sym] = *saved; else env.erase(f.sym);
                return true;
            }
        }
        if (saved) env[f.sym] = *saved; else env.erase(f.sym);
        return false;
    }
    case FKind::BoundedForall:
    case FKind::BoundedExists: {
        int bound = compile_term(f.terms[0])(m, env);
        bool want = f.kind == FKind::BoundedExists;
        auto saved = env.find(f.sym) != env.end() ? std::optional<int>(env[f.sym]) : std::nullopt;
        bool result = !want;
        for (int v = 0; v < m.size; v++) {
            if (!m.rel_holds(*m.sig.membership, {v, bound})) continue;
            env[f.sym] = v;
            if (eval2(m, f.sub[0], env) == want) {
                result = want;
                break;
            }
        }
        if (saved) env[f.sym] = *saved; else env.erase(f.sym);
        return result;
    }
    }
    return false;
}

Formula random_closed(std::mt19937_64& rng, int depth, std::vector<std::string> scope) {
    auto var = [&]() -> Term {
        std::uniform_int_distribution<std::size_t> d(0, scope.size() - 1);
        return Term::var(scope[d(rng)]);
    };
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
    switch (pick(rng)) {
    case 0:
        return Formula::atom("E", {var(), var()});
    case 1:
        return Formula::equal(var(), var());
    case 2:
        return Formula::lnot(random_closed(rng, depth - 1, scope));
    case 3:
        return Formula::land(random_closed(rng, depth - 1, scope),
                             random_closed(rng, depth - 1, scope));
    case 4:
        return Formula::lor(random_closed(rng, depth - 1, scope),
                            random_closed(rng, depth - 1, scope));
    case 5:
        return Formula::iff(random_closed(rng, depth - 1, scope),
                            random_closed(rng, depth - 1, scope));
    case 6: {
        std::string v = "b" + std::to_string(scope.size());
        scope.push_back(v);
        return Formula::forall(v, random_closed(rng, depth - 1, scope));
    }
    default: {
        std::string v = "b" + std::to_string(scope.size());
        scope.push_back(v);
        return Formula::exists(v, random_closed(rng, depth - 1, scope));
    }
    }
}

} // namespace

TEST_CASE("the two evaluators agree on 200 random structure/formula pairs") {
    std::mt19937_64 rng(90217 /* recorded seed */);
    for (int i = 0; i < 200; i++) {
        std::uniform_int_distribution<int> sz(1, 4);
        int n = sz(rng);
        FinStructure m = FinStructure::empty(Signature::graph(), n);
        for (int a = 0; a < n; a++)
            for (int b = 0; b < n; b++)
                if (rng() & 1) m.set_rel("E", {a, b}, true);
        Formula f = random_closed(rng, 4, {"x", "y"});
        std::uniform_int_distribution<int> el(0, n - 1);
        int x = el(rng), y = el(rng);
        Env env{{"x", x}, {"y", y}};
        CHECK(satisfies(m, f, {{"x", x}, {"y", y}}) == eval2(m, f, env));
    }
}

TEST_CASE("embedding counts from the lemma examples") {
    CHECK(enumerate_embeddings(k2(), path3()).size() == 4);
    CHECK(enumerate_embeddings(k2(), k2()).size() == 2);
    CHECK(enumerate_embeddings(k3(), path3()).empty());
}

TEST_CASE("embeddings compose") {
    FinStructure a = k2();
    FinStructure b = path3();
    FinStructure c = FinStructure::graph(4, {{0, 1}, {1, 2}, {2, 3}});
    for (const auto& e : enumerate_embeddings(a, b))
        for (const auto& g : enumerate_embeddings(b, c)) {
            std::vector<int> comp(a.size);
            for (int i = 0; i < a.size; i++) comp[i] = g.map[e.map[i]];
            CHECK(is_embedding(a, c, comp));
        }
}

TEST_CASE("atomic diagram contents") {
    AtomicDiagram d2 = atomic_diagram(k2());
    CHECK(d2.sentences.size() == 5);
    FinStructure single = FinStructure::graph(1, {});
    AtomicDiagram d1 = atomic_diagram(single);
    REQUIRE(d1.sentences.size() == 1);
    CHECK(print(d1.sentences[0]) == "(not (E (c0) (c0)))");
    AtomicDiagram d3 = atomic_diagram(path3());
    CHECK(d3.sentences.size() == 12); // 9 edge literals + 3 distinctness literals
}

TEST_CASE("diagram correctness: modeling the diagram is exactly being an embedding") {
    std::vector<FinStructure> graphs = {
        FinStructure::graph(1, {}),           FinStructure::graph(2, {}),
        k2(),                                 FinStructure::graph(3, {}),
        FinStructure::graph(3, {{0, 1}}),     path3(),
        k3(),
    };
    for (const auto& m : graphs)
        for (const auto& n : graphs) {
            AtomicDiagram d = atomic_diagram(m);
            // all maps m -> n, not only the injective ones
            int total = 1;
            for (int i = 0; i < m.size; i++) total *= n.size;
            for (int code = 0; code < total; code++) {
                std::vector<int> map(m.size);
                int rem = code;
                for (int i = 0; i < m.size; i++) {
                    map[i] = rem % n.size;
                    rem /= n.size;
                }
                FinStructure expanded = FinStructure::empty(d.expanded_sig, n.size);
                expanded.relations = n.relations;
                for (int i = 0; i < m.size; i++)
                    expanded.set_func("c" + std::to_string(i), {}, map[i]);
                CHECK(satisfies_all(expanded, d.sentences) == is_embedding(m, n, map));
            }
        }
}

TEST_CASE("structure enumeration counts") {
    Signature g = Signature::graph();
    auto axioms = graph_axioms(g);
    auto upto3 = enumerate_structures(g, 3, axioms);
    CHECK(upto3.size() == 7); // 1 + 2 + 4
    int exactly3 = 0;
    for (const auto& m : upto3)
        if (m.size == 3) exactly3++;
    CHECK(exactly3 == 4);

    // linear orders of size 3: one isomorphism class
    Signature lo;
    lo.relations.push_back({"L", 2});
    std::vector<Formula> lax = {
        parse("(forall x (not (L x x)))", lo),
        parse("(forall x (forall y (-> (L x y) (not (L y x)))))", lo),
        parse("(forall x (forall y (or (= x y) (or (L x y) (L y x)))))", lo),
        parse("(forall x (forall y (forall z (-> (and (L x y) (L y z)) (L x z)))))", lo),
    };
    auto orders = enumerate_structures(lo, 3, lax);
    int size3 = 0;
    for (const auto& m : orders)
        if (m.size == 3) size3++;
    CHECK(size3 == 1);

    // an unsatisfiable axiom empties the class
    auto none = enumerate_structures(g, 3, {parse("(exists x (not (= x x)))", g)});
    CHECK(none.empty());

    // pure equality: one class per size
    Signature eqsig = Signature::pure_equality();
    CHECK(enumerate_structures(eqsig, 2, {}).size() == 2);
}

TEST_CASE("enumeration output is canonical and duplicate-free") {
    Signature g = Signature::graph();
    auto models = enumerate_structures(g, 3, graph_axioms(g));
    for (std::size_t i = 0; i + 1 < models.size(); i++) {
        bool ordered = models[i].size < models[i + 1].size ||
                       models[i].encoding() < models[i + 1].encoding();
        CHECK(ordered);
    }
    for (const auto& m : models) CHECK(m.canonical_form().encoding() == m.encoding());
}

TEST_CASE("elementarity checks up to templates") {
    FinStructure m = k2();
    FinStructure p3 = path3();
    // identity embedding is elementary at every supported level
    Embedding id{{0, 1}};
    CHECK(is_elementary_up_to(m, m, id, LevyClass::sigma(1), 1).status == ElemStatus::Confirmed);
    CHECK(is_elementary_up_to(m, m, id, LevyClass::delta0(), 1).status == ElemStatus::Confirmed);

    // K2 onto an edge of P3 is not Sigma1-elementary; the report self-verifies
    Embedding onto{{0, 1}};
    ElemReport r = is_elementary_up_to(m, p3, onto, LevyClass::sigma(1), 1);
    REQUIRE(r.status == ElemStatus::Refuted);
    REQUIRE(r.witness.has_value());
    Assignment image;
    for (const auto& [v, e] : r.assignment) image.push_back({v, onto.map[e]});
    CHECK(satisfies(p3, *r.witness, image) != satisfies(m, *r.witness, r.assignment));

    // one edgeless vertex into two: the least witness is the inequality formula
    FinStructure one = FinStructure::graph(1, {});
    FinStructure two = FinStructure::graph(2, {});
    ElemReport r2 = is_elementary_up_to(one, two, Embedding{{0}}, LevyClass::sigma(1), 1);
    REQUIRE(r2.status == ElemStatus::Refuted);
    CHECK(print(*r2.witness) == "(exists y (not (= y x)))");

    // Sigma2 templates need two quantifiers; at qrank 1 the check is honest
    // about being out of budget rather than claiming a verdict
    CHECK(is_elementary_up_to(m, m, id, LevyClass::sigma(2), 1).status ==
          ElemStatus::CapExceeded);
    CHECK(is_elementary_up_to(m, m, id, LevyClass::sigma(2), 2).status ==
          ElemStatus::Confirmed);
    CHECK(is_elementary_up_to(m, m, id, LevyClass::sigma(3), 2).status ==
          ElemStatus::CapExceeded);
}

TEST_CASE("cost guards") {
    Signature fsig;
    fsig.functions.push_back({"f", 1});
    CHECK_THROWS_AS(enumerate_structures(fsig, 6, {}), GuardError);
    Signature g = Signature::graph();
    EnumConfig tight;
    tight.leaf_cap = 3;
    CHECK_THROWS_AS(enumerate_structures(g, 3, {}, tight), GuardError);
}

TEST_CASE("structure and class files round-trip through JSON") {
    Signature g = Signature::graph();
    FinStructure p3 = path3();
    CHECK(structure_from_json(structure_to_json(p3), g) == p3);

    Signature withf = g;
    withf.functions.push_back({"f", 1});
    FinStructure m = FinStructure::empty(withf, 3);
    m.set_rel("E", {0, 2}, true);
    m.set_func("f", {0}, 2);
    m.set_func("f", {1}, 1);
    m.set_func("f", {2}, 0);
    CHECK(structure_from_json(structure_to_json(m), withf) == m);
    CHECK(signature_from_json(signature_to_json(withf)) == withf);

    BoundedClass c = build_class(g, graph_axioms(g), 3);
    BoundedClass back = class_from_json(class_to_json(c));
    CHECK(back.models == c.models);
    CHECK(back.axioms == c.axioms);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modelth/errors.hpp"
#include "modelth/morley.hpp"
#include "modelth/structure.hpp"
#include "modelth/suite.hpp"

using namespace modelth;

static FinStructure path3() { return FinStructure::graph(3, {{0, 1}, {1, 2}}); }

TEST_CASE("relation-kind selection emits R_0 and the biconditional axiom") {
    Signature g = Signature::graph();
    MorleyizationResult mr = morleyize(g, {{parse("(exists y (E x y))", g), false}});
    CHECK(mr.expanded.relation_arity("R_0") == 1);
    REQUIRE(mr.axioms.size() == 1);
    CHECK(print(mr.axioms[0]) == "(forall x (iff (exists y (E x y)) (R_0 x)))");
}

TEST_CASE("empty selection changes nothing") {
    Signature g = Signature::graph();
    MorleyizationResult mr = morleyize(g, {});
    CHECK(mr.expanded == g);
    CHECK(mr.axioms.empty());
}

TEST_CASE("skolem selection emits f_0 and the witness axiom") {
    Signature g = Signature::graph();
    // witness slot is the first free variable: here y, parameter x
    MorleyizationResult mr = morleyize(g, {{parse("(E y x)", g), true}});
    CHECK(mr.expanded.function_arity("f_0") == 1);
    REQUIRE(mr.axioms.size() == 1);
    CHECK(print(mr.axioms[0]) == "(forall x (-> (exists y (E y x)) (E (f_0 x) x)))");
}

TEST_CASE("selection errors") {
    Signature g = Signature::graph();
    Formula phi = parse("(exists y (E x y))", g);
    CHECK_THROWS_AS(morleyize(g, {{phi, false}, {phi, false}}), SpecError); // duplicate
    Formula sentence = parse("(exists x (exists y (E x y)))", g);
    CHECK_THROWS_AS(morleyize(g, {{sentence, true}}), SpecError); // skolem needs a free variable
}

TEST_CASE("expand_morley fixes the documented interpretations") {
    Signature g = Signature::graph();
    FinStructure p3 = path3();

    MorleyizationResult rel = morleyize(g, {{parse("(exists y (E x y))", g), false}});
    FinStructure p3r = expand_morley(p3, rel);
    for (int v = 0; v < 3; v++) CHECK(p3r.rel_holds("R_0", {v}));

    MorleyizationResult sko = morleyize(g, {{parse("(E y x)", g), true}});
    FinStructure p3s = expand_morley(p3, sko);
    CHECK(p3s.func_value("f_0", {0}) == 1);
    CHECK(p3s.func_value("f_0", {1}) == 0);
    CHECK(p3s.func_value("f_0", {2}) == 1);

    FinStructure edgeless = FinStructure::graph(3, {});
    FinStructure es = expand_morley(edgeless, sko);
    for (int a = 0; a < 3; a++) CHECK(es.func_value("f_0", {a}) == a); // no-witness default
}

TEST_CASE("the expansion satisfies every emitted axiom on all graphs up to 3") {
    Signature g = Signature::graph();
    std::vector<std::pair<Formula, bool>> sel = {
        {parse("(exists y (E x y))", g), false},
        {parse("(exists z (and (E x z) (E y z)))", g), false},
        {parse("(E y x)", g), true},
    };
    MorleyizationResult mr = morleyize(g, sel);
    for (const auto& m : enumerate_structures(g, 3, graph_axioms(g))) {
        FinStructure e = expand_morley(m, mr);
        CHECK(satisfies_all(e, mr.axioms));
        // the selected formula becomes equivalent to its atom
        for (int v = 0; v < m.size; v++)
            CHECK(satisfies(m, sel[0].first, {{"x", v}}) == e.rel_holds("R_0", {v}));
    }
}

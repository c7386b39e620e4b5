#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modelth/errors.hpp"
#include "modelth/formula.hpp"
#include "modelth/suite.hpp"

using namespace modelth;

static Signature graph_sig_with_fn() {
    Signature s = Signature::graph();
    s.relations.push_back({"P", 1});
    s.functions.push_back({"f", 1});
    s.functions.push_back({"c", 0});
    return s;
}

TEST_CASE("single atoms parse to the expected nodes") {
    Signature msig = Signature::membership_only();
    Formula f = parse("(in x y)", msig);
    CHECK(f.kind == FKind::Member);
    CHECK(print(f) == "(in x y)");
    CHECK(free_vars(f) == std::vector<std::string>{"x", "y"});

    Formula b = parse("(forall-in w x (in w y))", msig);
    CHECK(b.kind == FKind::BoundedForall);
    CHECK(b.sym == "w");
    CHECK(b.terms[0] == Term::var("x"));
    CHECK(b.sub[0].kind == FKind::Member);
}

TEST_CASE("kuratowski pair text parses with prefix exists-exists") {
    Signature msig = Signature::membership_only();
    Formula f = parse(kuratowski_pair_text(), msig);
    CHECK(f.kind == FKind::Exists);
    CHECK(f.sym == "t");
    CHECK(f.sub[0].kind == FKind::Exists);
    CHECK(f.sub[0].sym == "u");
    CHECK(free_vars(f) == std::vector<std::string>{"x", "y", "z"});
}

TEST_CASE("print round-trips hand-written formulas") {
    Signature msig = Signature::membership_only();
    for (const char* text : {"(in x y)", "(not (= x x))", "(forall x (exists y (in x y)))",
                             "(exists-in u w (in u y))", "(-> (in x y) (iff (= x y) (in y x)))"}) {
        Formula f = parse(text, msig);
        CHECK(print(f) == text);
        CHECK(parse(print(f), msig) == f);
    }
}

TEST_CASE("parse errors carry byte offsets and name the violation") {
    Signature msig = Signature::membership_only();
    CHECK_THROWS_AS(parse("(in x", msig), ParseError);
    CHECK_THROWS_AS(parse("(undeclared x y)", msig), ParseError);
    CHECK_THROWS_AS(parse("(in x y z)", msig), ParseError);
    CHECK_THROWS_AS(parse("(forall-in w w (in w y))", msig), ParseError); // bound term uses w
    try {
        parse("(in x", msig);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.offset() == 5);
    }
}

TEST_CASE("function terms and constants") {
    Signature s = graph_sig_with_fn();
    Formula f = parse("(E (f x) (c))", s);
    CHECK(print(f) == "(E (f x) (c))");
    CHECK(free_vars(f) == std::vector<std::string>{"x"});
    CHECK_THROWS_AS(parse("(E (f x y) x)", s), ParseError); // arity mismatch
}

namespace {

// random formula generator shared by the round-trip and prenex property tests
Formula random_formula(std::mt19937_64& rng, const Signature& sig, int depth,
                       std::vector<std::string> scope) {
    auto var = [&]() -> Term {
        if (scope.empty()) return Term::var("x");
        std::uniform_int_distribution<std::size_t> d(0, scope.size() - 1);
        return Term::var(scope[d(rng)]);
    };
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 8);
    switch (pick(rng)) {
    case 0:
        return Formula::atom("E", {var(), var()});
    case 1:
        return Formula::equal(var(), var());
    case 2:
        return Formula::atom("P", {var()});
    case 3:
        return Formula::lnot(random_formula(rng, sig, depth - 1, scope));
    case 4:
        return Formula::land(random_formula(rng, sig, depth - 1, scope),
                             random_formula(rng, sig, depth - 1, scope));
    case 5:
        return Formula::lor(random_formula(rng, sig, depth - 1, scope),
                            random_formula(rng, sig, depth - 1, scope));
    case 6:
        return Formula::implies(random_formula(rng, sig, depth - 1, scope),
                                random_formula(rng, sig, depth - 1, scope));
    case 7: {
        std::string v = "q" + std::to_string(scope.size());
        scope.push_back(v);
        return Formula::forall(v, random_formula(rng, sig, depth - 1, scope));
    }
    default: {
        std::string v = "q" + std::to_string(scope.size());
        scope.push_back(v);
        return Formula::exists(v, random_formula(rng, sig, depth - 1, scope));
    }
    }
}

} // namespace

TEST_CASE("parse/print round-trip on a generated corpus of 50 formulas") {
    Signature sig = Signature::graph();
    sig.relations.push_back({"P", 1});
    std::mt19937_64 rng(20240 /* seed recorded here for reproducibility */);
    for (int i = 0; i < 50; i++) {
        Formula f = random_formula(rng, sig, 4, {"x", "y"});
        CHECK(parse(print(f), sig) == f);
    }
}

TEST_CASE("normalize_bound renames only on clashes") {
    Signature msig = Signature::membership_only();
    Formula clean = parse("(forall a (exists b (in a b)))", msig);
    CHECK(normalize_bound(clean) == clean);

    Formula clash = parse("(and (forall a (in a x)) (forall a (in x a)))", msig);
    Formula fixed = normalize_bound(clash);
    CHECK(fixed.sub[0].sym != fixed.sub[1].sym);
}

TEST_CASE("capture-avoiding substitution") {
    Signature s = graph_sig_with_fn();
    // substituting f(y) for x under a quantifier binding y must rename the binder
    Formula f = parse("(exists y (E x y))", s);
    Formula g = subst(f, "x", Term::app("f", {Term::var("y")}));
    CHECK(free_vars(g) == std::vector<std::string>{"y"});
    CHECK(g.sym != "y");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modelth/levy.hpp"
#include "modelth/structure.hpp"
#include "modelth/suite.hpp"

using namespace modelth;

TEST_CASE("classification of the documented shapes") {
    Signature msig = Signature::membership_only();
    CHECK(levy_classify(parse("(forall-in w x (in w y))", msig)) == LevyClass::delta0());
    CHECK(levy_classify(parse(kuratowski_pair_text(), msig)) == LevyClass::sigma(2));
    CHECK(levy_classify(parse("(forall x (exists y (in x y)))", msig)) == LevyClass::pi(2));
    CHECK(levy_classify(parse("(exists y (in x y))", msig)) == LevyClass::sigma(1));
    CHECK(levy_classify(parse("(in x y)", msig)) == LevyClass::delta0());
}

TEST_CASE("Sigma(0) and Pi(0) normalize to Delta0") {
    CHECK(LevyClass::sigma(0) == LevyClass::delta0());
    CHECK(LevyClass::pi(0) == LevyClass::delta0());
}

TEST_CASE("prenex merges conjunction prefixes") {
    Signature sig = Signature::graph();
    sig.relations.push_back({"P", 1});
    sig.relations.push_back({"Q", 1});
    Formula f = parse("(and (forall x (P x)) (exists y (Q y)))", sig);
    CHECK(print(to_prenex(f)) == "(forall x (exists y (and (P x) (Q y))))");
}

TEST_CASE("already-prenex input is unchanged") {
    Signature sig = Signature::graph();
    sig.relations.push_back({"P", 1});
    sig.relations.push_back({"Q", 1});
    for (const char* text :
         {"(forall x (exists y (and (P x) (Q y))))", "(exists y (Q y))", "(P x)",
          "(forall x (forall y (-> (E x y) (E y x))))"}) {
        Formula f = parse(text, sig);
        CHECK(to_prenex(f) == f);
    }
}

TEST_CASE("bounded quantifiers stay in the matrix when Delta0") {
    Signature msig = Signature::membership_only();
    Formula f = parse("(forall-in w x (in w y))", msig);
    CHECK(to_prenex(f) == f);
    // an unbounded quantifier under a bounded one forces a desugaring
    Formula g = parse("(forall-in w x (exists v (in w v)))", msig);
    LevyClass c = levy_classify(g);
    CHECK(c.level() >= 1);
}

TEST_CASE("double negation does not change the class") {
    Signature msig = Signature::membership_only();
    for (const char* text : {"(exists y (in x y))", "(forall x (exists y (in x y)))",
                             "(forall-in w x (in w y))", "(not (exists y (forall z (in z y))))"}) {
        Formula f = parse(text, msig);
        Formula nn = Formula::lnot(Formula::lnot(f));
        CHECK(levy_classify(nn) == levy_classify(f));
    }
}

namespace {

Formula random_quantified(std::mt19937_64& rng, int depth, std::vector<std::string> scope) {
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
        return Formula::lnot(random_quantified(rng, depth - 1, scope));
    case 3:
        return Formula::land(random_quantified(rng, depth - 1, scope),
                             random_quantified(rng, depth - 1, scope));
    case 4:
        return Formula::lor(random_quantified(rng, depth - 1, scope),
                            random_quantified(rng, depth - 1, scope));
    case 5:
        return Formula::iff(random_quantified(rng, depth - 1, scope),
                            random_quantified(rng, depth - 1, scope));
    case 6: {
        std::string v = "q" + std::to_string(scope.size());
        scope.push_back(v);
        return Formula::forall(v, random_quantified(rng, depth - 1, scope));
    }
    default: {
        std::string v = "q" + std::to_string(scope.size());
        scope.push_back(v);
        return Formula::exists(v, random_quantified(rng, depth - 1, scope));
    }
    }
}

std::vector<FinStructure> small_graphs() {
    return {
        FinStructure::graph(1, {}),
        FinStructure::graph(2, {}),
        FinStructure::graph(2, {{0, 1}}),
        FinStructure::graph(3, {{0, 1}}),
        FinStructure::graph(3, {{0, 1}, {1, 2}}),
        FinStructure::graph(3, {{0, 1}, {1, 2}, {0, 2}}),
        FinStructure::graph(4, {{0, 1}, {2, 3}}),
        FinStructure::graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}),
    };
}

} // namespace

TEST_CASE("to_prenex preserves satisfaction on structures of size <= 4") {
    std::mt19937_64 rng(7311 /* recorded seed */);
    auto graphs = small_graphs();
    for (int i = 0; i < 120; i++) {
        Formula f = random_quantified(rng, 4, {"x", "y"});
        Formula p = to_prenex(f);
        for (const auto& m : graphs) {
            for (int a = 0; a < m.size; a++)
                for (int b = 0; b < m.size; b++) {
                    Assignment asg = {{"x", a}, {"y", b}};
                    CAPTURE(print(f));
                    CHECK(satisfies(m, f, asg) == satisfies(m, p, asg));
                }
        }
    }
}

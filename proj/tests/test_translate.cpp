#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modelth/errors.hpp"
#include "modelth/levy.hpp"
#include "modelth/suite.hpp"
#include "modelth/translate.hpp"

using namespace modelth;

TEST_CASE("the translation clauses produce the documented shapes") {
    Signature msig = Signature::membership_only();
    CHECK(print(translate(parse("(= x y)", msig))) ==
          "(and (WFE x) (and (WFE y) (EQ x y)))");
    CHECK(print(translate(parse("(in x y)", msig))) ==
          "(and (WFE x) (and (WFE y) (MEM x y)))");
    CHECK(print(translate(parse("(exists y (in x y))", msig))) ==
          "(exists y (and (and (WFE x) (and (WFE y) (MEM x y))) (WFE y)))");
    CHECK(print(translate(parse("(forall y (in y x))", msig))) ==
          "(forall y (-> (WFE y) (and (WFE y) (and (WFE x) (MEM y x)))))");
}

TEST_CASE("bounded quantifiers are desugared before translation") {
    Signature msig = Signature::membership_only();
    Formula bounded = parse("(forall-in w x (in w y))", msig);
    Formula unbounded = parse("(forall w (-> (in w x) (in w y)))", msig);
    CHECK(translate(bounded) == translate(unbounded));
}

TEST_CASE("foreign relation symbols are rejected") {
    Signature g = Signature::graph();
    g.relations.push_back({"in", 2});
    g.membership = "in";
    CHECK_THROWS_AS(translate(parse("(E x y)", g)), SpecError);
}

TEST_CASE("code structure universes and WFE extensions") {
    HfPool pool;
    CodeStructure m1 = build_code_structure(pool, 1);
    CHECK(m1.universe_size() == 2);
    CHECK(m1.valid().size() == 1); // the loop relation is a cycle
    CodeStructure m2 = build_code_structure(pool, 2);
    CHECK(m2.universe_size() == 16);
    CHECK(m2.valid().size() == 2); // the empty relation (junk-trimmed) and {(1,0)}
    CodeStructure m3 = build_code_structure(pool, 3);
    for (std::uint64_t r : m3.valid()) CHECK(m3.eq(r, r));
    CHECK_THROWS_AS(build_code_structure(pool, 6), GuardError);
}

TEST_CASE("EQ is an equivalence on WFE and MEM respects it") {
    HfPool pool;
    CodeStructure cs = build_code_structure(pool, 3);
    const auto& v = cs.valid();
    for (auto r : v) {
        CHECK(cs.eq(r, r));
        for (auto s2 : v) {
            CHECK(cs.eq(r, s2) == cs.eq(s2, r));
            CHECK(cs.eq(r, s2) == cs.eq_raw(r, s2)); // guarded and raw agree on WFE pairs
            CHECK(cs.mem(r, s2) == cs.mem_raw(r, s2));
            for (auto t : v) {
                if (cs.eq(r, s2) && cs.eq(s2, t)) CHECK(cs.eq(r, t));
                if (cs.eq(r, s2)) CHECK(cs.mem(r, t) == cs.mem(s2, t));
                if (cs.eq(r, s2)) CHECK(cs.mem(t, r) == cs.mem(t, s2));
            }
        }
    }
}

TEST_CASE("quotient and brute evaluation agree on small scales") {
    HfPool pool;
    Signature msig = Signature::membership_only();
    for (const char* text : {"(forall w (-> (in w x) (in w y)))", "(exists u (in u x))",
                             "(forall w (not (in w x)))"}) {
        Formula f = parse(text, msig);
        for (int m = 2; m <= 3; m++) {
            VerifyReport q = verify_translation(pool, f, m);
            VerifyReport b = verify_translation(pool, f, m, GuardMode::Official, false, true);
            CHECK(q.pass == b.pass);
        }
    }
}

TEST_CASE("verify_translation passes for subseteq and fails for a broken guard") {
    HfPool pool;
    Signature msig = Signature::membership_only();
    Formula sub = parse("(forall w (-> (in w x) (in w y)))", msig);
    CHECK(verify_translation(pool, sub, 3).pass);

    VerifyReport m1 =
        verify_translation(pool, parse("(exists y (not (= y y)))", msig), 3,
                           GuardMode::DropExistsGuard);
    CHECK_FALSE(m1.pass);
    VerifyReport m2 = verify_translation(pool, parse("(forall y (= y y))", msig), 3,
                                         GuardMode::DropForallGuard);
    CHECK_FALSE(m2.pass);
}

TEST_CASE("atom guards confine the translated atoms to WFE tuples") {
    HfPool pool;
    CodeStructure cs = build_code_structure(pool, 2);
    CHECK(atomic_confinement(cs, GuardMode::Official, true).pass);
    ConfinementReport broken = atomic_confinement(cs, GuardMode::DropAtomGuards, true);
    CHECK_FALSE(broken.pass);
}

TEST_CASE("universal form shapes") {
    Signature msig = Signature::membership_only();
    UniversalForm uf = universal_form(parse("(exists y (in y x))", msig));
    CHECK(print(uf.formula) == "(forall r (-> (Cod r x) (Theta_f r)))");
    UniversalForm closed = universal_form(parse("(exists y (in y y))", msig));
    CHECK(print(closed.formula) == "(Theta_f)");
    CHECK_THROWS_AS(universal_form(parse("(forall y (in y x))", msig)), SpecError);
}

TEST_CASE("universal form equivalence at m=3") {
    HfPool pool;
    Signature msig = Signature::membership_only();
    CHECK(verify_universal_form(pool, parse("(exists y (in y x))", msig), 3).pass);
    CHECK(verify_universal_form(pool, parse("(exists y (in x y))", msig), 3).pass);
}

TEST_CASE("translation is size-linear over the corpus") {
    Signature msig = Signature::membership_only();
    double worst = 0;
    for (const auto& item : translation_corpus()) {
        Formula f = parse(item.text, msig);
        Formula t = translate(f);
        worst = std::max(worst, double(node_count(t)) / double(node_count(f)));
    }
    CHECK(worst <= 8.0);
}

TEST_CASE("kuratowski verification at m=5 draws assignments from HF(3)") {
    HfPool pool;
    Signature msig = Signature::membership_only();
    Formula kur = parse(kuratowski_pair_text(), msig);
    std::vector<int> hf3 = pool.universe(3);
    VerifyReport r =
        verify_translation(pool, kur, 5, GuardMode::Official, false, false, &hf3);
    CHECK(r.pass);
    CHECK(r.assignments_checked == 64);
}

TEST_CASE("expanded translations climb exactly one Levy level") {
    Signature msig = Signature::membership_only();
    for (const auto& item : translation_corpus()) {
        Formula f = parse(item.text, msig);
        LevyClass base = levy_classify(f);
        Formula expanded = expand_code_predicates(translate(f));
        validate(expanded, expanded_code_signature());
        LevyClass shifted = levy_classify(expanded);
        CAPTURE(item.name);
        if (base.level() >= 1)
            CHECK(shifted.level() == base.level() + 1);
        else
            CHECK(shifted.level() <= 2); // guards alone cost at most two levels
    }
}

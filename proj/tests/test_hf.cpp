#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modelth/errors.hpp"
#include "modelth/hf.hpp"

using namespace modelth;

TEST_CASE("ackermann codes of small sets") {
    HfPool pool;
    CHECK(pool.ackermann(pool.empty()) == 0);
    int one = pool.make({pool.empty()});           // {0}
    int two = pool.make({one});                    // {{0}}
    int three = pool.make({pool.empty(), one});    // {0,{0}}
    CHECK(pool.ackermann(one) == 1);
    CHECK(pool.ackermann(two) == 2);
    CHECK(pool.ackermann(three) == 3);
    CHECK(pool.ackermann_decode(2) == two);
    CHECK(pool.literal(pool.ackermann_decode(2)) == "{{{}}}");
}

TEST_CASE("ackermann order drives canonical children order") {
    HfPool pool;
    int one = pool.make({pool.empty()});
    int a = pool.make({one, pool.empty()});
    int b = pool.make({pool.empty(), one});
    CHECK(a == b); // interning is order-insensitive
    CHECK(pool.children(a) == std::vector<int>{pool.empty(), one});
}

TEST_CASE("universe sizes and the HF(4) bijection with 0..15") {
    HfPool pool;
    CHECK(pool.universe(0).empty());
    CHECK(pool.universe(1).size() == 1);
    CHECK(pool.universe(3).size() == 4);
    std::vector<int> u4 = pool.universe(4);
    CHECK(u4.size() == 16);
    for (std::size_t i = 0; i < u4.size(); i++) CHECK(pool.ackermann(u4[i]) == i);
    CHECK_THROWS_AS(pool.universe(6), GuardError);
}

TEST_CASE("transitive closure sizes") {
    HfPool pool;
    int one = pool.make({pool.empty()});
    int two = pool.make({one});
    int pair = pool.make({pool.empty(), one});
    CHECK(pool.tc_size(pool.empty()) == 0);
    CHECK(pool.tc_size(one) == 1);
    CHECK(pool.tc_size(two) == 2);
    CHECK(pool.tc_size(pair) == 2);
}

TEST_CASE("literal syntax round-trips") {
    HfPool pool;
    for (const char* text : {"{}", "{{}}", "{{},{{}}}", "{{{}}}"}) {
        int id = pool.parse_literal(text);
        CHECK(pool.literal(id) == text);
    }
    CHECK_THROWS_AS(pool.parse_literal("{,}"), ParseError);
}

TEST_CASE("hf_eval on the documented membership formulas") {
    HfPool pool;
    Signature msig = Signature::membership_only();
    Formula transitive =
        parse("(forall u (forall v (-> (and (in v u) (in u x)) (in v x))))", msig);
    CHECK(hf_eval(pool, transitive, 4, {{"x", pool.empty()}}));
    int two = pool.parse_literal("{{{}}}"); // {{0}} has member {0} but not 0
    CHECK_FALSE(hf_eval(pool, transitive, 4, {{"x", two}}));

    Formula ordinal = parse(
        "(and (forall u (forall v (-> (and (in v u) (in u x)) (in v x)))) "
        "(forall u (forall v (-> (and (in u x) (in v x)) (or (in u v) (or (in v u) (= u v)))))))",
        msig);
    int pair = pool.parse_literal("{{},{{}}}");
    CHECK(hf_eval(pool, ordinal, 4, {{"x", pair}}));
    CHECK_FALSE(hf_eval(pool, ordinal, 4, {{"x", two}}));
}

TEST_CASE("bounded quantifiers range over the children") {
    HfPool pool;
    Signature msig = Signature::membership_only();
    Formula f = parse("(forall-in w x (in w y))", msig); // x subseteq y
    int pair = pool.parse_literal("{{},{{}}}");
    int one = pool.parse_literal("{{}}");
    CHECK(hf_eval(pool, f, 4, {{"x", one}, {"y", pair}}));
    CHECK_FALSE(hf_eval(pool, f, 4, {{"x", pair}, {"y", one}}));
}

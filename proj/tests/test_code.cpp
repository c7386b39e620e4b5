#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modelth/code.hpp"
#include "modelth/errors.hpp"
#include "modelth/json_io.hpp"
#include "modelth/quotient.hpp"

using namespace modelth;

static PointedCode make_code(int domain, std::vector<std::pair<int, int>> rel) {
    PointedCode c;
    c.domain = domain;
    c.rel = std::move(rel);
    c.normalize();
    return c;
}

TEST_CASE("wfe validation names the violated clause") {
    CHECK(is_wfe(make_code(1, {})).ok);
    WfeCheck ext = is_wfe(make_code(3, {{1, 0}, {2, 0}}));
    CHECK_FALSE(ext.ok);
    CHECK(ext.reason == "extensionality: nodes 1,2 share predecessor set");
    WfeCheck cyc = is_wfe(make_code(2, {{1, 0}, {0, 1}}));
    CHECK_FALSE(cyc.ok);
    CHECK(cyc.reason == "cycle");
    WfeCheck junk = is_wfe(make_code(3, {{1, 0}}));
    CHECK_FALSE(junk.ok);
    CHECK(junk.reason == "unused domain element 2");
    WfeCheck top = is_wfe(make_code(2, {{0, 1}}));
    CHECK_FALSE(top.ok);
    CHECK(top.reason == "top element 0 has an R-successor");
}

TEST_CASE("collapse of the documented codes") {
    HfPool pool;
    CHECK(pool.literal(collapse(pool, make_code(1, {}))) == "{}");
    CHECK(pool.literal(collapse(pool, make_code(2, {{1, 0}}))) == "{{}}");
    CHECK(pool.literal(collapse(pool, make_code(3, {{1, 0}, {2, 0}, {1, 2}}))) == "{{},{{}}}");
    CHECK_THROWS_AS(collapse(pool, make_code(2, {{1, 0}, {0, 1}})), SpecError);
}

TEST_CASE("canonical encoding uses breadth-first Ackermann-ordered labels") {
    HfPool pool;
    CHECK(encode(pool, pool.parse_literal("{}")) == make_code(1, {}));
    CHECK(encode(pool, pool.parse_literal("{{}}")) == make_code(2, {{1, 0}}));
    CHECK(encode(pool, pool.parse_literal("{{},{{}}}")) ==
          make_code(3, {{1, 0}, {2, 0}, {1, 2}}));
}

TEST_CASE("round-trip collapse(encode(a)) = a over HF(4)") {
    HfPool pool;
    for (int id : pool.universe(4)) CHECK(collapse(pool, encode(pool, id)) == id);
}

TEST_CASE("graphs_equal via collapse and via isomorphism agree on relabelings") {
    HfPool pool;
    PointedCode a = make_code(3, {{1, 0}, {2, 0}, {1, 2}});
    PointedCode b = make_code(3, {{2, 0}, {1, 0}, {2, 1}}); // nodes 1,2 swapped
    CHECK(graphs_equal(pool, a, b));
    CHECK(graphs_equal_iso(a, b));
    PointedCode e = make_code(1, {});
    PointedCode one = make_code(2, {{1, 0}});
    CHECK_FALSE(graphs_equal(pool, e, one));
    CHECK_FALSE(graphs_equal_iso(e, one));
    CHECK(graphs_equal(pool, a, a));
}

TEST_CASE("graph membership via collapse and via predecessor subcodes") {
    HfPool pool;
    PointedCode e = make_code(1, {});
    PointedCode one = make_code(2, {{1, 0}});
    CHECK(graph_mem(pool, e, one));
    CHECK(graph_mem_iso(e, one));
    CHECK_FALSE(graph_mem(pool, one, e));
    CHECK_FALSE(graph_mem_iso(one, e));
    // no valid code is a member of itself
    for (int d = 1; d <= 3; d++)
        for (const auto& c : enumerate_valid_codes(d)) {
            CHECK_FALSE(graph_mem(pool, c, c));
            CHECK_FALSE(graph_mem_iso(c, c));
        }
}

TEST_CASE("valid code counts for small domains") {
    CHECK(enumerate_valid_codes(1).size() == 1);
    CHECK(enumerate_valid_codes(2).size() == 1);
    CHECK(enumerate_valid_codes(3).size() == 4);
}

TEST_CASE("quotient check at m=1 and m=3") {
    HfPool pool;
    QuotientReport q1 = quotient_check(pool, 1, 2);
    CHECK(q1.pass);
    CHECK(q1.classes == 1);

    QuotientReport q3 = quotient_check(pool, 3, 4);
    CHECK(q3.pass);
    // the sets of transitive-closure size < 3 (strict TC, the set itself not
    // counted): {}, {{}}, {{{}}}, {{},{{}}}
    REQUIRE(q3.classes == 4);
    std::vector<std::string> lits;
    for (int id : q3.class_sets) lits.push_back(pool.literal(id));
    CHECK(lits == std::vector<std::string>{"{}", "{{}}", "{{{}}}", "{{},{{}}}"});
}

TEST_CASE("quotient at m=4 has the twelve sets of TC-size below four") {
    // hand count: |TC|=0 gives 1 set, =1 gives 1, =2 gives 2, =3 gives 8
    HfPool pool;
    QuotientReport q4 = quotient_check(pool, 4, 5);
    CHECK(q4.pass);
    CHECK(q4.classes == 12);
}

TEST_CASE("quotient bound mismatch is rejected") {
    HfPool pool;
    CHECK_THROWS_AS(quotient_check(pool, 4, 3), SpecError);
    CHECK_THROWS_AS(quotient_check(pool, 6, 6), GuardError);
}

TEST_CASE("trim drops junk nodes and keeps the collapse") {
    HfPool pool;
    // a 4-node relation whose field is {0,1}: nodes 2,3 are junk
    PointedCode raw = make_code(4, {{1, 0}});
    PointedCode t = trim(raw);
    CHECK(t.domain == 2);
    CHECK(collapse(pool, t) == pool.parse_literal("{{}}"));
}

TEST_CASE("code files round-trip through JSON") {
    PointedCode c = make_code(3, {{1, 0}, {2, 0}, {1, 2}});
    CHECK(code_from_json(code_to_json(c)) == c);
    CHECK(code_to_json(c).dump() == "{\"domain\":3,\"rel\":[[1,0],[1,2],[2,0]]}");
}

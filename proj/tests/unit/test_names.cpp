#include "doctest.h"

#include "krivine/names.hpp"
#include "krivine/syntax.hpp"

using namespace krivine;

TEST_CASE("hereditarily finite sets") {
    CHECK(hf_as_nat(hf_nat(3)) == 3u);
    CHECK(hf_nat(2) == hf_set({hf_nat(0), hf_nat(1)}));
    CHECK(hf_set({hf_nat(1), hf_nat(1), hf_nat(0)}).elems.size() == 2);
    CHECK_FALSE(hf_as_nat(hf_set({hf_nat(1)})).has_value());
    CHECK(parse_hf("{{}, {{}}}") == hf_nat(2));
}

TEST_CASE("sng carries every stack") {
    auto s = sng(reish(hf_set({})));
    REQUIRE(s->entries.size() == 1);
    CHECK(same_name(s->entries[0].first, empty_name()));
    CHECK(s->entries[0].second->kind == StackSetKind::All);
}

TEST_CASE("up tags the coordinates with 0 and 1") {
    auto a = reish_nat(0), b = reish_nat(1);
    auto u = up(a, b);
    REQUIRE(u->entries.size() == 2);
    for (const auto& [x, ss] : u->entries) {
        REQUIRE(ss->kind == StackSetKind::Prefix);
        REQUIRE(ss->prefix.size() == 1);
        CHECK(ss->tail->kind == StackSetKind::All);
        CHECK(church_index(ss->prefix[0]) == (same_name(x, a) ? 0u : 1u));
    }
}

TEST_CASE("hat ordinals") {
    auto h = hat(2);
    REQUIRE(h->entries.size() == 2);
    for (const auto& [x, ss] : h->entries) {
        REQUIRE(ss->kind == StackSetKind::Prefix);
        auto beta = church_index(ss->prefix[0]);
        REQUIRE(beta);
        CHECK(same_name(x, hat(*beta)));
    }
    CHECK_THROWS(hat(5, 3));
}

TEST_CASE("op unfolds to nested up and sng") {
    auto a = reish_nat(1), b = reish_nat(0);
    CHECK(same_name(op(a, b), up(up(sng(a), reish(hf_set({}))), sng(sng(b)))));
}

TEST_CASE("rank and dom") {
    CHECK(rank(empty_name()) == 0);
    auto a = reish_nat(0), b = sng(reish_nat(0));
    auto d = dom(up(a, b));
    REQUIRE(d.size() == 2);
    CHECK(((same_name(d[0], a) && same_name(d[1], b)) || (same_name(d[0], b) && same_name(d[1], a))));
    CHECK(rank(sng(sng(empty_name()))) == 2);
}

TEST_CASE("names are interned") {
    CHECK(same_name(sng(reish_nat(0)), reish_nat(1)));
    CHECK(same_name(pairing_name(reish_nat(0), reish_nat(1)), reish_nat(2)));
    CHECK_FALSE(same_name(up(reish_nat(0), reish_nat(1)), reish_nat(2)));
    Env env = Env::standard();
    CHECK(same_name(parse_name("{(^0, ALL)}", env), reish_nat(1)));
    CHECK(same_name(parse_name("up(^0,^1)", env), up(reish_nat(0), reish_nat(1))));
}

TEST_CASE("infinity name") {
    auto w = infinity_name(empty_name(), 3);
    CHECK(dom(w).size() == 4);
    CHECK(same_name(iterate_sng(empty_name(), 2), sng(sng(empty_name()))));
}

TEST_CASE("lifted functions") {
    auto neg = make_lift("neg", {{hf_nat(0), hf_nat(1)}, {hf_nat(1), hf_nat(0)}}, hf_nat(2), hf_nat(2));
    CHECK(lift_apply(neg, reish_nat(0)) == hf_nat(1));
    CHECK(lift_apply(neg, reish_nat(1)) == hf_nat(0));
    CHECK_FALSE(lift_apply(neg, reish_nat(2)).has_value());
}

TEST_CASE("formula parsing and printing") {
    Env env = Env::standard();
    auto f = parse_formula("forall x . (x sub ^0 -> ^0 in! x)", env);
    CHECK(f->kind == FormulaKind::ForallU);
    CHECK(is_closed(f));
    CHECK(in_fml_in(f));
    CHECK(parse_formula(print(f), env)->key == f->key);
    auto g = parse_formula("^0 eps! ^1", env);
    CHECK_FALSE(in_fml_in(g));
    auto open = parse_formula("x sub ^0", env);
    CHECK(free_name_vars(open) == std::vector<std::string>{"x"});
    CHECK(is_closed(subst(open, "x", reish_nat(1))));
    CHECK(formula_depth(parse_formula("(^0 sub ^0 -> bot) -> bot", env)) == 2);
    CHECK_THROWS_AS(parse_formula("^0 sub", env), SyntaxError);
}

TEST_CASE("declarations") {
    Env env = Env::standard();
    CHECK(apply_declaration("name z = sng(^1)", env));
    CHECK(same_name(parse_name("z", env), sng(reish_nat(1))));
    CHECK(apply_declaration("universe ^0, ^1", env));
    CHECK(env.universe.size() == 2);
    CHECK(apply_declaration("term T2 = \\x.x", env));
    CHECK(alpha_eq(parse_env_term("T2", env), identity()));
    CHECK_FALSE(apply_declaration("^0 sub ^0", env));
    auto c = parse_realizes("I ||- ^0 sub ^0", env);
    CHECK(alpha_eq(c.term, identity()));
}

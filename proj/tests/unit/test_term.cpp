#include "doctest.h"

#include "krivine/enumerate.hpp"
#include "krivine/term.hpp"

using namespace krivine;

TEST_CASE("parse_term builds the expected trees") {
    auto zero = parse_term("\\u.\\v.v");
    CHECK(zero->kind == TermKind::Lam);
    CHECK(zero->name == "u");
    CHECK(zero->left->kind == TermKind::Lam);
    CHECK(zero->left->name == "v");
    CHECK(zero->left->left->kind == TermKind::Var);
    CHECK(zero->left->left->name == "v");

    CHECK(parse_term("cc")->kind == TermKind::CallCC);

    auto omega = parse_term("(\\u.u u)(\\u.u u)");
    auto delta = lam("u", app(var("u"), var("u")));
    CHECK(canonical(omega) == canonical(app(delta, delta)));
    CHECK(alpha_eq(parse_term(print(omega)), omega));
}

TEST_CASE("printing round-trips through the parser") {
    for (const char* s : {"\\u.\\v.(u v) v", "cc (\\k.k #2)", "@q k[#1 . w[p0]]", "\\x.x (\\y.y x)"}) {
        auto t = parse_term(s);
        CHECK(alpha_eq(parse_term(print(t)), t));
    }
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse_term("\\u."), SyntaxError);
    CHECK_THROWS_AS(parse_term("(u v"), SyntaxError);
    CHECK_THROWS_AS(parse_term("@nosuchinstr"), SyntaxError);
}

TEST_CASE("free_vars") {
    CHECK(free_vars(parse_term("\\u.u w")) == std::set<std::string>{"w"});
    CHECK(free_vars(parse_term("\\u.u")).empty());
    CHECK(free_vars(app(var("u"), lam("u", var("u")))) == std::set<std::string>{"u"});
}

TEST_CASE("is_realizer") {
    CHECK(is_realizer(callcc()));
    CHECK_FALSE(is_realizer(cont(bottom("p0"))));
    CHECK_FALSE(is_realizer(lam("u", app(var("u"), cont(push(identity(), bottom("p0")))))));
    CHECK_THROWS_AS(is_realizer(var("u")), OpenTermError);
}

TEST_CASE("substitute") {
    CHECK(alpha_eq(substitute(lam("v", var("u")), "u", callcc()), lam("v", callcc())));
    CHECK(alpha_eq(substitute(lam("u", var("u")), "u", callcc()), lam("u", var("u"))));
    CHECK(alpha_eq(substitute(app(var("u"), var("u")), "u", church(0)), app(church(0), church(0))));
}

TEST_CASE("church numerals") {
    CHECK(alpha_eq(church(0), parse_term("\\u.\\v.v")));
    CHECK(alpha_eq(church(1), parse_term("\\u.\\v.u v")));
    auto step = [](TermPtr n) { return lam(std::vector<std::string>{"u", "v"}, app(app(n, var("u")), app(var("u"), var("v")))); };
    CHECK(alpha_eq(church(2), step(church(1))));
    CHECK(alpha_eq(church(3), step(church(2))));
    CHECK(church_index(church(3)) == 3u);
    CHECK(church_index(church(0)) == 0u);
    CHECK_FALSE(church_index(identity()).has_value());
    CHECK(alpha_eq(parse_term("#3"), church(3)));
}

TEST_CASE("alpha_eq") {
    CHECK(alpha_eq(parse_term("\\u.u"), parse_term("\\v.v")));
    CHECK_FALSE(alpha_eq(parse_term("\\u.u w"), parse_term("\\w.w w")));
    auto t = parse_term("\\u.cc (\\k.(u k) k)");
    CHECK(alpha_eq(t, t));
    CHECK(canonical(parse_term("\\a.\\b.a")) == canonical(parse_term("\\x.\\y.x")));
}

TEST_CASE("stacks reject open terms") {
    CHECK_THROWS_AS(push(var("x"), bottom("p0")), OpenTermError);
    auto s = push_all({church(1), identity()}, bottom("p1"));
    CHECK(stack_items(s).size() == 2);
    CHECK(stack_bottom(s) == "p1");
}

TEST_CASE("enumeration counts constants as size 1") {
    Enumerator en({callcc()}, {"w"}, false);
    // counted by hand: cc | \x0.x0, \x0.cc | \x0.\x1.(x0|x1|cc), cc cc
    CHECK(en.terms(1).size() == 1);
    CHECK(en.terms(2).size() == 2);
    CHECK(en.terms(3).size() == 4);
    CHECK(en.term_size(callcc()) == 1);
    std::set<std::string> seen;
    for (const auto& t : en.closed_upto(4)) {
        CHECK(is_closed(t));
        seen.insert(canonical(t));
    }
    CHECK(seen.size() == en.closed_upto(4).size());
    // stacks of size 2: one term of size 1 over one bottom
    CHECK(en.stacks(2).size() == 1);
}

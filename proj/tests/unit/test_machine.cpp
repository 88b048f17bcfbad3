#include "doctest.h"

#include "krivine/machine.hpp"

using namespace krivine;

namespace {

Process P(const char* text) { return parse_process(text); }

}  // namespace

TEST_CASE("save: cc * t . pi goes to t * k[pi] . pi") {
    auto t = marker("ut");
    auto pi = push(church(2), bottom("p0"));
    auto r = step(Process{callcc(), push(t, pi)});
    REQUIRE(r);
    CHECK(r->second == StepRule::save);
    CHECK(alpha_eq(r->first, Process{t, push(cont(pi), pi)}));
}

TEST_CASE("grab: identity hands its argument to the head") {
    auto t = church(3);
    auto r = step(Process{identity(), push(t, bottom("p1"))});
    REQUIRE(r);
    CHECK(r->second == StepRule::grab);
    CHECK(alpha_eq(r->first, Process{t, bottom("p1")}));
}

TEST_CASE("restore: k[sigma] * t . pi goes to t * sigma") {
    auto sigma = push(church(1), bottom("p0"));
    auto r = step(Process{cont(sigma), push(identity(), bottom("p1"))});
    REQUIRE(r);
    CHECK(r->second == StepRule::restore);
    CHECK(alpha_eq(r->first, Process{identity(), sigma}));
}

TEST_CASE("quote pushes the registered code of s") {
    QuoteTable table;
    Hooks h{true, false, &table};
    auto t = marker("uq");
    auto s = parse_term("\\x.x x");
    auto r = step(Process{instr("q"), push_all({t, s}, bottom("p0"))}, h);
    REQUIRE(r);
    CHECK(r->second == StepRule::quote);
    auto code = table.lookup(s);
    REQUIRE(code);
    CHECK(alpha_eq(r->first, Process{t, push(church(*code), bottom("p0"))}));
    // alpha-equal terms share a code
    CHECK(table.code(parse_term("\\y.y y")) == *code);
    CHECK(table.code(identity()) != *code);
    // without the hook @q is inert
    CHECK_FALSE(step(Process{instr("q"), push_all({t, s}, bottom("p0"))}));
}

TEST_CASE("push is the single step of an application") {
    auto tr = run(P("(\\x.x) #1 * w[p0]"), 1);
    REQUIRE(tr.rules.size() == 1);
    CHECK(tr.rules[0] == StepRule::push);
    CHECK(alpha_eq(tr.last(), P("\\x.x * #1 . w[p0]")));
    CHECK(tr.exhausted());
}

TEST_CASE("a normal form gives a single-state trace") {
    auto tr = run(P("@d * #0 . w[p0]"), 50);
    CHECK(tr.states.size() == 1);
    CHECK(tr.steps == 0);
    CHECK_FALSE(tr.exhausted());
}

TEST_CASE("chi compares Church indices") {
    auto t = marker("ct"), s = marker("cs"), r = marker("cr");
    auto pi = bottom("p0");
    auto go = [&](unsigned a, unsigned b) {
        auto tr = run(Process{instr("chi"), push_all({church(a), church(b), t, s, r}, pi)}, 10, Hooks{false, true});
        return tr.last();
    };
    CHECK(alpha_eq(go(2, 5), Process{t, pi}));
    CHECK(alpha_eq(go(3, 3), Process{s, pi}));
    CHECK(alpha_eq(go(5, 2), Process{r, pi}));
    CHECK(alpha_eq(go(0, 0), Process{s, pi}));
}

TEST_CASE("beta_step_check") {
    CHECK(beta_step_check(0));
    CHECK(beta_step_check(1));
    CHECK(beta_step_check(7));
}

TEST_CASE("passes_through finds intermediate states") {
    auto p = P("cc * (\\k.k #1) . w[p0]");
    CHECK(passes_through(p, P("#1 * w[p0]"), 10));
    CHECK_FALSE(passes_through(p, P("#2 * w[p0]"), 10));
}

TEST_CASE("Omega exhausts its budget") {
    auto tr = run(P("(\\u.u u)(\\u.u u) * w[p0]"), 100, {}, false);
    CHECK(tr.exhausted());
    CHECK(tr.steps == 100);
    CHECK(tr.states.size() == 2);
}

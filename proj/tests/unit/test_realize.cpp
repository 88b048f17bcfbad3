#include "doctest.h"

#include "krivine/forcing.hpp"
#include "krivine/four_valued.hpp"
#include "krivine/realize.hpp"
#include "krivine/syntax.hpp"

using namespace krivine;

namespace {

const Env& env() {
    static Env e = Env::standard();
    return e;
}

FormulaPtr F(const char* s) { return parse_formula(s, env()); }

}  // namespace

TEST_CASE("falsity membership") {
    ForcingAlgebra alg(1);
    auto pi = parse_stack("#2 . w[1]");
    CHECK(falsity_contains(alg, F("^0 eps! sng(^0)"), pi) == Tri::yes);
    CHECK(falsity_contains(alg, f_top(), pi) == Tri::no);
    auto up01 = F("^0 eps! up(^0,^1)");
    CHECK(falsity_contains(alg, up01, parse_stack("#1 . w[1]")) == Tri::no);
    CHECK(falsity_contains(alg, up01, parse_stack("#0 . w[1]")) == Tri::yes);
    CHECK(falsity_contains(alg, f_bot(), bottom("0")) == Tri::yes);
}

TEST_CASE("surely empty falsity values") {
    CHECK(surely_empty(f_top()));
    CHECK(surely_empty(F("bot -> top")));
    CHECK_FALSE(surely_empty(f_bot()));
}

TEST_CASE("identity does not realize bot") {
    ForcingAlgebra fa(1);
    auto v = realizes(fa, identity(), f_bot());
    CHECK(v.kind == Verdict::Kind::refuted);
    REQUIRE(v.witness);
    CHECK(fa.pole_contains(Process{identity(), v.witness}) == PoleVerdict::out);

    DAlgebra da;
    auto w = realizes(da, identity(), f_bot());
    CHECK(w.refuted());
    REQUIRE(w.witness);
    CHECK(da.pole_contains(Process{identity(), w.witness}) == PoleVerdict::out);
}

TEST_CASE("K realizes phi -> (psi -> phi)") {
    DAlgebra da;
    auto f = F("^0 in! ^1 -> (^1 sub ^0 -> ^0 in! ^1)");
    auto v = realizes(da, parse_term("\\u.\\v.u"), f, {2, 64});
    CHECK(v.kind == Verdict::Kind::passed_bounded);
    CHECK(v.checked > 0);
    // the wrong projection is caught
    CHECK(realizes(da, parse_term("\\u.\\v.v"), F("bot -> (top -> bot)"), {2, 64}).refuted());
}

TEST_CASE("cc realizes Peirce's law under forcing") {
    ForcingAlgebra fa(1);
    for (const char* p : {"bot", "^0 sub ^1", "^1 sub ^0", "sng(^0) sub ^0"})
        for (const char* q : {"bot", "top", "^0 in! ^1"}) {
            auto phi = F(p), psi = F(q);
            auto f = f_impl(f_impl(f_impl(phi, psi), phi), phi);
            CHECK(realizes(fa, callcc(), f).kind == Verdict::Kind::certified);
        }
}

TEST_CASE("sampled falsity stacks are members") {
    DAlgebra da;
    CHECK(falsity_sample(da, f_bot(), {0, 64}).size() == 2);
    for (const char* s : {"^0 in! ^1 -> bot", "forall x . (x sub ^0 -> ^0 eps! x)", "^1 eps! up(^0,^1)",
                          "(^0 sub ^0 -> bot) -> ^0 in! sng(^0)"}) {
        auto f = F(s);
        for (const auto& pi : falsity_sample(da, f)) CHECK(falsity_contains(da, f, pi) != Tri::no);
    }
    ForcingAlgebra fa(2);
    for (const char* s : {"^0 in! ^1 -> bot", "forall x . (x sub ^0 -> ^0 eps! x)"}) {
        auto f = F(s);
        for (const auto& pi : falsity_sample(fa, f)) CHECK(falsity_contains(fa, f, pi) == Tri::yes);
    }
}

TEST_CASE("forcing verdicts match the tau test") {
    ForcingAlgebra fa(2);
    auto f = F("^0 in! ^1 -> bot");
    for (const char* t : {"\\u.u", "\\u.u TT", "k[w[p0]]", "k[w[0]]", "cc"}) {
        auto term = parse_env_term(t, env());
        CHECK((realizes(fa, term, f).kind == Verdict::Kind::certified) == fa.realizes(term, f));
    }
}

#include "doctest.h"

#include "krivine/four_valued.hpp"
#include "krivine/realize.hpp"
#include "krivine/syntax.hpp"

using namespace krivine;

namespace {

Process P(const char* text) { return parse_process(text); }

}  // namespace

TEST_CASE("component tags") {
    CHECK(component_tag(P("\\x.x * w[p0]")) == ComponentTag::only_p0);
    CHECK(component_tag(P("k[w[p1]] * #1 . w[p1]")) == ComponentTag::only_p1);
    CHECK(component_tag(P("k[w[p1]] * w[p0]")) == ComponentTag::both);
    CHECK(component_tag(identity()) == ComponentTag::neither);
}

TEST_CASE("pole_ij") {
    DAlgebra alg;
    CHECK(alg.pole_ij(P("@d * #0 . w[p0]"), 0, 0) == PoleVerdict::in);
    CHECK(alg.pole_ij(P("@d * #0 . w[p0]"), 0, 1) == PoleVerdict::out);
    CHECK(alg.pole_ij(P("(@d #1) * w[p1]"), 1, 1) == PoleVerdict::in);
    CHECK(alg.pole_ij(P("(@d #1) * w[p1]"), 1, 0) == PoleVerdict::out);
    CHECK_THROWS_AS(alg.pole_ij(P("@d * #0 . w[p1]"), 0, 0), VocabularyError);
}

TEST_CASE("d-algebra pole") {
    DAlgebra alg;
    CHECK(alg.pole_contains(P("k[w[p1]] * w[p0]")) == PoleVerdict::in);
    CHECK(alg.pole_contains(P("@d * #0 . w[p0]")) == PoleVerdict::in);
    CHECK(alg.pole_contains(P("\\x.x * w[p0]")) == PoleVerdict::out);
    CHECK(alg.pole_contains(P("\\x.x * #1 . w[p1]")) == PoleVerdict::out);
    // a cycle is divergence, and divergence stays out of the pole
    CHECK(alg.pole_contains(P("(\\u.u u)(\\u.u u) * w[p0]")) == PoleVerdict::out);
    CHECK_THROWS_AS(alg.pole_contains(P("\\x.x * w[p2]")), VocabularyError);
}

TEST_CASE("evaluate detects cycles") {
    auto e = evaluate(P("(\\u.u u)(\\u.u u) * w[p0]"), 1000);
    CHECK(e.end == Evaluation::End::cycle);
    auto n = evaluate(P("\\x.x * #2 . w[p0]"), 1000);
    CHECK(n.end == Evaluation::End::normal_form);
    CHECK(alpha_eq(n.last, P("#2 * w[p0]")));
}

TEST_CASE("universal realizers stay in the pole") {
    DAlgebra alg;
    auto stacks = std::vector<StackPtr>{bottom("p0"), bottom("p1"), parse_stack("#1 . w[p0]"),
                                        parse_stack("k[w[p1]] . #0 . w[p1]"), parse_stack("cc . w[p0]")};
    for (const auto& u : alg.universal_realizers())
        for (const auto& s : stacks) CHECK(alg.pole_contains(Process{u, s}) == PoleVerdict::in);
    auto rep = coherence_sample(alg, {identity()}, {bottom("p0")});
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].escape);
}

TEST_CASE("xi swaps the components") {
    CHECK(print(xi(bottom("p0"))) == "w[p1]");
    CHECK(alpha_eq(xi(callcc()), callcc()));
    CHECK(alpha_eq(xi(instr("d")), instr("d")));
    CHECK(alpha_eq(xi(parse_stack("k[w[p0]] . w[p0]")), parse_stack("k[w[p1]] . w[p1]")));
    auto p = P("(@d #0) * k[#1 . w[p0]] . w[p0]");
    CHECK(alpha_eq(xi_inverse(xi(p)), p));
    CHECK_THROWS(xi(P("k[w[p1]] * w[p0]")));
}

TEST_CASE("xi transports pole_00 onto pole_10") {
    DAlgebra alg;
    for (const char* s : {"@d * #0 . w[p0]", "@d * #1 . w[p0]", "\\x.x * w[p0]", "cc * (\\k.k) . w[p0]"}) {
        auto p = P(s);
        CHECK(alg.pole_ij(p, 0, 0) == alg.pole_ij(xi(p), 1, 0));
        CHECK(alg.pole_ij(p, 0, 1) == alg.pole_ij(xi(p), 1, 1));
    }
}

TEST_CASE("gamma names") {
    DAlgebra alg;
    auto g0 = gamma0();
    CHECK(dom(g0).size() == 2);
    CHECK(falsity_sample(alg, f_noteps(nref(reish_nat(1)), nref(g0)), {0, 64}).size() == 1);
    auto sample = falsity_sample(alg, f_noteps(nref(reish_nat(1)), nref(g0)), {0, 64});
    REQUIRE(sample.size() == 1);
    CHECK(print(sample[0]) == "w[p1]");

    auto d0 = parse_term("@d #0");
    CHECK(alg.pole_contains(Process{d0, bottom("p0")}) == PoleVerdict::in);
    CHECK(realizes(alg, d0, f_noteps(nref(reish_nat(0)), nref(g0))).ok());

    // clause for @d #2: two of the three branches in pole_00 suffice
    auto V = alg.universal_realizers().front();
    auto d2 = [&](TermPtr t, TermPtr s, TermPtr r) {
        return alg.pole_ij(Process{instr("d"), push_all({church(2), t, s, r}, bottom("p0"))}, 0, 0);
    };
    CHECK(d2(V, V, identity()) == PoleVerdict::in);
    CHECK(d2(identity(), V, V) == PoleVerdict::in);
    CHECK(d2(V, identity(), identity()) == PoleVerdict::out);

    auto rep = verify_gamma_claims(alg);
    CHECK(rep.rows.size() == 10);
    CHECK(rep.refuted() == 0);
}

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "krivine/forcing.hpp"
#include "krivine/four_valued.hpp"
#include "krivine/realizer_lib.hpp"

#ifndef KRIVINE_PROOF_DIR
#define KRIVINE_PROOF_DIR "tests/data/proofs"
#endif

using namespace krivine;

namespace {

const Env& env() {
    static Env e = Env::standard();
    return e;
}

FormulaPtr F(const char* s) { return parse_formula(s, env()); }

std::vector<CatalogInstance> instances(const char* key) {
    const CatalogEntry* e = find_entry(key);
    REQUIRE(e);
    return e->instantiate(Corpus::standard());
}

}  // namespace

TEST_CASE("K extracts to \\u.\\v.u") {
    auto p = ax_k(F("^0 sub ^1"), F("bot"));
    CHECK(alpha_eq(extract_realizer(p), parse_term("\\u.\\v.u")));
    CHECK(conclusion(p)->key == F("^0 sub ^1 -> (bot -> ^0 sub ^1)")->key);
}

TEST_CASE("the classical axiom extracts to \\u.\\v.cc(\\k.(u k)(v k))") {
    auto p = ax_classical(F("^0 sub ^1"), F("bot"));
    CHECK(alpha_eq(extract_realizer(p), parse_term("\\u.\\v.cc (\\k.(u k) (v k))")));
}

TEST_CASE("S K K proves phi -> phi") {
    auto phi = F("^0 in! ^1");
    auto psi = f_impl(phi, phi);
    auto s = ax_s(phi, psi, phi);
    auto proof = mp(mp(s, ax_k(phi, psi)), ax_k(phi, phi));
    CHECK(conclusion(proof)->key == f_impl(phi, phi)->key);
    auto t = extract_realizer(proof);
    auto skk = app(app(env().terms.at("S"), env().terms.at("K")), env().terms.at("K"));
    CHECK(alpha_eq(t, skk));
    DAlgebra da;
    CHECK(realizes(da, t, f_impl(phi, phi)).ok());
    CHECK(realizes(ForcingAlgebra(1), t, f_impl(phi, phi)).kind == Verdict::Kind::certified);
}

TEST_CASE("deduction is discharged by bracket abstraction") {
    auto phi = F("^0 sub ^1");
    auto p = deduce(phi, hyp(phi));
    CHECK(conclusion(p)->key == f_impl(phi, phi)->key);
    auto e = expand_deductions(p);
    CHECK(e->kind == HilbertProof::Kind::mp);
    CHECK(realizes(ForcingAlgebra(1), extract_realizer(p), f_impl(phi, phi)).kind == Verdict::Kind::certified);
}

TEST_CASE("ill-formed proofs are rejected") {
    auto phi = F("^0 sub ^1"), psi = F("bot");
    CHECK_THROWS_AS(conclusion(mp(ax_k(phi, psi), ax_k(psi, phi))), ProofError);
    CHECK_THROWS_AS(conclusion(hyp(phi)), ProofError);
    std::vector<NamePtr> u{reish_nat(0), reish_nat(1)};
    auto open = F("x sub ^0");
    // gen over a variable free in an open hypothesis
    CHECK_THROWS_AS(conclusion(deduce(open, gen("x", hyp(open), u))), ProofError);
    CHECK_THROWS_AS(parse_proof_file("(mp (ax K \"bot\" \"bot\"))"), std::exception);
    CHECK_THROWS_AS(parse_proof_file("(ax K \"bot\" \"bot\") (ax K \"bot\" \"bot\")"), std::exception);
}

TEST_CASE("rename_var respects capture") {
    auto f = F("forall y . x sub y");
    CHECK(rename_var(F("x sub ^0"), "x", "z")->key == F("z sub ^0")->key);
    CHECK_THROWS(rename_var(f, "x", "y"));
}

TEST_CASE("proof files certify") {
    std::size_t n = 0;
    for (const auto& entry : std::filesystem::directory_iterator(KRIVINE_PROOF_DIR)) {
        std::ifstream in(entry.path());
        std::stringstream ss;
        ss << in.rdbuf();
        auto pf = parse_proof_file(ss.str());
        auto f = conclusion(pf.proof);
        CAPTURE(entry.path().filename().string());
        CHECK(realizes(ForcingAlgebra(1), extract_realizer(pf.proof), f).kind == Verdict::Kind::certified);
        ++n;
    }
    CHECK(n == 12);
}

TEST_CASE("template filling") {
    Corpus c = Corpus::standard();
    Binding b{{"a", "up(^0,^1)"}, {"p", "^0 sub ^1"}, {"P", "% sub ^1"}};
    CHECK(fill_template("$a sub $a", b, c) == "up(^0,^1) sub up(^0,^1)");
    CHECK(fill_template("$p -> bot", b, c) == "(^0 sub ^1) -> bot");
    CHECK(fill_template("$P(x)", b, c) == "(x sub ^1)");
}

TEST_CASE("catalog instances are closed realizers") {
    CHECK(catalog().size() == 59);
    for (const auto& e : catalog()) {
        CAPTURE(e.key);
        auto inst = e.instantiate(Corpus::standard());
        CHECK_FALSE(inst.empty());
        for (const auto& i : inst) {
            CHECK(is_realizer(i.term));
            CHECK(is_closed(i.formula));
        }
    }
}

TEST_CASE("Peirce entry is certified under forcing") {
    ForcingAlgebra fa(1);
    for (const auto& i : instances("peirce")) CHECK(realizes(fa, i.term, i.formula).kind == Verdict::Kind::certified);
}

TEST_CASE("theta theta and up commutativity pass in the d-algebra") {
    DAlgebra da;
    for (const char* key : {"subseteq-refl", "up-ii"})
        for (const auto& i : instances(key)) {
            CAPTURE(key);
            CAPTURE(i.binding);
            CHECK(realizes(da, i.term, i.formula, {2, 64}).kind == Verdict::Kind::passed_bounded);
        }
}

TEST_CASE("the three-abstraction term for hat transitivity") {
    DAlgebra da;
    auto V = da.universal_realizers().front();
    // t realizes ^0 eps! hat(2) through the universal realizer
    auto t = lam("a", app(app(var("a"), parse_term("\\x.\\y.x")), V));
    auto pi = parse_stack("#0 . w[p0]");
    auto args = [&](const TermPtr& head) { return Process{head, push_all({church(1), t}, pi)}; };
    auto literal = parse_term("\\v.\\w.\\k.w (\\u.u k)");
    auto fixed = parse_term("\\v.\\w.\\k.w k");
    CHECK(da.pole_contains(args(literal)) == PoleVerdict::out);
    CHECK(da.pole_contains(args(fixed)) == PoleVerdict::in);
    auto entry = find_entry("hat-transitive");
    REQUIRE(entry);
    CHECK(alpha_eq(parse_env_term(entry->term, env()), fixed));
}

TEST_CASE("chi from X, Y, A and B") {
    auto rep = verify_chi_pure(5);
    CHECK(rep.failures() == 0);
    CHECK(rep.disagreements() == 0);
    auto find = [&](unsigned n, unsigned m) {
        for (const auto& r : rep.rows)
            if (r.n == n && r.m == m) return r.pure;
        return '?';
    };
    CHECK(find(2, 5) == 't');
    CHECK(find(3, 3) == 's');
    CHECK(find(0, 0) == 's');
    CHECK(find(4, 1) == 'r');
}

TEST_CASE("Y and the fork term trace as expected") {
    CHECK(y_trace_check(20, 7).failures.empty());
    CHECK(fork_trace_check(20, 7).failures.empty());
}

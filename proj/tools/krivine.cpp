#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "krivine/enumerate.hpp"
#include "krivine/forcing.hpp"
#include "krivine/four_valued.hpp"
#include "krivine/machine.hpp"
#include "krivine/realize.hpp"
#include "krivine/realizer_lib.hpp"
#include "krivine/syntax.hpp"

using namespace krivine;
using nlohmann::json;

namespace {

struct Options {
    std::size_t budget = 100000;
    std::size_t depth = 2;
    unsigned atoms = 1;
    bool json = false;
    std::uint64_t seed = 20240601;
};

// One claim result, printed as a line of text or one JSON object.
struct Report {
    std::string claim;
    std::string verdict;
    std::string mode;
    std::optional<std::string> witness;
    std::size_t steps = 0;
    std::optional<std::size_t> universe;
    std::vector<std::string> detail;
    bool failed = false;
};

void emit(const Report& r, const Options& o) {
    if (o.json) {
        json j{{"claim", r.claim}, {"verdict", r.verdict}, {"steps", r.steps}, {"mode", r.mode}, {"seed", o.seed}};
        if (r.witness) j["witness"] = *r.witness;
        if (r.universe) j["universe"] = *r.universe;
        if (!r.detail.empty()) j["detail"] = r.detail;
        std::cout << j.dump() << "\n";
        return;
    }
    for (const auto& d : r.detail) std::cout << d << "\n";
    std::cout << r.verdict << "  " << r.claim;
    if (r.witness) std::cout << "  [witness " << *r.witness << "]";
    std::cout << "\n";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::unique_ptr<Algebra> make_algebra(const std::string& mode, const Options& o) {
    if (mode == "dalg") return std::make_unique<DAlgebra>(o.budget);
    if (mode == "forcing") return std::make_unique<ForcingAlgebra>(o.atoms);
    if (mode.rfind("forcing(", 0) == 0 && mode.back() == ')')
        return std::make_unique<ForcingAlgebra>(static_cast<unsigned>(std::stoul(mode.substr(8, mode.size() - 9))));
    throw std::runtime_error("unknown mode '" + mode + "'");
}

Report reduce_claim(const std::string& text, const Options& o) {
    Process p = parse_process(text);
    Trace tr = run(p, o.budget, Hooks::all(), !o.json);
    Report r{text, tr.exhausted() ? "budget-exhausted" : "normal-form", "pure"};
    r.steps = tr.steps;
    r.witness = print(tr.last());
    if (!o.json)
        for (std::size_t i = 0; i < tr.states.size(); ++i) {
            std::string rule = i ? rule_name(tr.rules[i - 1]) : "";
            rule.resize(9, ' ');
            r.detail.push_back(rule + print(tr.states[i]));
        }
    return r;
}

Report realizes_claim(const Algebra& alg, const std::string& text, const Env& env, const Options& o) {
    RealizesClaim c = parse_realizes(text, env);
    EngineOptions eo;
    eo.depth = o.depth;
    Verdict v = realizes(alg, c.term, c.formula, eo);
    Report r{text, to_string(v.kind), alg.name()};
    r.steps = v.checked;
    r.universe = v.universe;
    if (v.witness) r.witness = print(v.witness);
    r.failed = v.refuted();
    return r;
}

std::vector<std::string> pole_lines(const DAlgebra& d, const Process& p) {
    std::vector<std::string> parts;
    ComponentTag tag = component_tag(p);
    for (int i = 0; i < 2; ++i) {
        if (tag == ComponentTag::both || tag == (i == 0 ? ComponentTag::only_p1 : ComponentTag::only_p0)) continue;
        for (int j = 0; j < 2; ++j)
            parts.push_back("⊥⊥^" + std::to_string(i) + "_" + std::to_string(j) + ": " + to_string(d.pole_ij(p, i, j)));
    }
    parts.push_back("⊥⊥: " + to_string(d.pole_contains(p)));
    return parts;
}

Report pole_claim(const Algebra& alg, const std::string& text) {
    Process p = parse_process(text);
    Report r{text, to_string(alg.pole_contains(p)), alg.name()};
    if (auto d = dynamic_cast<const DAlgebra*>(&alg)) {
        std::string line;
        for (const auto& s : pole_lines(*d, p)) line += (line.empty() ? "" : "; ") + s;
        r.detail.push_back(line);
    }
    return r;
}

Report equiv_claim(const Algebra& alg, const std::string& text, const Env& env) {
    const ForcingAlgebra* fa = alg.as_forcing();
    if (!fa) throw std::runtime_error("equiv claims need a forcing mode");
    RealizesClaim c = parse_realizes(text, env);
    EquivalenceResult e = equivalence_check(*fa, c.term, c.formula);
    Report r{text, e.agree() ? "agree" : "disagree", alg.name()};
    r.universe = e.universe;
    r.detail.push_back(std::string("realizes: ") + (e.realizes ? "yes" : "no") +
                       "; tau(t) <= [[phi]]: " + (e.boolean_side ? "yes" : "no"));
    r.failed = !e.agree();
    return r;
}

// "<mode> <kind> <payload>" lines; declarations extend the environment.
int run_claim_file(const std::string& text, const Options& o) {
    Env env = Corpus::standard().env;
    std::istringstream in(text);
    std::string line;
    bool failed = false;
    while (std::getline(in, line)) {
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        line = line.substr(first);
        try {
            if (apply_declaration(line, env)) continue;
        } catch (const std::exception& e) {
            emit(Report{line, "error", "", e.what(), 0, {}, {}, true}, o);
            failed = true;
            continue;
        }
        std::istringstream words(line);
        std::string mode, kind;
        words >> mode >> kind;
        std::string payload;
        std::getline(words, payload);
        payload = payload.substr(std::min(payload.size(), payload.find_first_not_of(' ')));
        Report r;
        try {
            if (kind == "reduce") {
                r = reduce_claim(payload, o);
            } else {
                auto alg = make_algebra(mode, o);
                if (kind == "realizes") r = realizes_claim(*alg, payload, env, o);
                else if (kind == "pole") r = pole_claim(*alg, payload);
                else if (kind == "equiv") r = equiv_claim(*alg, payload, env);
                else throw std::runtime_error("unknown claim kind '" + kind + "'");
            }
        } catch (const std::exception& e) {
            r = Report{payload.empty() ? line : payload, "error", mode, e.what(), 0, {}, {}, true};
        }
        emit(r, o);
        failed = failed || r.failed;
    }
    return failed ? 1 : 0;
}

template <class F>
int guarded(const std::string& claim, const Options& o, F f) {
    try {
        return f();
    } catch (const std::exception& e) {
        emit(Report{claim, "error", "", e.what(), 0, {}, {}, true}, o);
        return 1;
    }
}

void common(CLI::App* sub, Options& o) {
    sub->add_option("--budget", o.budget, "machine step budget")->capture_default_str();
    sub->add_option("--depth", o.depth, "push depth of sampled falsity stacks")->capture_default_str();
    sub->add_option("--atoms", o.atoms, "atoms of the forcing Boolean algebra")->capture_default_str()
        ->check(CLI::Range(1u, 16u));
    sub->add_option("--seed", o.seed, "seed for randomized checks")->capture_default_str();
    sub->add_flag("--json", o.json, "one JSON object per claim");
}

int catalog_verify(const std::string& mode, const Options& o) {
    auto alg = make_algebra(mode, o);
    EngineOptions eo;
    eo.depth = o.depth;
    CatalogReport rep = verify_catalog(*alg, eo);
    for (const auto& row : rep.rows) {
        Report r{row.key + " [" + row.binding + "] " + print(row.term) + " ||- " + print(row.formula),
                 to_string(row.verdict.kind), alg->name()};
        r.steps = row.verdict.checked;
        r.universe = row.verdict.universe;
        if (row.verdict.witness) r.witness = print(row.verdict.witness);
        if (o.json || row.verdict.refuted()) emit(r, o);
    }
    if (!o.json) {
        std::cout << alg->name() << ": " << rep.rows.size() << " instances, "
                  << rep.count(Verdict::Kind::certified) << " certified, "
                  << rep.count(Verdict::Kind::passed_bounded) << " passed-bounded, "
                  << rep.count(Verdict::Kind::unknown) << " unknown, " << rep.refuted() << " refuted\n";
        for (const auto& k : rep.skipped) std::cout << "skipped " << k << " (forcing only)\n";
    }
    return rep.refuted() ? 1 : 0;
}

// Property checks over small d-algebra processes: disjoint poles, Xi transfer, anti-evaluation closure.
int dalg_suite(std::size_t max_size, const Options& o) {
    DAlgebra d(o.budget);
    Enumerator en({instr("d")}, {"p0", "p1"}, true);
    std::size_t checked = 0, unknown = 0, violations = 0;
    for (const Process& p : en.processes_upto(max_size)) {
        ComponentTag tag = component_tag(p);
        for (int i = 0; i < 2; ++i) {
            if (tag == ComponentTag::both || tag == (i == 0 ? ComponentTag::only_p1 : ComponentTag::only_p0)) continue;
            PoleVerdict a = d.pole_ij(p, i, 0), b = d.pole_ij(p, i, 1);
            checked += 2;
            unknown += (a == PoleVerdict::unknown) + (b == PoleVerdict::unknown);
            if (a == PoleVerdict::in && b == PoleVerdict::in) ++violations;
            if (i == 0) {
                Process q = xi(p);
                if (d.pole_ij(q, 1, 0) != a || d.pole_ij(q, 1, 1) != b) ++violations;
            }
        }
        if (auto next = step(p)) {
            PoleVerdict after = d.pole_contains(next->first);
            if (after == PoleVerdict::in && d.pole_contains(p) == PoleVerdict::out) ++violations;
        }
    }
    std::cout << "dalg suite size<=" << max_size << ": " << checked << " pole checks, " << unknown << " unknown, "
              << violations << " violations\n";
    return violations ? 1 : 0;
}

int suite(const Options& o) {
    bool ok = true;
    auto line = [&](const std::string& name, bool pass, const std::string& info) {
        std::cout << (pass ? "PASS " : "FAIL ") << name << "  " << info << "\n";
        ok = ok && pass;
    };
    ChiReport chi = verify_chi_pure(20, o.budget);
    line("chi", chi.failures() == 0 && chi.disagreements() == 0,
         std::to_string(chi.rows.size()) + " pairs, " + std::to_string(chi.failures()) + " wrong");
    TraceReport y = y_trace_check(100, o.seed), f = fork_trace_check(100, o.seed + 1);
    line("y-trace", y.failures.empty(), std::to_string(y.trials) + " trials");
    line("fork-trace", f.failures.empty(), std::to_string(f.trials) + " trials");
    EngineOptions eo;
    eo.depth = o.depth;
    ForcingAlgebra fa(o.atoms);
    CatalogReport fr = verify_catalog(fa, eo);
    line("catalog-forcing", fr.count(Verdict::Kind::certified) == fr.rows.size(),
         std::to_string(fr.rows.size()) + " instances");
    DAlgebra d(o.budget);
    CatalogReport dr = verify_catalog(d, eo);
    line("catalog-dalg", dr.refuted() == 0, std::to_string(dr.rows.size()) + " instances");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical realizability workbench"};
    app.require_subcommand(1);
    Options o;

    std::string text, mode = "forcing", file;

    auto* reduce = app.add_subcommand("reduce", "run the machine on a process and print the trace");
    reduce->add_option("process", text, "e.g. \"cc * t . w[p0]\"")->required();
    common(reduce, o);

    auto* check = app.add_subcommand("check", "check a realizability claim or a claim file");
    check->add_option("claim", text, "t ||- phi");
    check->add_option("--file", file, "claim file: <mode> <kind> <payload> per line");
    check->add_option("--mode", mode, "forcing or dalg")->capture_default_str();
    common(check, o);

    auto* prove = app.add_subcommand("prove", "extract and verify the realizer of a Hilbert proof");
    prove->add_option("file", file, "proof file")->required();
    prove->add_option("--mode", mode, "forcing or dalg")->capture_default_str();
    common(prove, o);

    auto* forcing = app.add_subcommand("forcing", "forcing algebra over a finite Boolean algebra");
    forcing->require_subcommand(1);
    auto* fcheck = forcing->add_subcommand("check", "realizes and the Boolean side for one claim");
    fcheck->add_option("claim", text)->required();
    common(forcing, o);
    common(fcheck, o);

    auto* dalg = app.add_subcommand("dalg", "the four-valued d-algebra");
    dalg->require_subcommand(1);
    auto* dpole = dalg->add_subcommand("pole", "pole memberships of a process");
    dpole->add_option("process", text)->required();
    auto* dxi = dalg->add_subcommand("xi", "image of a process under Xi");
    dxi->add_option("process", text)->required();
    std::size_t suite_size = 9;
    auto* dsuite = dalg->add_subcommand("suite", "pole properties over all small processes");
    dsuite->add_option("--size", suite_size, "maximum process size")->capture_default_str();
    for (auto* s : {dalg, dpole, dxi, dsuite}) common(s, o);

    auto* cat = app.add_subcommand("catalog", "the realizer catalog");
    cat->require_subcommand(1);
    auto* clist = cat->add_subcommand("list", "entries with their terms and schemas");
    auto* cverify = cat->add_subcommand("verify", "verify every instance");
    cverify->add_option("--mode", mode, "forcing or dalg")->capture_default_str();
    for (auto* s : {cat, clist, cverify}) common(s, o);

    auto* suite_cmd = app.add_subcommand("suite", "chi, traces and catalog checks");
    common(suite_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (check->parsed() && text.empty() == file.empty()) {
        std::cerr << "check: give either a claim or --file\n";
        return 2;
    }

    if (reduce->parsed()) return guarded(text, o, [&] {
        emit(reduce_claim(text, o), o);
        return 0;
    });
    if (check->parsed()) return guarded(text.empty() ? file : text, o, [&] {
        if (!file.empty()) return run_claim_file(slurp(file), o);
        auto alg = make_algebra(mode, o);
        Report r = realizes_claim(*alg, text, Corpus::standard().env, o);
        emit(r, o);
        return r.failed ? 1 : 0;
    });
    if (prove->parsed()) return guarded(file, o, [&] {
        ProofFile pf = parse_proof_file(slurp(file));
        FormulaPtr phi = conclusion(pf.proof);
        TermPtr t = extract_realizer(pf.proof);
        auto alg = make_algebra(mode, o);
        EngineOptions eo;
        eo.depth = o.depth;
        Verdict v = realizes(*alg, t, phi, eo);
        Report r{file, to_string(v.kind), alg->name()};
        r.steps = v.checked;
        r.universe = v.universe;
        if (v.witness) r.witness = print(v.witness);
        r.detail = {"conclusion: " + print(phi), "realizer: " + print(t)};
        r.failed = v.refuted();
        emit(r, o);
        return r.failed ? 1 : 0;
    });
    if (fcheck->parsed()) return guarded(text, o, [&] {
        ForcingAlgebra fa(o.atoms);
        Report r = realizes_claim(fa, text, Corpus::standard().env, o);
        RealizesClaim c = parse_realizes(text, Corpus::standard().env);
        r.detail.push_back("tau(t) = " + fa.ctx().show(tau(fa.ctx(), c.term)) +
                           "; sup ||phi|| = " + fa.ctx().show(fa.falsity_sup(c.formula)));
        if (in_fml_in(c.formula)) {
            EquivalenceResult e = equivalence_check(fa, c.term, c.formula);
            r.detail.push_back(std::string("tau(t) <= [[tau phi]]: ") + (e.boolean_side ? "yes" : "no"));
        }
        emit(r, o);
        return r.failed ? 1 : 0;
    });
    if (dpole->parsed()) return guarded(text, o, [&] {
        emit(pole_claim(DAlgebra(o.budget), text), o);
        return 0;
    });
    if (dxi->parsed()) return guarded(text, o, [&] {
        Process p = xi(parse_process(text));
        Report r{text, print(p), "dalg"};
        emit(r, o);
        return 0;
    });
    if (dsuite->parsed()) return guarded("dalg suite", o, [&] { return dalg_suite(suite_size, o); });
    if (clist->parsed()) {
        for (const auto& e : catalog()) {
            std::cout << e.key << "  (" << e.anchor << (e.forcing_only ? ", forcing only" : "") << ")\n";
            std::cout << "    " << e.term << "\n";
            for (const auto& c : e.claims) std::cout << "    ||- " << c << "\n";
        }
        return 0;
    }
    if (cverify->parsed()) return guarded("catalog", o, [&] { return catalog_verify(mode, o); });
    if (suite_cmd->parsed()) return suite(o);
    return 2;
}

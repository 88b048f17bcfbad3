// Acceptance runner: one PASS/FAIL line per criterion, limits pinned below.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "krivine/enumerate.hpp"
#include "krivine/forcing.hpp"
#include "krivine/four_valued.hpp"
#include "krivine/machine.hpp"
#include "krivine/realizer_lib.hpp"
#include "krivine/syntax.hpp"

#ifndef KRIVINE_PROOF_DIR
#define KRIVINE_PROOF_DIR "tests/data/proofs"
#endif

using namespace krivine;

namespace {

constexpr std::size_t kMachineMinProcesses = 10000;
constexpr double kMachineSeconds = 10;
constexpr double kChiSeconds = 30;
constexpr double kDalgSeconds = 120;
constexpr double kDalgUnknownRate = 0.01;
constexpr double kForcingSeconds = 120;
constexpr unsigned kTraceTrials = 100;
constexpr std::uint64_t kSeed = 20240601;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, const char* title, bool pass, const std::string& info) {
    std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", n, title, info.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. naive one-step matcher

TermPtr naive_subst(const TermPtr& t, const std::string& x, const TermPtr& s) {
    switch (t->kind) {
        case TermKind::Var: return t->name == x ? s : t;
        case TermKind::Lam: return t->name == x ? t : lam(t->name, naive_subst(t->left, x, s));
        case TermKind::App: return app(naive_subst(t->left, x, s), naive_subst(t->right, x, s));
        default: return t;
    }
}

std::optional<unsigned> numeral(const TermPtr& t) {
    static std::vector<std::string> forms = [] {
        std::vector<std::string> v;
        for (unsigned n = 0; n < 64; ++n) v.push_back(canonical(church(n)));
        return v;
    }();
    std::string c = canonical(t);
    for (unsigned n = 0; n < forms.size(); ++n)
        if (forms[n] == c) return n;
    return std::nullopt;
}

std::optional<Process> naive_step(const Process& p) {
    const TermPtr& h = p.head;
    const StackPtr& s = p.stack;
    std::vector<TermPtr> items;
    for (StackPtr it = s; !it->is_bottom(); it = it->tail) items.push_back(it->head);
    auto drop = [&](std::size_t n) {
        StackPtr r = s;
        while (n--) r = r->tail;
        return r;
    };
    switch (h->kind) {
        case TermKind::App: return Process{h->left, push_unchecked(h->right, s)};
        case TermKind::Lam:
            if (items.empty()) return std::nullopt;
            return Process{naive_subst(h->left, h->name, items[0]), drop(1)};
        case TermKind::CallCC:
            if (items.empty()) return std::nullopt;
            return Process{items[0], push_unchecked(cont(drop(1)), drop(1))};
        case TermKind::Cont:
            if (items.empty()) return std::nullopt;
            return Process{items[0], h->saved};
        case TermKind::Instr:
            if (h->name == "q" && items.size() >= 2 && is_closed(items[1]))
                return Process{items[0], push_unchecked(church(QuoteTable::global().code(items[1])), drop(2))};
            if (h->name == "chi" && items.size() >= 5) {
                auto a = numeral(items[0]), b = numeral(items[1]);
                if (!a || !b) return std::nullopt;
                return Process{*a < *b ? items[2] : *a == *b ? items[3] : items[4], drop(5)};
            }
            return std::nullopt;
        case TermKind::Var: return std::nullopt;
    }
    return std::nullopt;
}

void machine_conformance() {
    auto t0 = Clock::now();
    Enumerator en({callcc(), instr("q"), instr("chi")}, {"p0", "p1"}, true);
    std::size_t n = 0, bad = 0;
    for (const Process& p : en.processes_upto(7)) {
        ++n;
        auto got = step(p, Hooks::all());
        auto want = naive_step(p);
        if (got.has_value() != want.has_value() || (got && !alpha_eq(got->first, *want))) {
            if (bad++ < 3) std::printf("  mismatch on %s\n", print(p).c_str());
        }
    }
    double secs = since(t0);
    report(1, "machine conformance", bad == 0 && n >= kMachineMinProcesses && secs < kMachineSeconds,
           std::to_string(n) + " processes (>= 10000), " + std::to_string(bad) + " disagreements, " +
               fmt("%.2fs (< %.0fs)", secs, kMachineSeconds));
}

// ---------------------------------------------------------------------------
// 2. comparator

void comparator() {
    auto t0 = Clock::now();
    ChiReport rep = verify_chi_pure(20);
    double secs = since(t0);
    report(2, "pure comparator", rep.rows.size() == 441 && rep.failures() == 0 && rep.disagreements() == 0 &&
                                     secs < kChiSeconds,
           std::to_string(rep.rows.size()) + " pairs, " + std::to_string(rep.failures()) + " wrong branches, " +
               std::to_string(rep.disagreements()) + " disagreements with @chi, " +
               fmt("%.2fs (< %.0fs)", secs, kChiSeconds));
}

// ---------------------------------------------------------------------------
// 3. four-valued algebra

void four_valued() {
    auto t0 = Clock::now();
    DAlgebra d(100000);
    Enumerator en({instr("d")}, {"p0", "p1"}, true);
    std::size_t procs = 0, checks = 0, unknown = 0, disjoint = 0, transfer = 0, closure = 0;
    auto count = [&](PoleVerdict v) {
        ++checks;
        if (v == PoleVerdict::unknown) ++unknown;
        return v;
    };
    for (const Process& p : en.processes_upto(9)) {
        ++procs;
        ComponentTag tag = component_tag(p);
        auto next = step(p);
        for (int i = 0; i < 2; ++i) {
            if (tag == ComponentTag::both || tag == (i == 0 ? ComponentTag::only_p1 : ComponentTag::only_p0)) continue;
            PoleVerdict v[2] = {count(d.pole_ij(p, i, 0)), count(d.pole_ij(p, i, 1))};
            if (v[0] == PoleVerdict::in && v[1] == PoleVerdict::in) ++disjoint;
            if (i == 0) {
                Process q = xi(p);
                for (int j = 0; j < 2; ++j)
                    if (count(d.pole_ij(q, 1, j)) != v[j]) ++transfer;
            }
            if (next)
                for (int j = 0; j < 2; ++j)
                    if (d.pole_ij(next->first, i, j) == PoleVerdict::in && v[j] == PoleVerdict::out) ++closure;
        }
        if (next && d.pole_contains(next->first) == PoleVerdict::in && count(d.pole_contains(p)) == PoleVerdict::out)
            ++closure;
    }
    double secs = since(t0);
    double rate = checks ? static_cast<double>(unknown) / checks : 0;
    report(3, "four-valued algebra",
           disjoint + transfer + closure == 0 && rate < kDalgUnknownRate && secs < kDalgSeconds,
           std::to_string(procs) + " processes, violations: disjointness " + std::to_string(disjoint) +
               ", Xi transfer " + std::to_string(transfer) + ", anti-evaluation " + std::to_string(closure) +
               fmt("; unknown rate %.4f (< %.2f), ", rate, kDalgUnknownRate) + fmt("%.2fs (< %.0fs)", secs, kDalgSeconds));
}

// ---------------------------------------------------------------------------
// 4. forcing equivalence

// Names of rank <= 2 from sng, up, pair, reish and hat.
std::vector<NamePtr> small_names() {
    std::vector<NamePtr> out;
    std::set<std::size_t> seen;
    auto add = [&](const NamePtr& n) {
        if (rank(n) <= 2 && seen.insert(n->id).second) out.push_back(n);
    };
    add(empty_name());
    add(sng(empty_name()));
    add(up(empty_name(), empty_name()));
    add(hat(1));
    std::vector<NamePtr> low = out;
    for (const auto& a : low) {
        add(sng(a));
        for (const auto& b : low) {
            add(up(a, b));
            add(pairing_name(a, b));
        }
    }
    add(reish_nat(2));
    add(hat(2));
    return out;
}

// Two-valued reading at one atom: each Boolean name projects to a hereditarily finite set.
struct PointOracle {
    const BoolCtx& ctx;
    unsigned atom;
    std::map<std::size_t, HF> memo;

    const HF& project(const BNamePtr& b) {
        if (auto it = memo.find(b->id); it != memo.end()) return it->second;
        std::vector<HF> elems;
        for (const auto& [c, v] : b->graph)
            if (v >> atom & 1u) elems.push_back(project(c));
        return memo.emplace(b->id, hf_set(std::move(elems))).first->second;
    }
    static bool member(const HF& a, const HF& b) {
        for (const auto& e : b.elems)
            if (e == a) return true;
        return false;
    }
    bool truth(const BFormulaPtr& f, std::map<std::string, BNamePtr>& env) {
        auto ref = [&](const BNameRef& r) { return project(r.is_var() ? env.at(r.var) : r.name); };
        switch (f->kind) {
            case BFormula::Kind::Top: return true;
            case BFormula::Kind::Bot: return false;
            case BFormula::Kind::NotIn: return !member(ref(f->a), ref(f->b));
            case BFormula::Kind::Sub: {
                HF a = ref(f->a), b = ref(f->b);
                for (const auto& e : a.elems)
                    if (!member(e, b)) return false;
                return true;
            }
            case BFormula::Kind::Impl: return !truth(f->left, env) || truth(f->right, env);
            case BFormula::Kind::Forall: {
                auto saved = env.count(f->var) ? env[f->var] : nullptr;
                bool all = true;
                for (const auto& n : f->universe) {
                    env[f->var] = n;
                    if (!truth(f->left, env)) {
                        all = false;
                        break;
                    }
                }
                if (saved) env[f->var] = saved;
                else env.erase(f->var);
                return all;
            }
        }
        return false;
    }
};

BElem brute_truth(const BoolCtx& ctx, const BFormulaPtr& f) {
    BElem m = 0;
    for (unsigned i = 0; i < ctx.atoms(); ++i) {
        PointOracle o{ctx, i, {}};
        std::map<std::string, BNamePtr> env;
        if (o.truth(f, env)) m |= 1u << i;
    }
    return m;
}

// Fml_in formulas of depth <= 2 whose atoms range over `atoms` and the bound variables in scope.
std::vector<FormulaPtr> formulas(const std::vector<NamePtr>& atoms, const std::vector<NamePtr>& universe) {
    const std::vector<std::string> vars{"x", "y"};
    std::function<std::vector<FormulaPtr>(std::size_t, std::size_t)> gen = [&](std::size_t depth, std::size_t scope) {
        std::vector<NameRef> refs;
        for (const auto& a : atoms) refs.push_back(nref(a));
        for (std::size_t v = 0; v < scope; ++v) refs.push_back(nvar(vars[v]));
        std::vector<FormulaPtr> out{f_top(), f_bot()};
        for (const auto& a : refs)
            for (const auto& b : refs) {
                out.push_back(f_notin(a, b));
                out.push_back(f_sub(a, b));
            }
        if (depth == 0) return out;
        auto lower = gen(depth - 1, scope);
        std::vector<FormulaPtr> res = out;
        for (const auto& l : lower)
            for (const auto& r : lower)
                if (formula_depth(l) == depth - 1 || formula_depth(r) == depth - 1) res.push_back(f_impl(l, r));
        if (scope < vars.size())
            for (const auto& b : gen(depth - 1, scope + 1)) res.push_back(f_forall(vars[scope], universe, b));
        std::vector<FormulaPtr> closed;
        for (const auto& f : res)
            if (scope > 0 || is_closed(f)) closed.push_back(f);
        return closed;
    };
    std::vector<FormulaPtr> all = gen(2, 0);
    std::vector<FormulaPtr> out;
    std::set<std::string> seen;
    for (const auto& f : all)
        if (is_closed(f) && formula_depth(f) <= 2 && seen.insert(f->key).second) out.push_back(f);
    return out;
}

std::vector<TermPtr> candidate_terms(const ForcingAlgebra& alg) {
    std::vector<TermPtr> out;
    std::set<std::string> seen;
    auto add = [&](const TermPtr& t) {
        if (seen.insert(canonical(t)).second) out.push_back(t);
    };
    Corpus corpus = Corpus::standard();
    for (const auto& e : catalog())
        for (const auto& inst : e.instantiate(corpus)) add(inst.term);
    std::vector<TermPtr> constants{callcc()};
    for (BElem m : alg.ctx().elements()) constants.push_back(cont(bottom(alg.ctx().symbol(m))));
    Enumerator en(constants, {}, false);
    for (const auto& t : en.closed_upto(4)) add(t);
    return out;
}

void forcing_equivalence() {
    auto t0 = Clock::now();
    std::vector<NamePtr> universe = small_names();
    std::vector<FormulaPtr> fs = formulas({reish_nat(0), reish_nat(1)}, universe);
    std::size_t pairs = 0, bad = 0, oracle_bad = 0, terms = 0;
    for (unsigned atoms : {1u, 2u}) {
        ForcingAlgebra alg(atoms);
        const BoolCtx& ctx = alg.ctx();
        std::vector<TermPtr> ts = candidate_terms(alg);
        terms += ts.size();
        std::map<BElem, std::vector<TermPtr>> by_tau;
        for (const auto& t : ts) by_tau[tau(ctx, t)].push_back(t);
        for (const auto& f : fs) {
            BElem truth = bool_truth(ctx, translate(alg, f));
            if (truth != brute_truth(ctx, translate(alg, f))) ++oracle_bad;
            for (const auto& [m, group] : by_tau)
                for (const auto& t : group) {
                    ++pairs;
                    if ((realizes(alg, t, f).kind == Verdict::Kind::certified) != ctx.leq(m, truth)) {
                        if (bad++ < 3) std::printf("  disagreement: %s ||- %s\n", print(t).c_str(), print(f).c_str());
                    }
                }
        }
    }
    double secs = since(t0);
    report(4, "forcing equivalence", bad == 0 && oracle_bad == 0 && secs < kForcingSeconds,
           std::to_string(fs.size()) + " formulas x " + std::to_string(terms) + " terms over 1 and 2 atoms (" +
               std::to_string(pairs) + " pairs, " + std::to_string(universe.size()) + " names), " +
               std::to_string(bad) + " disagreements, " + std::to_string(oracle_bad) + " oracle mismatches, " +
               fmt("%.2fs (< %.0fs)", secs, kForcingSeconds));
}

// ---------------------------------------------------------------------------
// 5. roundtrips

std::vector<BNamePtr> boolean_names(const BoolCtx& ctx) {
    std::vector<BNamePtr> low{make_bname({})};
    for (BElem v : ctx.elements())
        if (v) low.push_back(make_bname({{low[0], v}}));
    std::vector<BNamePtr> out = low;
    std::vector<BElem> values{0};
    for (BElem v : ctx.elements())
        if (v) values.push_back(v);
    std::vector<std::size_t> idx(low.size(), 0);
    while (true) {
        std::vector<std::pair<BNamePtr, BElem>> g;
        for (std::size_t i = 0; i < low.size(); ++i)
            if (values[idx[i]]) g.emplace_back(low[i], values[idx[i]]);
        out.push_back(make_bname(g));
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < values.size()) break;
            idx[i] = 0;
        }
        if (i == idx.size()) break;
    }
    std::set<std::size_t> seen;
    std::vector<BNamePtr> uniq;
    for (const auto& b : out)
        if (seen.insert(b->id).second) uniq.push_back(b);
    return uniq;
}

void roundtrips() {
    ForcingAlgebra alg(2);
    const BoolCtx& ctx = alg.ctx();
    std::size_t bnames = 0, bfail = 0, names = 0, nfail = 0;
    for (const auto& b : boolean_names(ctx)) {
        ++bnames;
        if (bool_eq(ctx, b, tau_name(alg, sigma_name(ctx, b))) != ctx.one()) ++bfail;
    }
    std::vector<NamePtr> corpus = small_names();
    for (const auto& n : Corpus::standard().env.universe)
        if (rank(n) <= 2) corpus.push_back(n);
    for (unsigned atoms : {1u, 2u}) {
        ForcingAlgebra fa(atoms);
        for (const auto& a : corpus) {
            ++names;
            NamePtr back = sigma_name(fa.ctx(), tau_name(fa, a));
            Verdict v = realizes(fa, identity(), f_sim(nref(a), nref(back)));
            if (v.kind != Verdict::Kind::certified) ++nfail;
        }
    }
    report(5, "tau/sigma roundtrips", bfail == 0 && nfail == 0,
           std::to_string(bnames) + " Boolean names of rank <= 2 over 2 atoms (" + std::to_string(bfail) +
               " failures), " + std::to_string(names) + " name checks of I ||- a ~ sigma(tau(a)) (" +
               std::to_string(nfail) + " failures)");
}

// ---------------------------------------------------------------------------
// 6. catalog

void catalog_check() {
    std::size_t forcing_rows = 0, not_certified = 0;
    for (unsigned atoms : {1u, 2u}) {
        ForcingAlgebra fa(atoms);
        CatalogReport rep = verify_catalog(fa);
        forcing_rows += rep.rows.size();
        not_certified += rep.rows.size() - rep.count(Verdict::Kind::certified);
    }
    DAlgebra d;
    CatalogReport dr = verify_catalog(d);
    std::size_t gamma = 0, d2 = 0;
    for (const auto& r : dr.rows)
        if (r.key == "gamma") {
            ++gamma;
            if (r.binding.find("d(2)") != std::string::npos) ++d2;
        }
    report(6, "realizer catalog", not_certified == 0 && dr.refuted() == 0 && gamma > 0 && d2 > 0,
           std::to_string(catalog().size()) + " entries; forcing " + std::to_string(forcing_rows) + " instances, " +
               std::to_string(not_certified) + " not certified; d-algebra " + std::to_string(dr.rows.size()) +
               " instances incl. " + std::to_string(gamma) + " gamma/d(2) rows, " + std::to_string(dr.refuted()) +
               " refuted");
}

// ---------------------------------------------------------------------------
// 7. adequacy

void adequacy() {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(KRIVINE_PROOF_DIR))
        if (e.path().extension() == ".proof") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::size_t bad = 0;
    for (const auto& path : files) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            ProofFile pf = parse_proof_file(ss.str());
            FormulaPtr phi = conclusion(pf.proof);
            TermPtr t = extract_realizer(pf.proof);
            for (unsigned atoms : {1u, 2u})
                if (realizes(ForcingAlgebra(atoms), t, phi).kind != Verdict::Kind::certified) {
                    ++bad;
                    std::printf("  not certified: %s\n", path.filename().c_str());
                }
        } catch (const std::exception& e) {
            ++bad;
            std::printf("  %s: %s\n", path.filename().c_str(), e.what());
        }
    }
    report(7, "adequacy", files.size() == 12 && bad == 0,
           std::to_string(files.size()) + " Hilbert proofs, " + std::to_string(bad) + " failures");
}

// ---------------------------------------------------------------------------
// 8. traces

void traces() {
    TraceReport y = y_trace_check(kTraceTrials, kSeed);
    TraceReport f = fork_trace_check(kTraceTrials, kSeed + 1);
    report(8, "fixpoint and fork traces",
           y.trials == kTraceTrials && f.trials == kTraceTrials && y.failures.empty() && f.failures.empty(),
           "Y " + std::to_string(y.trials - y.failures.size()) + "/" + std::to_string(y.trials) + ", fork " +
               std::to_string(f.trials - f.failures.size()) + "/" + std::to_string(f.trials) + " (seed " +
               std::to_string(kSeed) + ")");
}

}  // namespace

int main() {
    machine_conformance();
    comparator();
    four_valued();
    forcing_equivalence();
    roundtrips();
    catalog_check();
    adequacy();
    traces();
    std::printf("%d of 8 criteria failed\n", failures);
    return failures ? 1 : 0;
}

#include "krivine/realizer_lib.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <random>
#include <set>
#include <thread>

#include "krivine/enumerate.hpp"
#include "krivine/four_valued.hpp"
#include "krivine/machine.hpp"

namespace krivine {

Corpus Corpus::standard() {
    Corpus c;
    c.env = Env::standard();
    c.env.terms["CHI"] = chi_pure();
    c.env.lifts["neg"] = make_lift("neg", {{hf_nat(0), hf_nat(1)}, {hf_nat(1), hf_nat(0)}}, hf_nat(2), hf_nat(2));
    std::vector<std::string> names{"^0",   "^1",   "^2", "sng(^1)", "up(^0,^1)", "hat(1)",
                                   "hat(2)", "pair(^0,hat(1))", "{(^0,[#1]>ALL)}"};
    for (const auto& n : names) c.env.universe.push_back(parse_name(n, c.env));
    std::vector<std::string> small{"^0", "^1", "sng(^1)"};
    for (const char* k : {"a", "b", "c", "d"}) c.domains[k] = names;
    for (const char* k : {"m", "n", "o", "s"}) c.domains[k] = small;
    for (const char* k : {"p", "q", "r"}) c.domains[k] = {"bot", "top", "^1 sub ^0", "^0 sub ^1", "^0 in! ^1"};
    c.domains["P"] = {"% sub ^1", "^0 in! %", "% sub %", "^0 eps! %"};
    c.domains["alpha"] = {"1", "2", "3"};
    c.domains["beta"] = {"0", "1", "2"};
    c.domains["i"] = {"0", "1", "2"};
    c.domains["j"] = {"0", "1", "2"};
    c.domains["e"] = {"0", "1"};
    return c;
}

namespace {

bool ident_char(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; }

std::string read_ident(const std::string& text, std::size_t& i) {
    std::size_t start = i;
    while (i < text.size() && ident_char(text[i])) ++i;
    return text.substr(start, i - start);
}

void collect_metavars(const std::string& text, std::set<std::string>& out) {
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '$') continue;
        ++i;
        std::string id = read_ident(text, i);
        out.insert(id);
        if (id == "P" && i < text.size() && text[i] == '(' && i + 1 < text.size() && text[i + 1] == '$') {
            i += 2;
            out.insert(read_ident(text, i));
        }
        --i;
    }
}

// Names are written without spaces, so only propositions get parentheses.
std::string wrap(const std::string& v) { return v.find(' ') == std::string::npos ? v : "(" + v + ")"; }

const std::string& lookup(const Binding& b, const std::string& k) {
    auto it = b.find(k);
    if (it == b.end()) throw std::logic_error("unbound metavariable $" + k);
    return it->second;
}

}  // namespace

std::string fill_template(const std::string& text, const Binding& b, const Corpus&) {
    std::string out;
    for (std::size_t i = 0; i < text.size();) {
        if (text[i] != '$') {
            out += text[i++];
            continue;
        }
        ++i;
        std::string id = read_ident(text, i);
        if (id == "P" && i < text.size() && text[i] == '(') {
            std::size_t close = text.find(')', i);
            std::string arg = text.substr(i + 1, close - i - 1);
            i = close + 1;
            if (!arg.empty() && arg[0] == '$') arg = lookup(b, arg.substr(1));
            std::string pred = lookup(b, "P");
            std::string filled;
            for (char ch : pred) filled += ch == '%' ? wrap(arg) : std::string(1, ch);
            out += "(" + filled + ")";
        } else {
            out += wrap(lookup(b, id));
        }
    }
    return out;
}

std::vector<CatalogInstance> CatalogEntry::instantiate(const Corpus& corpus) const {
    std::vector<CatalogInstance> out;
    for (const auto& claim : claims) {
        std::set<std::string> vars;
        collect_metavars(term, vars);
        collect_metavars(claim, vars);
        std::vector<std::string> keys(vars.begin(), vars.end());
        std::vector<const std::vector<std::string>*> ranges;
        for (const auto& k : keys) {
            auto it = domains.find(k);
            if (it == domains.end()) it = corpus.domains.find(k);
            if (it == corpus.domains.end()) throw std::logic_error("no domain for $" + k + " in " + key);
            ranges.push_back(&it->second);
        }
        std::vector<std::size_t> idx(keys.size(), 0);
        while (true) {
            Binding b;
            for (std::size_t i = 0; i < keys.size(); ++i) b[keys[i]] = (*ranges[i])[idx[i]];
            bool keep = !filter || filter(b);
            if (b.count("alpha") && b.count("beta") && std::stoi(b["beta"]) >= std::stoi(b["alpha"])) keep = false;
            if (keep) {
                CatalogInstance inst;
                for (const auto& [k, v] : b) inst.binding += (inst.binding.empty() ? "" : ", ") + k + "=" + v;
                std::string text = fill_template(claim, b, corpus);
                try {
                    inst.term = parse_env_term(fill_template(term, b, corpus), corpus.env);
                    inst.formula = parse_formula(text, corpus.env);
                } catch (const SyntaxError& e) {
                    throw std::logic_error(key + " [" + inst.binding + "]: " + e.what() + " in " + text);
                }
                if (!krivine::is_realizer(inst.term)) throw std::logic_error(key + ": term is not a realizer");
                out.push_back(std::move(inst));
            }
            std::size_t i = 0;
            for (; i < keys.size(); ++i) {
                if (++idx[i] < ranges[i]->size()) break;
                idx[i] = 0;
            }
            if (i == keys.size()) break;
        }
    }
    return out;
}

namespace {

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> c;
    auto add = [&](std::string key, std::string term, std::vector<std::string> claims,
                   std::string anchor) -> CatalogEntry& {
        CatalogEntry e;
        e.key = std::move(key);
        e.term = std::move(term);
        e.claims = std::move(claims);
        e.anchor = std::move(anchor);
        c.push_back(std::move(e));
        return c.back();
    };
    auto ij = [](auto cmp) {
        return [cmp](const Binding& b) { return cmp(std::stoi(b.at("i")), std::stoi(b.at("j"))); };
    };

    // propositional and quantifier logic
    add("peirce", "cc", {"(($p -> $q) -> $p) -> $p"}, "Peirce's law");
    add("axiom-k", "\\u.\\v.u", {"$p -> ($q -> $p)"}, "Adequacy");
    add("axiom-s", "\\u.\\v.\\w.(u w) (v w)", {"($p -> ($q -> $r)) -> (($p -> $q) -> ($p -> $r))"}, "Adequacy");
    add("axiom-classical", "CL", {"(($p -> bot) -> ($q -> bot)) -> ((($p -> bot) -> $q) -> $p)"}, "Adequacy");
    add("forall-inst", "I", {"(forall x . $P(x)) -> $P($a)"}, "Adequacy");
    add("forall-dist", "\\u.\\v.u v", {"(forall x . ($p -> $P(x))) -> ($p -> forall x . $P(x))"}, "Adequacy");
    add("falsity-subset", "I", {"bot -> $p", "$p -> $p"}, "Falsity of bottom");
    add("existential", "\\u.u TT", {"exists x . x sub x", "exists x . x sub $a"}, "Existential quantifier");
    add("conjunction", "\\u.(u TT) TT", {"$a sub $a and $b sub $b"}, "Conjunction");
    add("not-implication", "\\u.I (u TT)", {"($a sub $a -> bot) -> bot", "($a sub $a -> $a ne $a) -> bot"},
        "Negated implication");
    add("contrapose-i", "\\u.\\v.u (I v)", {"($p -> bot) -> ($p -> bot)"}, "Contraposition");
    add("contrapose-k", "\\u.\\v.u (K v)", {"(($q -> $p) -> bot) -> ($p -> bot)"}, "Contraposition");
    add("uncontrapose", "\\u.cc (\\k.(I k) u)", {"$p -> $p"}, "Contraposition");

    // bounded quantifiers and hats
    add("bounded-universal-1", "\\u.\\v.v u",
        {"(forallr x $a . $P(x)) -> forall x . (($P(x) -> bot) -> x eps! $a)"}, "Bounded universal");
    add("bounded-universal-2", "\\u.cc (\\k.u k)",
        {"(forall x . (($P(x) -> bot) -> x eps! $a)) -> forallr x $a . $P(x)"}, "Bounded universal")
        .domains["a"] = {"^1", "^2", "sng(^1)", "pair(^0,hat(1))"};
    add("hat-elements", "\\u.u #$beta", {"hat($beta) eps hat($alpha)"}, "Hat ordinals");
    add("hat-bounded-1", "\\u.\\v.\\w.v (u w)",
        {"(forallh x $alpha . $P(x)) -> forall x . (($P(x) -> bot) -> x eps! hat($alpha))"}, "Hat ordinals");
    add("hat-bounded-2", "\\u.cc u",
        {"(forall x . (($P(x) -> bot) -> x eps! hat($alpha))) -> forallh x $alpha . $P(x)"}, "Hat ordinals");
    add("hat-transitive", "\\v.\\w.\\k.w k",
        {"forallh x $alpha . forall y . (y eps! hat($alpha) -> y eps! x)"}, "Hat ordinals are transitive");
    add("trichotomy", "\\b.\\c.\\u.\\v.\\w.((((CHI b) c) (u b)) v) (w c)",
        {"forallh x $alpha . forallh y $alpha . (x eps! y -> (x ne y -> (y eps! x -> bot)))"},
        "Hat ordinals are trichotomous");

    // inclusion and equality
    add("subseteq-refl", "TT", {"forall x . x sub x"}, "Subset reflexivity");
    add("notin-noteps", "\\u.(u TT) TT", {"forall x . forall y . (x in! y -> x eps! y)"}, "Subset reflexivity");
    add("simeq-refl", "\\u.(u TT) TT", {"forall x . x ~ x"}, "Subset reflexivity");
    add("inclusion-implication-1", "\\u.u I", {"($m = $n -> $p) -> hook($m, $n) $p"}, "Inclusion implication");
    add("inclusion-implication-2", "\\u.\\v.cc (\\k.v (k u))", {"hook($m, $n) $p -> ($m = $n -> $p)"},
        "Inclusion implication");
    add("leibniz-1", "I", {"hook($m, $n) forall x . ($n eps! x -> $m eps! x)"}, "Leibniz equality");
    add("leibniz-2", "I", {"(forall x . ($n eps! x -> $m eps! x)) -> $m = $n"}, "Leibniz equality")
        .domains["m"] = {"^0"};
    add("eq-refl", "I", {"forall x . x = x"}, "Equality");
    add("eq-sym", "I", {"forall x . forall y . hook(x, y) y = x"}, "Equality");
    add("eq-trans", "I", {"forall x . forall y . forall z . hook(x, y) hook(y, z) x = z"}, "Equality");
    add("eq-subst", "I", {"forall x . forall y . hook(x, y) ($P(x) -> $P(y))"}, "Equality");

    // singletons and unordered pairs
    add("sng-i", "I", {"hook(sng($a), sng($b)) $a = $b"}, "Singletons");
    add("sng-ii", "\\u.u I", {"sng($a) sub ^0 -> bot"}, "Singletons");
    add("sng-iii", "I", {"($a nsim $b) -> $a in! sng($b)"}, "Singletons");
    add("sng-iv", "\\u.\\v.\\w.(w u) v", {"$a sub $b -> ($b sub $a -> sng($a) sub sng($b))"}, "Singletons");
    add("sng-v", "\\u.cc u", {"sng($a) sub sng($b) -> $a sub $b"}, "Singletons");
    add("up-i", "\\u.(u I) I", {"hook(up($m, $n), up($o, $s)) ($m = $o and $n = $s)"}, "Unordered pairs");
    add("up-ii", "\\u.\\i.(i (\\v.u #0)) (u #1)", {"forall z . (z eps! up($a, $b) -> z eps! up($b, $a))"},
        "Unordered pairs");
    add("up-iv", "\\t.\\s.cc (\\k.t (\\q.\\r.\\i.(((i (\\w.s)) k) q) r))",
        {"($o in! up($m, $n) -> bot) -> (($o sub $n -> ($n sub $o -> bot)) -> $o sub $m)"}, "Unordered pairs");

    // reish names
    add("subsets-of-2", "I", {"forallr x ^2 . forall y . (x ne ^1 -> y eps! x)"}, "Reish names");
    add("reish2-trivial", "I", {"forallr x ^2 . (x ne ^0 -> (x ne ^1 -> bot))"}, "Reish names").forcing_only = true;
    add("reish-subset", "\\u.(u TT) TT", {"^$i sub ^$j"}, "Reish names").filter = ij(std::less_equal<int>());
    add("reish-elements", "I", {"^$i eps ^$j"}, "Reish names").filter = ij(std::less<int>());
    add("reish-transitive", "I", {"forallr x ^$j . forall y . (y eps! ^$j -> y eps! x)"}, "Reish names");

    // lifted ground function
    add("lift-graph-1", "I", {"op(^0, $a) eps lift(neg) -> ^1 = $a", "op(^1, $a) eps lift(neg) -> ^0 = $a"},
        "Lifted functions");
    add("lift-graph-2", "I", {"hook(^1, $a) op(^0, $a) eps lift(neg)", "hook(^0, $a) op(^1, $a) eps lift(neg)"},
        "Lifted functions");
    add("lift-function", "\\u.\\v.v u",
        {"$a ne $b -> (op(^$e, $a) eps lift(neg) -> op(^$e, $b) eps! lift(neg))"}, "Lifted functions");
    add("lift-codomain", "I", {"$a eps! ^2 -> op(^$e, $a) eps! lift(neg)"}, "Lifted functions");
    add("lift-image", "I", {"forallr x ^2 . lift(neg, x, y) y eps ^2"}, "Lifted functions");

    // ZF-epsilon axioms
    add("extensionality-1", "I", {"$a in! $b -> forall z . ($a sub z -> (z sub $a -> z eps! $b))"},
        "Extensionality");
    add("extensionality-2", "I", {"(forall z . ($a sub z -> (z sub $a -> z eps! $b))) -> $a in! $b"},
        "Extensionality");
    add("extensionality-3", "I", {"$a sub $b -> forall z . (z in! $b -> z eps! $a)"}, "Extensionality");
    add("extensionality-4", "I", {"(forall z . (z in! $b -> z eps! $a)) -> $a sub $b"}, "Extensionality");
    add("separation-1", "I", {"forall x . (x eps! sep($a, y. $P(y)) -> ($P(x) -> x eps! $a))"}, "Separation")
        .forcing_only = true;
    add("separation-2", "I", {"forall x . (($P(x) -> x eps! $a) -> x eps! sep($a, y. $P(y)))"}, "Separation")
        .forcing_only = true;
    add("pairing", "I", {"$a eps pair($a, $b)", "$b eps pair($a, $b)"}, "Pairing");
    add("union", "I", {"forall x . forall y . ((y eps! x -> x eps! $a) -> (y eps! union($a) -> x eps! $a))"},
        "Union");
    add("infinity", "\\u.u I", {"(forall y in {sng($c)} . ($c eps y -> y eps! inf(^0, 4))) -> $c eps! inf(^0, 4)"},
        "Infinity")
        .domains["c"] = {"^0", "^1", "sng(^1)"};
    add("induction", "Y",
        {"(forall x . ((forall y . ($P(y) -> y eps! x)) -> ($P(x) -> bot))) -> forall z . ($P(z) -> bot)"},
        "Epsilon induction");
    return c;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

const CatalogEntry* find_entry(const std::string& key) {
    for (const auto& e : catalog())
        if (e.key == key) return &e;
    return nullptr;
}

std::size_t CatalogReport::count(Verdict::Kind k) const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [&](const Row& r) { return r.verdict.kind == k; }));
}

CatalogReport verify_catalog(const Algebra& alg, const EngineOptions& opt, const Corpus& corpus, unsigned threads) {
    CatalogReport rep;
    bool forcing = alg.as_forcing() != nullptr;
    for (const auto& e : catalog()) {
        if (e.forcing_only && !forcing) {
            rep.skipped.push_back(e.key);
            continue;
        }
        for (auto& inst : e.instantiate(corpus))
            rep.rows.push_back({e.key, e.anchor, inst.binding, inst.term, inst.formula, {}});
    }
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < rep.rows.size();)
            rep.rows[i].verdict = realizes(alg, rep.rows[i].term, rep.rows[i].formula, opt);
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    if (auto d = dynamic_cast<const DAlgebra*>(&alg)) {
        for (auto& g : verify_gamma_claims(*d, opt).rows)
            rep.rows.push_back({"gamma", "Gamma names", g.claim, g.term, g.formula, g.verdict});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// comparing numerals

namespace {

Env chi_env() {
    Env e;
    e.terms["X"] = parse_term("\\u.#1");
    e.terms["Y0"] = parse_term("\\u.#0");
    e.terms["A"] = parse_term("\\u.\\v.v u");
    e.terms["B"] = parse_env_term("\\u.\\v.u (A v)", e);
    return e;
}

}  // namespace

TermPtr theta_pure() {
    static const TermPtr t = parse_env_term("\\i.\\j.(((j A) (A X)) (i B)) Y0", chi_env());
    return t;
}

TermPtr chi_pure() {
    static const TermPtr t = [] {
        Env e = chi_env();
        e.terms["TH"] = theta_pure();
        return parse_env_term("\\i.\\j.\\et.\\es.\\er.(((TH i) j) (\\u.(((TH j) i) (\\v.es)) er)) et", e);
    }();
    return t;
}

std::size_t ChiReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const Row& r) { return r.pure != r.expected; }));
}

std::size_t ChiReport::disagreements() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const Row& r) { return r.pure != r.hook; }));
}

ChiReport verify_chi_pure(unsigned n_max, std::size_t budget) {
    TermPtr mt = marker("chi_t"), ms = marker("chi_s"), mr = marker("chi_r");
    StackPtr pi = bottom("pi");
    auto branch = [&](const Trace& tr) {
        if (tr.exhausted()) return '!';
        const Process& last = tr.last();
        if (!alpha_eq(last.stack, pi) || last.head->kind != TermKind::Instr) return '?';
        if (last.head->name == "chi_t") return 't';
        if (last.head->name == "chi_s") return 's';
        if (last.head->name == "chi_r") return 'r';
        return '?';
    };
    ChiReport rep;
    for (unsigned n = 0; n <= n_max; ++n) {
        for (unsigned m = 0; m <= n_max; ++m) {
            StackPtr args = push_all({church(n), church(m), mt, ms, mr}, pi);
            Trace pure = run(make_process(chi_pure(), args), budget, {}, false);
            Hooks h;
            h.chi = true;
            Trace hook = run(make_process(instr("chi"), args), budget, h, false);
            ChiReport::Row row;
            row.n = n;
            row.m = m;
            row.expected = n < m ? 't' : (n == m ? 's' : 'r');
            row.pure = branch(pure);
            row.hook = branch(hook);
            row.steps = pure.steps;
            rep.rows.push_back(row);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// traces

TermPtr turing_y() {
    static const TermPtr y = parse_term("(\\u.\\v.v ((u u) v)) (\\u.\\v.v ((u u) v))");
    return y;
}

TermPtr fork_term(const TermPtr& r) {
    TermPtr k = var("k"), u = var("u"), v = var("v");
    TermPtr body = app(app(r, app(k, u)), app(k, v));
    return lam(std::vector<std::string>{"u", "v"}, app(callcc(), lam("k", body)));
}

namespace {

struct RandomTerms {
    std::vector<TermPtr> pool;
    std::mt19937_64 rng;

    explicit RandomTerms(std::uint64_t seed) : rng(seed) {
        Enumerator en({instr("d"), callcc()}, {"w"}, true);
        pool = en.closed_upto(5);
    }
    TermPtr term() { return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]; }
    StackPtr stack() {
        std::size_t depth = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
        std::vector<TermPtr> items;
        for (std::size_t i = 0; i < depth; ++i) items.push_back(term());
        return push_all(items, bottom(rng() % 2 ? "p0" : "p1"));
    }
};

}  // namespace

TraceReport y_trace_check(unsigned trials, std::uint64_t seed, std::size_t budget) {
    RandomTerms gen(seed);
    TraceReport rep;
    TermPtr y = turing_y();
    for (unsigned i = 0; i < trials; ++i) {
        TermPtr t = marker("yt" + std::to_string(i % 8));
        TermPtr s = gen.term();
        StackPtr pi = gen.stack();
        Process from = make_process(y, push_all({t, s}, pi));
        Process to = make_process(t, push_all({app(y, t), s}, pi));
        ++rep.trials;
        if (!passes_through(from, to, budget)) rep.failures.push_back(print(from));
    }
    return rep;
}

TraceReport fork_trace_check(unsigned trials, std::uint64_t seed, std::size_t budget) {
    RandomTerms gen(seed);
    TraceReport rep;
    for (unsigned i = 0; i < trials; ++i) {
        TermPtr r = marker("fr" + std::to_string(i % 8));
        TermPtr t = gen.term(), s = gen.term();
        StackPtr pi = gen.stack();
        TermPtr kp = cont(pi);
        Process from = make_process(fork_term(r), push_all({t, s}, pi));
        Process to = make_process(r, push_all({app(kp, t), app(kp, s)}, pi));
        ++rep.trials;
        if (!passes_through(from, to, budget)) rep.failures.push_back(print(from));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Hilbert proofs

namespace {

ProofPtr make(HilbertProof p) { return std::make_shared<const HilbertProof>(std::move(p)); }

ProofPtr axiom(std::string schema, std::vector<FormulaPtr> fs) {
    HilbertProof p;
    p.schema = std::move(schema);
    p.formulas = std::move(fs);
    return make(std::move(p));
}

bool has_free(const FormulaPtr& f, const std::string& v) {
    auto fv = free_name_vars(f);
    return std::find(fv.begin(), fv.end(), v) != fv.end();
}

}  // namespace

ProofPtr ax_k(FormulaPtr phi, FormulaPtr psi) { return axiom("K", {std::move(phi), std::move(psi)}); }
ProofPtr ax_s(FormulaPtr phi, FormulaPtr psi, FormulaPtr theta) {
    return axiom("S", {std::move(phi), std::move(psi), std::move(theta)});
}
ProofPtr ax_classical(FormulaPtr phi, FormulaPtr psi) { return axiom("C", {std::move(phi), std::move(psi)}); }

ProofPtr ax_inst(std::string var, FormulaPtr phi, NameRef n, std::vector<NamePtr> universe) {
    HilbertProof p;
    p.schema = "inst";
    p.var = std::move(var);
    p.formulas = {std::move(phi)};
    p.inst = std::move(n);
    p.universe = std::move(universe);
    return make(std::move(p));
}

ProofPtr ax_dist(std::string var, FormulaPtr phi, FormulaPtr psi, std::vector<NamePtr> universe) {
    HilbertProof p;
    p.schema = "dist";
    p.var = std::move(var);
    p.formulas = {std::move(phi), std::move(psi)};
    p.universe = std::move(universe);
    return make(std::move(p));
}

ProofPtr mp(ProofPtr major, ProofPtr minor) {
    HilbertProof p;
    p.kind = HilbertProof::Kind::mp;
    p.major = std::move(major);
    p.minor = std::move(minor);
    return make(std::move(p));
}

ProofPtr gen(std::string var, ProofPtr sub, std::vector<NamePtr> universe) {
    HilbertProof p;
    p.kind = HilbertProof::Kind::gen;
    p.var = std::move(var);
    p.major = std::move(sub);
    p.universe = std::move(universe);
    return make(std::move(p));
}

ProofPtr hyp(FormulaPtr phi) {
    HilbertProof p;
    p.kind = HilbertProof::Kind::hyp;
    p.formulas = {std::move(phi)};
    return make(std::move(p));
}

ProofPtr deduce(FormulaPtr phi, ProofPtr sub) {
    HilbertProof p;
    p.kind = HilbertProof::Kind::deduce;
    p.formulas = {std::move(phi)};
    p.major = std::move(sub);
    return make(std::move(p));
}

FormulaPtr rename_var(const FormulaPtr& f, const std::string& from, const std::string& to) {
    if (from == to || !has_free(f, from)) return f;
    auto ref = [&](const NameRef& r) { return r.is_var() && r.var == from ? nvar(to) : r; };
    auto body = [&](const std::string& bound, const FormulaPtr& b) {
        if (bound == from) return b;
        if (bound == to && has_free(b, from)) throw ProofError("renaming " + from + " to " + to + " is captured");
        return rename_var(b, from, to);
    };
    switch (f->kind) {
        case FormulaKind::Top:
        case FormulaKind::Bot: return f;
        case FormulaKind::NotEps: return f_noteps(ref(f->a), ref(f->b));
        case FormulaKind::NotIn: return f_notin(ref(f->a), ref(f->b));
        case FormulaKind::Sub: return f_sub(ref(f->a), ref(f->b));
        case FormulaKind::NeqNE: return f_neq(ref(f->a), ref(f->b));
        case FormulaKind::Impl: return f_impl(rename_var(f->left, from, to), rename_var(f->right, from, to));
        case FormulaKind::ForallU: return f_forall(f->var, f->universe, body(f->var, f->left));
        case FormulaKind::ForallR: return f_forallr(f->var, ref(f->a), body(f->var, f->left));
        case FormulaKind::ForallHat: return f_forallhat(f->var, f->alpha, body(f->var, f->left));
        case FormulaKind::Hook: return f_hook(ref(f->a), ref(f->b), rename_var(f->left, from, to));
        case FormulaKind::AppliedLift: return f_applied_lift(f->lift, ref(f->a), f->var, body(f->var, f->left));
    }
    return f;
}

namespace {

using Hyps = std::vector<FormulaPtr>;

FormulaPtr concl(const ProofPtr& p, const Hyps& hyps, bool strict) {
    using K = HilbertProof::Kind;
    const auto& fs = p->formulas;
    switch (p->kind) {
        case K::axiom:
            if (p->schema == "K") return f_impl(fs[0], f_impl(fs[1], fs[0]));
            if (p->schema == "S")
                return f_impl(f_impl(fs[0], f_impl(fs[1], fs[2])),
                              f_impl(f_impl(fs[0], fs[1]), f_impl(fs[0], fs[2])));
            if (p->schema == "C") {
                FormulaPtr np = f_impl(fs[0], f_bot()), nq = f_impl(fs[1], f_bot());
                return f_impl(f_impl(np, nq), f_impl(f_impl(np, fs[1]), fs[0]));
            }
            if (p->schema == "inst") {
                FormulaPtr inst;
                if (p->inst.is_var()) {
                    inst = rename_var(fs[0], p->var, p->inst.var);
                } else {
                    bool found = std::any_of(p->universe.begin(), p->universe.end(),
                                             [&](const NamePtr& n) { return same_name(n, p->inst.name); });
                    if (!found) throw ProofError("inst: " + print(p->inst.name) + " is not in the universe");
                    inst = subst(fs[0], p->var, p->inst.name);
                }
                return f_impl(f_forall(p->var, p->universe, fs[0]), inst);
            }
            if (p->schema == "dist") {
                if (has_free(fs[0], p->var)) throw ProofError("dist: " + p->var + " is free in " + print(fs[0]));
                return f_impl(f_forall(p->var, p->universe, f_impl(fs[0], fs[1])),
                              f_impl(fs[0], f_forall(p->var, p->universe, fs[1])));
            }
            throw ProofError("unknown axiom schema " + p->schema);
        case K::mp: {
            FormulaPtr a = concl(p->major, hyps, strict), b = concl(p->minor, hyps, strict);
            if (a->kind != FormulaKind::Impl || a->left->key != b->key)
                throw ProofError("mp: " + print(a) + " does not apply to " + print(b));
            return a->right;
        }
        case K::gen:
            if (strict)
                for (const auto& h : hyps)
                    if (has_free(h, p->var)) throw ProofError("gen: " + p->var + " is free in hypothesis " + print(h));
            return f_forall(p->var, p->universe, concl(p->major, hyps, strict));
        case K::hyp:
            if (strict && std::none_of(hyps.begin(), hyps.end(),
                                       [&](const FormulaPtr& h) { return h->key == fs[0]->key; }))
                throw ProofError("hyp " + print(fs[0]) + " outside its deduce");
            return fs[0];
        case K::deduce: {
            Hyps inner = hyps;
            inner.push_back(fs[0]);
            return f_impl(fs[0], concl(p->major, inner, strict));
        }
    }
    throw ProofError("bad proof node");
}

bool uses_hyp(const ProofPtr& p, const FormulaPtr& phi) {
    if (!p) return false;
    if (p->kind == HilbertProof::Kind::hyp) return p->formulas[0]->key == phi->key;
    return uses_hyp(p->major, phi) || uses_hyp(p->minor, phi);
}

// p contains no deduce.
ProofPtr abstract(const FormulaPtr& phi, const ProofPtr& p) {
    using K = HilbertProof::Kind;
    if (p->kind == K::hyp && p->formulas[0]->key == phi->key) {
        FormulaPtr pp = f_impl(phi, phi);
        return mp(mp(ax_s(phi, pp, phi), ax_k(phi, pp)), ax_k(phi, phi));
    }
    if (!uses_hyp(p, phi)) return mp(ax_k(concl(p, {}, false), phi), p);
    if (p->kind == K::mp) {
        FormulaPtr a = concl(p->major, {}, false);
        return mp(mp(ax_s(phi, a->left, a->right), abstract(phi, p->major)), abstract(phi, p->minor));
    }
    if (p->kind == K::gen)
        return mp(ax_dist(p->var, phi, concl(p->major, {}, false), p->universe),
                  gen(p->var, abstract(phi, p->major), p->universe));
    throw ProofError("cannot discharge " + print(phi));
}

ProofPtr expand(const ProofPtr& p) {
    using K = HilbertProof::Kind;
    switch (p->kind) {
        case K::axiom:
        case K::hyp: return p;
        case K::mp: return mp(expand(p->major), expand(p->minor));
        case K::gen: return gen(p->var, expand(p->major), p->universe);
        case K::deduce: return abstract(p->formulas[0], expand(p->major));
    }
    return p;
}

}  // namespace

FormulaPtr conclusion(const ProofPtr& p) { return concl(p, {}, true); }

ProofPtr expand_deductions(const ProofPtr& p) {
    conclusion(p);
    return expand(p);
}

TermPtr extract_realizer(const ProofPtr& p) {
    static const Env env = Env::standard();
    using K = HilbertProof::Kind;
    std::function<TermPtr(const ProofPtr&)> go = [&](const ProofPtr& q) -> TermPtr {
        switch (q->kind) {
            case K::axiom:
                if (q->schema == "K") return env.terms.at("K");
                if (q->schema == "S") return env.terms.at("S");
                if (q->schema == "C") return env.terms.at("CL");
                if (q->schema == "inst") return env.terms.at("I");
                return parse_term("\\u.\\v.u v");
            case K::mp: return app(go(q->major), go(q->minor));
            case K::gen: return go(q->major);
            default: throw ProofError("undischarged hypothesis");
        }
    };
    return go(expand_deductions(p));
}

// ---------------------------------------------------------------------------
// proof files

namespace {

struct Sexp {
    bool list = false;
    bool quoted = false;
    std::string atom;
    std::vector<Sexp> items;
};

struct SexpReader {
    const std::string& text;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip();
        return pos >= text.size();
    }
    Sexp read() {
        skip();
        if (pos >= text.size()) throw ProofError("unexpected end of proof");
        Sexp s;
        if (text[pos] == '(') {
            ++pos;
            s.list = true;
            while (true) {
                skip();
                if (pos >= text.size()) throw ProofError("unclosed '('");
                if (text[pos] == ')') {
                    ++pos;
                    return s;
                }
                s.items.push_back(read());
            }
        }
        if (text[pos] == ')') throw ProofError("unexpected ')'");
        if (text[pos] == '"') {
            std::size_t end = text.find('"', pos + 1);
            if (end == std::string::npos) throw ProofError("unclosed string");
            s.quoted = true;
            s.atom = text.substr(pos + 1, end - pos - 1);
            pos = end + 1;
            return s;
        }
        std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '(' &&
               text[pos] != ')')
            ++pos;
        s.atom = text.substr(start, pos - start);
        return s;
    }
};

struct ProofReader {
    const Env& env;
    std::map<std::string, ProofPtr> defs;

    const std::string& atom(const Sexp& s) {
        if (s.list) throw ProofError("expected an atom");
        return s.atom;
    }
    FormulaPtr formula(const Sexp& s) {
        try {
            return parse_formula(atom(s), env);
        } catch (const SyntaxError& e) {
            throw ProofError("formula '" + s.atom + "': " + e.what());
        }
    }
    NameRef name_ref(const Sexp& s) {
        Cursor c(atom(s));
        NameRef r = parse_name_ref_at(c, env);
        if (!c.at_end()) throw ProofError("bad name '" + s.atom + "'");
        return r;
    }
    void arity(const Sexp& s, std::size_t n) {
        if (s.items.size() != n) throw ProofError("wrong number of arguments to " + s.items[0].atom);
    }
    ProofPtr proof(const Sexp& s) {
        if (!s.list) {
            auto it = defs.find(s.atom);
            if (it == defs.end()) throw ProofError("unknown proof '" + s.atom + "'");
            return it->second;
        }
        if (s.items.empty()) throw ProofError("empty form");
        const std::string& head = atom(s.items[0]);
        if (head == "ax") {
            if (s.items.size() < 2) throw ProofError("ax needs a schema");
            const std::string& schema = atom(s.items[1]);
            if (schema == "K") {
                arity(s, 4);
                return ax_k(formula(s.items[2]), formula(s.items[3]));
            }
            if (schema == "S") {
                arity(s, 5);
                return ax_s(formula(s.items[2]), formula(s.items[3]), formula(s.items[4]));
            }
            if (schema == "C") {
                arity(s, 4);
                return ax_classical(formula(s.items[2]), formula(s.items[3]));
            }
            if (schema == "inst") {
                arity(s, 5);
                return ax_inst(atom(s.items[2]), formula(s.items[3]), name_ref(s.items[4]), env.universe);
            }
            if (schema == "dist") {
                arity(s, 5);
                return ax_dist(atom(s.items[2]), formula(s.items[3]), formula(s.items[4]), env.universe);
            }
            throw ProofError("unknown axiom schema " + schema);
        }
        if (head == "mp") {
            arity(s, 3);
            return mp(proof(s.items[1]), proof(s.items[2]));
        }
        if (head == "gen") {
            arity(s, 3);
            return gen(atom(s.items[1]), proof(s.items[2]), env.universe);
        }
        if (head == "hyp") {
            arity(s, 2);
            return hyp(formula(s.items[1]));
        }
        if (head == "deduce") {
            arity(s, 3);
            return deduce(formula(s.items[1]), proof(s.items[2]));
        }
        throw ProofError("unknown rule " + head);
    }
};

}  // namespace

ProofFile parse_proof_file(const std::string& text, Env env) {
    std::string body;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        if (auto semi = line.find(';'); semi != std::string::npos) line.erase(semi);
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] != '(') {
            try {
                if (apply_declaration(line, env)) continue;
            } catch (const SyntaxError& e) {
                throw ProofError("declaration '" + line + "': " + e.what());
            }
        }
        body += line + "\n";
    }
    ProofFile out{env, nullptr};
    ProofReader reader{out.env, {}};
    SexpReader sr{body};
    while (!sr.done()) {
        Sexp s = sr.read();
        if (s.list && !s.items.empty() && !s.items[0].list && s.items[0].atom == "define") {
            if (s.items.size() != 3) throw ProofError("define needs a name and a proof");
            reader.defs[reader.atom(s.items[1])] = reader.proof(s.items[2]);
            continue;
        }
        if (out.proof) throw ProofError("more than one proof in file");
        out.proof = reader.proof(s);
    }
    if (!out.proof) throw ProofError("no proof in file");
    return out;
}

}  // namespace krivine

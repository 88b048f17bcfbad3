#include "krivine/four_valued.hpp"

#include <set>

namespace krivine {

std::string to_string(ComponentTag t) {
    switch (t) {
        case ComponentTag::only_p0: return "only-p0";
        case ComponentTag::only_p1: return "only-p1";
        case ComponentTag::neither: return "neither";
        case ComponentTag::both: return "both";
    }
    return "neither";
}

namespace {

ComponentTag tag_of(const std::set<std::string>& bs) {
    bool p0 = bs.count("p0") > 0;
    bool p1 = bs.count("p1") > 0;
    if (p0 && p1) return ComponentTag::both;
    if (p0) return ComponentTag::only_p0;
    if (p1) return ComponentTag::only_p1;
    return ComponentTag::neither;
}

}  // namespace

ComponentTag component_tag(const TermPtr& t) {
    std::set<std::string> bs;
    collect_bottoms(t, bs);
    return tag_of(bs);
}

ComponentTag component_tag(const StackPtr& s) {
    std::set<std::string> bs;
    collect_bottoms(s, bs);
    return tag_of(bs);
}

ComponentTag component_tag(const Process& p) {
    std::set<std::string> bs;
    collect_bottoms(p.head, bs);
    collect_bottoms(p.stack, bs);
    return tag_of(bs);
}

Evaluation evaluate(const Process& p, std::size_t budget, const Hooks& hooks) {
    Evaluation ev;
    ev.last = p;
    Process mark = p;
    std::size_t power = 1, lap = 0;
    while (true) {
        auto next = step(ev.last, hooks);
        if (!next) return ev;
        if (ev.steps == budget) {
            ev.end = Evaluation::End::exhausted;
            return ev;
        }
        ev.last = std::move(next->first);
        ++ev.steps;
        if (alpha_eq(ev.last, mark)) {
            ev.end = Evaluation::End::cycle;
            return ev;
        }
        if (++lap == power) {
            mark = ev.last;
            power *= 2;
            lap = 0;
        }
    }
}

std::vector<TermPtr> DAlgebra::universal_realizers() const {
    return {app(cont(push(church(0), bottom("p0"))), instr("d")),
            app(cont(push(church(1), bottom("p1"))), instr("d"))};
}

std::size_t DAlgebra::memo_size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return memo_.size();
}

namespace {

constexpr int kMaxNesting = 64;

}  // namespace

PoleVerdict DAlgebra::pole_contains(const Process& p) const {
    check_vocabulary(p);
    switch (component_tag(p)) {
        case ComponentTag::both: return PoleVerdict::in;
        case ComponentTag::only_p0: return pole_ij(p, 0, 0);
        case ComponentTag::only_p1: return pole_ij(p, 1, 1);
        case ComponentTag::neither: {
            PoleVerdict a = pole_ij(p, 0, 0), b = pole_ij(p, 1, 1);
            if (a == PoleVerdict::out || b == PoleVerdict::out) return PoleVerdict::out;
            if (a == PoleVerdict::unknown || b == PoleVerdict::unknown) return PoleVerdict::unknown;
            return PoleVerdict::in;
        }
    }
    return PoleVerdict::unknown;
}

namespace {

PoleVerdict decide(const DAlgebra& alg, const Process& p, int i, int j, int nesting,
                   std::mutex& mu, std::map<std::string, PoleVerdict>& memo) {
    std::string key = canonical(p) + "|" + std::to_string(i) + std::to_string(j);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    PoleVerdict v = PoleVerdict::out;
    Evaluation ev = evaluate(p, alg.budget());
    if (ev.end == Evaluation::End::exhausted) {
        v = PoleVerdict::unknown;
    } else if (ev.end == Evaluation::End::normal_form) {
        const Process& q = ev.last;
        if (q.head->kind == TermKind::Instr && q.head->name == "d" && !q.stack->is_bottom()) {
            auto items = stack_items(q.stack);
            auto n = church_index(items[0]);
            if (n && *n == static_cast<unsigned>(j)) {
                v = PoleVerdict::in;
            } else if (n && *n == 2 && items.size() >= 4) {
                if (nesting >= kMaxNesting) {
                    v = PoleVerdict::unknown;
                } else {
                    StackPtr rest = q.stack->tail->tail->tail->tail;
                    int in = 0, unknown = 0;
                    for (int k = 1; k <= 3; ++k) {
                        PoleVerdict sub = decide(alg, Process{items[k], rest}, i, j, nesting + 1, mu, memo);
                        in += sub == PoleVerdict::in;
                        unknown += sub == PoleVerdict::unknown;
                    }
                    if (in >= 2)
                        v = PoleVerdict::in;
                    else if (in + unknown >= 2)
                        v = PoleVerdict::unknown;
                }
            }
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(key, v);
    return v;
}

}  // namespace

PoleVerdict DAlgebra::pole_ij(const Process& p, int i, int j) const {
    if ((i != 0 && i != 1) || (j != 0 && j != 1)) throw std::invalid_argument("pole_ij: indices must be 0 or 1");
    check_vocabulary(p);
    ComponentTag tag = component_tag(p);
    if (tag == ComponentTag::both || tag == (i == 0 ? ComponentTag::only_p1 : ComponentTag::only_p0))
        throw VocabularyError("process is outside component " + std::to_string(i) + ": " + print(p));
    return decide(*this, p, i, j, 0, mu_, memo_);
}

namespace {

TermPtr swap_term(const TermPtr& t, const std::string& from, const std::string& to);

StackPtr swap_stack(const StackPtr& s, const std::string& from, const std::string& to) {
    if (s->is_bottom()) return s->bottom == from ? bottom(to) : s;
    return push_unchecked(swap_term(s->head, from, to), swap_stack(s->tail, from, to));
}

TermPtr swap_term(const TermPtr& t, const std::string& from, const std::string& to) {
    switch (t->kind) {
        case TermKind::Lam: return lam(t->name, swap_term(t->left, from, to));
        case TermKind::App: return app(swap_term(t->left, from, to), swap_term(t->right, from, to));
        case TermKind::Cont: return cont(swap_stack(t->saved, from, to));
        default: return t;
    }
}

void require_component(ComponentTag tag, ComponentTag allowed, const std::string& what) {
    if (tag != allowed && tag != ComponentTag::neither)
        throw VocabularyError(what + ": argument has tag " + to_string(tag));
}

}  // namespace

TermPtr xi(const TermPtr& t) {
    require_component(component_tag(t), ComponentTag::only_p0, "xi");
    return swap_term(t, "p0", "p1");
}

StackPtr xi(const StackPtr& s) {
    require_component(component_tag(s), ComponentTag::only_p0, "xi");
    return swap_stack(s, "p0", "p1");
}

Process xi(const Process& p) {
    require_component(component_tag(p), ComponentTag::only_p0, "xi");
    return Process{swap_term(p.head, "p0", "p1"), swap_stack(p.stack, "p0", "p1")};
}

Process xi_inverse(const Process& p) {
    require_component(component_tag(p), ComponentTag::only_p1, "xi_inverse");
    return Process{swap_term(p.head, "p1", "p0"), swap_stack(p.stack, "p1", "p0")};
}

NamePtr gamma0() {
    return make_name({{reish_nat(0), ss_component(0)}, {reish_nat(1), ss_component(1)}}, "gamma0");
}

NamePtr gamma1() {
    return make_name({{reish_nat(1), ss_component(0)}, {reish_nat(0), ss_component(1)}}, "gamma1");
}

std::size_t GammaReport::refuted() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.verdict.refuted();
    return n;
}

GammaReport verify_gamma_claims(const DAlgebra& alg, const EngineOptions& opt) {
    GammaReport rep;
    auto d_of = [](unsigned n) { return app(instr("d"), church(n)); };
    auto add = [&](std::string claim, TermPtr t, FormulaPtr f) {
        Verdict v = realizes(alg, t, f, opt);
        rep.rows.push_back({std::move(claim), std::move(t), std::move(f), v});
    };
    NamePtr z = reish_nat(0), o = reish_nat(1), two = reish_nat(2);
    add("d(0) ||- ^0 eps! gamma0", d_of(0), f_noteps(nref(z), nref(gamma0())));
    add("d(1) ||- ^1 eps! gamma0", d_of(1), f_noteps(nref(o), nref(gamma0())));
    add("d(1) ||- ^0 eps! gamma1", d_of(1), f_noteps(nref(z), nref(gamma1())));
    add("d(0) ||- ^1 eps! gamma1", d_of(0), f_noteps(nref(o), nref(gamma1())));
    for (const auto& g : {gamma0(), gamma1()})
        add("I ||- not forallr x ^2 . x eps! " + print(g), identity(),
            f_not(f_forallr("x", nref(two), f_noteps(nvar("x"), nref(g)))));
    for (unsigned m = 0; m < 2; ++m)
        for (unsigned n = 0; n < 2; ++n) {
            NamePtr rm = reish_nat(m), rn = reish_nat(n), meet = reish_nat(m & n);
            FormulaPtr f = f_impl(f_neq(nref(rm), nref(z)),
                                  f_impl(f_neq(nref(rn), nref(o)),
                                         f_impl(f_neq(nref(rm), nref(rn)), f_neq(nref(meet), nref(rm)))));
            add("d(2) claim m=" + std::to_string(m) + " n=" + std::to_string(n), d_of(2), f);
        }
    return rep;
}

}  // namespace krivine

#include "krivine/realize.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "krivine/enumerate.hpp"
#include "krivine/forcing.hpp"

namespace krivine {

std::string to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::unknown: return "unknown";
    }
    return "unknown";
}

std::string to_string(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::certified: return "certified";
        case Verdict::Kind::refuted: return "refuted";
        case Verdict::Kind::passed_bounded: return "passed-bounded";
        case Verdict::Kind::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

Tri tri_and(Tri a, Tri b) {
    if (a == Tri::no || b == Tri::no) return Tri::no;
    if (a == Tri::unknown || b == Tri::unknown) return Tri::unknown;
    return Tri::yes;
}

// Accumulating disjunction.
void tri_or(Tri& acc, Tri b) {
    if (acc == Tri::yes || b == Tri::yes)
        acc = Tri::yes;
    else if (b == Tri::unknown)
        acc = Tri::unknown;
}

TermPtr theta_theta() {
    TermPtr uu = app(var("u"), var("u"));
    TermPtr theta = lam(std::vector<std::string>{"u", "v"}, app(app(var("v"), uu), uu));
    return app(theta, theta);
}

// t ||- phi as a premise of a falsity clause.
Tri premise(const Algebra& alg, const TermPtr& t, const FormulaPtr& f) {
    if (const ForcingAlgebra* fa = alg.as_forcing()) return fa->realizes(t, f) ? Tri::yes : Tri::no;
    for (const auto& r : realizers_of(alg, f))
        if (alpha_eq(r, t)) return Tri::yes;
    return Tri::unknown;
}

void dedupe(std::vector<StackPtr>& v, std::size_t cap) {
    std::set<std::string> seen;
    std::vector<StackPtr> out;
    for (auto& s : v) {
        if (out.size() == cap) break;
        if (seen.insert(canonical(s)).second) out.push_back(std::move(s));
    }
    v = std::move(out);
}

std::vector<TermPtr> sample_pool() { return {identity(), church(0), church(1)}; }

std::vector<StackPtr> base_stacks(const std::vector<std::string>& bottoms, const EngineOptions& opt) {
    auto v = stacks_over(sample_pool(), bottoms, opt.depth);
    dedupe(v, opt.sample_cap);
    return v;
}

}  // namespace

bool surely_empty(const StackSetPtr& s) {
    switch (s->kind) {
        case StackSetKind::Explicit: return s->stacks.empty();
        case StackSetKind::Prefix:
        case StackSetKind::Guarded: return surely_empty(s->tail);
        case StackSetKind::Union:
            return std::all_of(s->parts.begin(), s->parts.end(), [](const auto& p) { return surely_empty(p); });
        default: return false;
    }
}

bool surely_empty(const FormulaPtr& f) {
    auto all_instances = [&](const std::vector<NamePtr>& names) {
        return std::all_of(names.begin(), names.end(),
                           [&](const NamePtr& n) { return surely_empty(subst(f->left, f->var, n)); });
    };
    switch (f->kind) {
        case FormulaKind::Top: return true;
        case FormulaKind::Bot: return false;
        case FormulaKind::NotEps:
            if (f->a.is_var() || f->b.is_var()) return false;
            for (const auto& [c, ss] : f->b.name->entries)
                if (same_name(c, f->a.name) && !surely_empty(ss)) return false;
            return true;
        case FormulaKind::NotIn:
            if (f->b.is_var()) return false;
            return std::all_of(f->b.name->entries.begin(), f->b.name->entries.end(),
                               [](const auto& e) { return surely_empty(e.second); });
        case FormulaKind::Sub:
            if (f->a.is_var()) return false;
            return std::all_of(f->a.name->entries.begin(), f->a.name->entries.end(),
                               [](const auto& e) { return surely_empty(e.second); });
        case FormulaKind::Impl: return surely_empty(f->right);
        case FormulaKind::ForallU: return all_instances(f->universe);
        case FormulaKind::ForallR: return !f->a.is_var() && all_instances(dom(f->a.name));
        case FormulaKind::ForallHat: {
            std::vector<NamePtr> hats;
            for (unsigned b = 0; b < f->alpha; ++b) hats.push_back(hat(b));
            return all_instances(hats);
        }
        case FormulaKind::NeqNE: return !f->a.is_var() && !f->b.is_var() && !same_name(f->a.name, f->b.name);
        case FormulaKind::Hook:
            if (f->a.is_var() || f->b.is_var()) return surely_empty(f->left);
            return !same_name(f->a.name, f->b.name) || surely_empty(f->left);
        case FormulaKind::AppliedLift: {
            if (f->a.is_var()) return false;
            auto d = lift_apply(f->lift, f->a.name);
            return !d || surely_empty(subst(f->left, f->var, reish(*d)));
        }
    }
    return false;
}

Tri stackset_contains(const Algebra& alg, const StackSetPtr& s, const StackPtr& pi) {
    switch (s->kind) {
        case StackSetKind::All: return Tri::yes;
        case StackSetKind::Prefix: {
            StackPtr cur = pi;
            for (const auto& t : s->prefix) {
                if (cur->is_bottom() || !alpha_eq(cur->head, t)) return Tri::no;
                cur = cur->tail;
            }
            return stackset_contains(alg, s->tail, cur);
        }
        case StackSetKind::Explicit:
            for (const auto& st : s->stacks)
                if (alpha_eq(st, pi)) return Tri::yes;
            return Tri::no;
        case StackSetKind::Guarded:
            if (pi->is_bottom()) return Tri::no;
            return tri_and(stackset_contains(alg, s->tail, pi->tail), premise(alg, pi->head, s->guard));
        case StackSetKind::Union: {
            Tri acc = Tri::no;
            for (const auto& p : s->parts) tri_or(acc, stackset_contains(alg, p, pi));
            return acc;
        }
        case StackSetKind::Component: {
            std::set<std::string> bs;
            collect_bottoms(pi, bs);
            return bs == std::set<std::string>{"p" + std::to_string(s->component)} ? Tri::yes : Tri::no;
        }
    }
    return Tri::no;
}

Tri falsity_contains(const Algebra& alg, const FormulaPtr& f, const StackPtr& pi) {
    if (!is_closed(f)) throw std::invalid_argument("falsity value of an open formula: " + print(f));
    const NamePtr& a = f->a.name;
    const NamePtr& b = f->b.name;
    auto instances = [&](const std::vector<NamePtr>& names) {
        Tri acc = Tri::no;
        for (const auto& n : names) {
            tri_or(acc, falsity_contains(alg, subst(f->left, f->var, n), pi));
            if (acc == Tri::yes) break;
        }
        return acc;
    };
    switch (f->kind) {
        case FormulaKind::Top: return Tri::no;
        case FormulaKind::Bot: return Tri::yes;
        case FormulaKind::NotEps: {
            Tri acc = Tri::no;
            for (const auto& [c, ss] : b->entries)
                if (same_name(c, a)) tri_or(acc, stackset_contains(alg, ss, pi));
            return acc;
        }
        case FormulaKind::NotIn: {
            if (pi->is_bottom() || pi->tail->is_bottom()) return Tri::no;
            Tri acc = Tri::no;
            for (const auto& [c, ss] : b->entries) {
                Tri rest = stackset_contains(alg, ss, pi->tail->tail);
                if (rest == Tri::no) continue;
                Tri v = tri_and(rest, premise(alg, pi->head, f_sub(nref(a), nref(c))));
                tri_or(acc, tri_and(v, premise(alg, pi->tail->head, f_sub(nref(c), nref(a)))));
            }
            return acc;
        }
        case FormulaKind::Sub: {
            if (pi->is_bottom()) return Tri::no;
            Tri acc = Tri::no;
            for (const auto& [c, ss] : a->entries) {
                Tri rest = stackset_contains(alg, ss, pi->tail);
                if (rest == Tri::no) continue;
                tri_or(acc, tri_and(rest, premise(alg, pi->head, f_notin(nref(c), nref(b)))));
            }
            return acc;
        }
        case FormulaKind::Impl: {
            if (pi->is_bottom()) return Tri::no;
            Tri rest = falsity_contains(alg, f->right, pi->tail);
            if (rest == Tri::no) return Tri::no;
            return tri_and(rest, premise(alg, pi->head, f->left));
        }
        case FormulaKind::ForallU: return instances(f->universe);
        case FormulaKind::ForallR: return instances(dom(a));
        case FormulaKind::ForallHat: {
            if (pi->is_bottom()) return Tri::no;
            auto beta = church_index(pi->head);
            if (!beta || *beta >= f->alpha) return Tri::no;
            return falsity_contains(alg, subst(f->left, f->var, hat(*beta)), pi->tail);
        }
        case FormulaKind::NeqNE: return same_name(a, b) ? Tri::yes : Tri::no;
        case FormulaKind::Hook: return same_name(a, b) ? falsity_contains(alg, f->left, pi) : Tri::no;
        case FormulaKind::AppliedLift: {
            auto d = lift_apply(f->lift, a);
            if (!d) return Tri::no;
            return falsity_contains(alg, subst(f->left, f->var, reish(*d)), pi);
        }
    }
    return Tri::no;
}

std::vector<TermPtr> realizers_of(const Algebra& alg, const FormulaPtr& f, const EngineOptions& opt) {
    std::vector<TermPtr> out = alg.universal_realizers();
    if (surely_empty(f)) out.push_back(identity());
    if (f->kind == FormulaKind::Sub && !f->a.is_var() && !f->b.is_var() && same_name(f->a.name, f->b.name))
        out.push_back(theta_theta());
    if (f->kind == FormulaKind::Impl) {
        EngineOptions inner = opt;
        inner.sample_cap = std::min<std::size_t>(opt.sample_cap, 8);
        for (const auto& pi : falsity_sample(alg, f->left, inner)) out.push_back(cont(pi));
    }
    if (const ForcingAlgebra* fa = alg.as_forcing())
        out.push_back(fa->tau_term(fa->ctx().neg(fa->falsity_sup(f))));
    std::set<std::string> seen;
    std::vector<TermPtr> uniq;
    for (auto& t : out)
        if (seen.insert(canonical(t)).second) uniq.push_back(std::move(t));
    return uniq;
}

std::vector<StackPtr> stackset_sample(const Algebra& alg, const StackSetPtr& s, const EngineOptions& opt) {
    std::vector<StackPtr> out;
    switch (s->kind) {
        case StackSetKind::All: return base_stacks(alg.bottoms(), opt);
        case StackSetKind::Prefix:
            for (const auto& st : stackset_sample(alg, s->tail, opt)) out.push_back(push_all(s->prefix, st));
            break;
        case StackSetKind::Explicit: out = s->stacks; break;
        case StackSetKind::Guarded: {
            auto tails = stackset_sample(alg, s->tail, opt);
            for (const auto& r : realizers_of(alg, s->guard, opt))
                for (const auto& st : tails) out.push_back(push(r, st));
            break;
        }
        case StackSetKind::Union:
            for (const auto& p : s->parts) {
                auto v = stackset_sample(alg, p, opt);
                out.insert(out.end(), v.begin(), v.end());
            }
            break;
        case StackSetKind::Component: return base_stacks({"p" + std::to_string(s->component)}, opt);
    }
    dedupe(out, opt.sample_cap);
    return out;
}

std::vector<StackPtr> falsity_sample(const Algebra& alg, const FormulaPtr& f, const EngineOptions& opt) {
    if (!is_closed(f)) throw std::invalid_argument("falsity value of an open formula: " + print(f));
    std::vector<StackPtr> out;
    const NamePtr& a = f->a.name;
    const NamePtr& b = f->b.name;
    auto add = [&](std::vector<StackPtr> v) { out.insert(out.end(), v.begin(), v.end()); };
    auto instances = [&](const std::vector<NamePtr>& names) {
        for (const auto& n : names) add(falsity_sample(alg, subst(f->left, f->var, n), opt));
    };
    switch (f->kind) {
        case FormulaKind::Top: break;
        case FormulaKind::Bot: add(base_stacks(alg.bottoms(), opt)); break;
        case FormulaKind::NotEps:
            for (const auto& [c, ss] : b->entries)
                if (same_name(c, a)) add(stackset_sample(alg, ss, opt));
            break;
        case FormulaKind::NotIn:
            for (const auto& [c, ss] : b->entries) {
                if (surely_empty(ss)) continue;
                auto tails = stackset_sample(alg, ss, opt);
                auto r1 = realizers_of(alg, f_sub(nref(a), nref(c)), opt);
                auto r2 = realizers_of(alg, f_sub(nref(c), nref(a)), opt);
                for (const auto& t : r1)
                    for (const auto& u : r2)
                        for (const auto& st : tails) out.push_back(push(t, push(u, st)));
            }
            break;
        case FormulaKind::Sub:
            for (const auto& [c, ss] : a->entries) {
                if (surely_empty(ss)) continue;
                auto tails = stackset_sample(alg, ss, opt);
                for (const auto& t : realizers_of(alg, f_notin(nref(c), nref(b)), opt))
                    for (const auto& st : tails) out.push_back(push(t, st));
            }
            break;
        case FormulaKind::Impl: {
            auto tails = falsity_sample(alg, f->right, opt);
            if (tails.empty()) break;
            for (const auto& r : realizers_of(alg, f->left, opt))
                for (const auto& st : tails) out.push_back(push(r, st));
            break;
        }
        case FormulaKind::ForallU: instances(f->universe); break;
        case FormulaKind::ForallR: instances(dom(a)); break;
        case FormulaKind::ForallHat:
            for (unsigned beta = 0; beta < f->alpha; ++beta)
                for (const auto& st : falsity_sample(alg, subst(f->left, f->var, hat(beta)), opt))
                    out.push_back(push(church(beta), st));
            break;
        case FormulaKind::NeqNE:
            if (same_name(a, b)) add(base_stacks(alg.bottoms(), opt));
            break;
        case FormulaKind::Hook:
            if (same_name(a, b)) add(falsity_sample(alg, f->left, opt));
            break;
        case FormulaKind::AppliedLift:
            if (auto d = lift_apply(f->lift, a)) add(falsity_sample(alg, subst(f->left, f->var, reish(*d)), opt));
            break;
    }
    dedupe(out, opt.sample_cap);
    return out;
}

std::size_t universe_size(const FormulaPtr& f) {
    std::set<std::size_t> ids;
    std::vector<FormulaPtr> todo{f};
    while (!todo.empty()) {
        FormulaPtr g = todo.back();
        todo.pop_back();
        if (g->kind == FormulaKind::ForallU)
            for (const auto& n : g->universe) ids.insert(n->id);
        if (g->left) todo.push_back(g->left);
        if (g->right) todo.push_back(g->right);
    }
    return ids.size();
}

Verdict realizes(const Algebra& alg, const TermPtr& t, const FormulaPtr& f, const EngineOptions& opt) {
    if (!is_closed(t)) throw OpenTermError("realizes: open term " + print(t));
    if (!is_closed(f)) throw std::invalid_argument("realizes: open formula " + print(f));
    Verdict v;
    v.universe = universe_size(f);
    if (const ForcingAlgebra* fa = alg.as_forcing()) {
        BElem bad = tau(fa->ctx(), t) & fa->falsity_sup(f);
        if (bad == 0) {
            v.kind = Verdict::Kind::certified;
            return v;
        }
        unsigned atom = 0;
        while (!(bad >> atom & 1)) ++atom;
        v.kind = Verdict::Kind::refuted;
        v.witness = fa->falsity_witness(f, atom);
        v.checked = 1;
        return v;
    }
    bool unknown = false;
    for (const auto& pi : falsity_sample(alg, f, opt)) {
        ++v.checked;
        PoleVerdict p = alg.pole_contains(Process{t, pi});
        if (p == PoleVerdict::out) {
            v.kind = Verdict::Kind::refuted;
            v.witness = pi;
            return v;
        }
        if (p == PoleVerdict::unknown) unknown = true;
    }
    if (unknown)
        v.kind = Verdict::Kind::unknown;
    else
        v.kind = surely_empty(f) ? Verdict::Kind::certified : Verdict::Kind::passed_bounded;
    return v;
}

}  // namespace krivine

#include "krivine/forcing.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace krivine {

BoolCtx::BoolCtx(unsigned atoms) : atoms_(atoms) {
    if (atoms < 1 || atoms > 16) throw std::invalid_argument("atom count must be in 1..16");
    full_ = (BElem{1} << atoms) - 1;
}

std::vector<BElem> BoolCtx::elements() const {
    std::vector<BElem> out;
    for (BElem x = 0; x <= full_; ++x) out.push_back(x);
    return out;
}

std::string BoolCtx::symbol(BElem x) const {
    x &= full_;
    if (x == 0) return "0";
    if (x == full_) return "1";
    if ((x & (x - 1)) == 0) {
        unsigned i = 0;
        while (!(x >> i & 1)) ++i;
        return "p" + std::to_string(i);
    }
    return "m" + std::to_string(x);
}

std::optional<BElem> BoolCtx::parse_symbol(const std::string& s) const {
    if (s == "0") return BElem{0};
    if (s == "1") return full_;
    if (s.size() < 2 || (s[0] != 'p' && s[0] != 'm')) return std::nullopt;
    if (!std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 7)
        return std::nullopt;
    unsigned long v = std::stoul(s.substr(1));
    if (s[0] == 'p') {
        if (v >= atoms_) return std::nullopt;
        return BElem{1} << v;
    }
    if (v > full_) return std::nullopt;
    return static_cast<BElem>(v);
}

std::string BoolCtx::show(BElem x) const {
    std::string out = "{";
    bool first = true;
    for (unsigned i = 0; i < atoms_; ++i)
        if (x >> i & 1) {
            if (!first) out += ",";
            out += "a" + std::to_string(i);
            first = false;
        }
    return out + "}";
}

BElem tau(const BoolCtx& ctx, const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var:
        case TermKind::CallCC: return ctx.one();
        case TermKind::Lam: return tau(ctx, t->left);
        case TermKind::App: return tau(ctx, t->left) & tau(ctx, t->right);
        case TermKind::Cont: return tau(ctx, t->saved);
        case TermKind::Instr:
            throw VocabularyError("instruction @" + t->name + " is unsupported in the forcing algebra");
    }
    return ctx.one();
}

BElem tau(const BoolCtx& ctx, const StackPtr& s) {
    BElem out = ctx.one();
    const Stack* p = s.get();
    for (; !p->is_bottom(); p = p->tail.get()) out &= tau(ctx, p->head);
    auto b = ctx.parse_symbol(p->bottom);
    if (!b) throw VocabularyError("stack bottom w[" + p->bottom + "] is foreign to the forcing algebra");
    return out & *b;
}

BElem tau(const BoolCtx& ctx, const Process& p) { return tau(ctx, p.head) & tau(ctx, p.stack); }

PoleVerdict ForcingAlgebra::pole_contains(const Process& p) const {
    return tau(ctx_, p) == 0 ? PoleVerdict::in : PoleVerdict::out;
}

std::vector<std::string> ForcingAlgebra::bottoms() const {
    std::vector<std::string> out;
    for (BElem x : ctx_.elements()) out.push_back(ctx_.symbol(x));
    return out;
}

std::vector<TermPtr> ForcingAlgebra::universal_realizers() const { return {tau_term(0)}; }

bool ForcingAlgebra::order_leq(const Process& p, const Process& q) const {
    return ctx_.leq(tau(ctx_, p), tau(ctx_, q));
}

TermPtr ForcingAlgebra::tau_term(BElem m) const { return cont(bottom(ctx_.symbol(m))); }

namespace {

struct SupCache {
    std::mutex mu;
    std::unordered_map<std::string, BElem> values;
};

SupCache& sup_cache() {
    static SupCache c;
    return c;
}

BElem prefix_tau(const BoolCtx& ctx, const std::vector<TermPtr>& prefix) {
    BElem m = ctx.one();
    for (const auto& t : prefix) m &= tau(ctx, t);
    return m;
}

}  // namespace

BElem ForcingAlgebra::stackset_sup(const StackSetPtr& s) const {
    switch (s->kind) {
        case StackSetKind::All: return ctx_.one();
        case StackSetKind::Prefix: return prefix_tau(ctx_, s->prefix) & stackset_sup(s->tail);
        case StackSetKind::Explicit: {
            BElem m = 0;
            for (const auto& st : s->stacks) m |= tau(ctx_, st);
            return m;
        }
        case StackSetKind::Guarded: return ctx_.neg(falsity_sup(s->guard)) & stackset_sup(s->tail);
        case StackSetKind::Union: {
            BElem m = 0;
            for (const auto& p : s->parts) m |= stackset_sup(p);
            return m;
        }
        case StackSetKind::Component:
            throw VocabularyError("component stack sets belong to the d-algebra");
    }
    return 0;
}

BElem ForcingAlgebra::falsity_sup(const FormulaPtr& f) const {
    if (f->kind == FormulaKind::Top) return 0;
    if (f->kind == FormulaKind::Bot) return ctx_.one();
    if (!is_closed(f)) throw std::invalid_argument("falsity value of an open formula: " + print(f));
    std::string key = std::to_string(ctx_.atoms()) + "|" + f->key;
    {
        std::lock_guard<std::mutex> lock(sup_cache().mu);
        if (auto it = sup_cache().values.find(key); it != sup_cache().values.end()) return it->second;
    }
    BElem m = 0;
    const NamePtr& a = f->a.name;
    const NamePtr& b = f->b.name;
    switch (f->kind) {
        case FormulaKind::Top:
        case FormulaKind::Bot: break;
        case FormulaKind::NotEps:
            for (const auto& [c, ss] : b->entries)
                if (same_name(c, a)) m |= stackset_sup(ss);
            break;
        case FormulaKind::NotIn:
            for (const auto& [c, ss] : b->entries)
                m |= ctx_.neg(falsity_sup(f_sub(nref(a), nref(c)))) & ctx_.neg(falsity_sup(f_sub(nref(c), nref(a)))) &
                     stackset_sup(ss);
            break;
        case FormulaKind::Sub:
            for (const auto& [c, ss] : a->entries) m |= ctx_.neg(falsity_sup(f_notin(nref(c), nref(b)))) & stackset_sup(ss);
            break;
        case FormulaKind::Impl: m = ctx_.neg(falsity_sup(f->left)) & falsity_sup(f->right); break;
        case FormulaKind::ForallU:
            for (const auto& n : f->universe) m |= falsity_sup(subst(f->left, f->var, n));
            break;
        case FormulaKind::ForallR:
            for (const auto& n : dom(a)) m |= falsity_sup(subst(f->left, f->var, n));
            break;
        case FormulaKind::ForallHat:
            for (unsigned beta = 0; beta < f->alpha; ++beta)
                m |= tau(ctx_, church(beta)) & falsity_sup(subst(f->left, f->var, hat(beta)));
            break;
        case FormulaKind::NeqNE: m = same_name(a, b) ? ctx_.one() : 0; break;
        case FormulaKind::Hook: m = same_name(a, b) ? falsity_sup(f->left) : 0; break;
        case FormulaKind::AppliedLift:
            if (auto d = lift_apply(f->lift, a)) m = falsity_sup(subst(f->left, f->var, reish(*d)));
            break;
    }
    std::lock_guard<std::mutex> lock(sup_cache().mu);
    sup_cache().values.emplace(key, m);
    return m;
}

bool ForcingAlgebra::realizes(const TermPtr& t, const FormulaPtr& f) const {
    return (tau(ctx_, t) & falsity_sup(f)) == 0;
}

StackPtr ForcingAlgebra::stackset_witness(const StackSetPtr& s, unsigned atom) const {
    BElem bit = BElem{1} << atom;
    if (!(stackset_sup(s) & bit)) return nullptr;
    switch (s->kind) {
        case StackSetKind::All: return bottom(ctx_.symbol(ctx_.one()));
        case StackSetKind::Prefix: return push_all(s->prefix, stackset_witness(s->tail, atom));
        case StackSetKind::Explicit:
            for (const auto& st : s->stacks)
                if (tau(ctx_, st) & bit) return st;
            return nullptr;
        case StackSetKind::Guarded:
            return push(tau_term(ctx_.neg(falsity_sup(s->guard))), stackset_witness(s->tail, atom));
        case StackSetKind::Union:
            for (const auto& p : s->parts)
                if (auto w = stackset_witness(p, atom)) return w;
            return nullptr;
        case StackSetKind::Component: break;
    }
    throw VocabularyError("component stack sets belong to the d-algebra");
}

StackPtr ForcingAlgebra::falsity_witness(const FormulaPtr& f, unsigned atom) const {
    BElem bit = BElem{1} << atom;
    if (!(falsity_sup(f) & bit)) return nullptr;
    const NamePtr& a = f->a.name;
    const NamePtr& b = f->b.name;
    auto instance = [&](const std::vector<NamePtr>& names) -> StackPtr {
        for (const auto& n : names)
            if (auto w = falsity_witness(subst(f->left, f->var, n), atom)) return w;
        return nullptr;
    };
    switch (f->kind) {
        case FormulaKind::Top: return nullptr;
        case FormulaKind::Bot:
        case FormulaKind::NeqNE: return bottom(ctx_.symbol(ctx_.one()));
        case FormulaKind::NotEps:
            for (const auto& [c, ss] : b->entries)
                if (same_name(c, a))
                    if (auto w = stackset_witness(ss, atom)) return w;
            return nullptr;
        case FormulaKind::NotIn:
            for (const auto& [c, ss] : b->entries) {
                BElem m1 = ctx_.neg(falsity_sup(f_sub(nref(a), nref(c))));
                BElem m2 = ctx_.neg(falsity_sup(f_sub(nref(c), nref(a))));
                if (!(m1 & m2 & bit)) continue;
                if (auto w = stackset_witness(ss, atom)) return push(tau_term(m1), push(tau_term(m2), w));
            }
            return nullptr;
        case FormulaKind::Sub:
            for (const auto& [c, ss] : a->entries) {
                BElem m = ctx_.neg(falsity_sup(f_notin(nref(c), nref(b))));
                if (!(m & bit)) continue;
                if (auto w = stackset_witness(ss, atom)) return push(tau_term(m), w);
            }
            return nullptr;
        case FormulaKind::Impl:
            return push(tau_term(ctx_.neg(falsity_sup(f->left))), falsity_witness(f->right, atom));
        case FormulaKind::ForallU: return instance(f->universe);
        case FormulaKind::ForallR: return instance(dom(a));
        case FormulaKind::ForallHat:
            for (unsigned beta = 0; beta < f->alpha; ++beta)
                if (auto w = falsity_witness(subst(f->left, f->var, hat(beta)), atom)) return push(church(beta), w);
            return nullptr;
        case FormulaKind::Hook: return falsity_witness(f->left, atom);
        case FormulaKind::AppliedLift:
            return falsity_witness(subst(f->left, f->var, reish(*lift_apply(f->lift, a))), atom);
    }
    return nullptr;
}

namespace {

struct BNameTable {
    std::mutex mu;
    std::map<std::string, BNamePtr> by_key;
    std::size_t next = 0;
};

BNameTable& bnames() {
    static BNameTable t;
    return t;
}

}  // namespace

BNamePtr make_bname(std::vector<std::pair<BNamePtr, BElem>> graph) {
    std::sort(graph.begin(), graph.end(), [](const auto& x, const auto& y) { return x.first->id < y.first->id; });
    std::vector<std::pair<BNamePtr, BElem>> merged;
    for (auto& e : graph) {
        if (!merged.empty() && merged.back().first->id == e.first->id)
            merged.back().second |= e.second;
        else
            merged.push_back(std::move(e));
    }
    std::string key = "{";
    std::size_t rk = 0;
    for (const auto& [c, v] : merged) {
        key += std::to_string(c->id) + ":" + std::to_string(v) + ";";
        rk = std::max(rk, c->rank + 1);
    }
    key += "}";
    BNameTable& t = bnames();
    std::lock_guard<std::mutex> lock(t.mu);
    if (auto it = t.by_key.find(key); it != t.by_key.end()) return it->second;
    auto b = std::make_shared<BooleanName>();
    b->graph = std::move(merged);
    b->id = t.next++;
    b->rank = rk;
    b->key = key;
    t.by_key.emplace(key, b);
    return b;
}

std::string print(const BoolCtx& ctx, const BNamePtr& b) {
    std::string out = "{";
    for (std::size_t i = 0; i < b->graph.size(); ++i) {
        if (i) out += ", ";
        out += print(ctx, b->graph[i].first) + " -> " + ctx.show(b->graph[i].second);
    }
    return out + "}";
}

BNamePtr tau_name(const ForcingAlgebra& alg, const NamePtr& a) {
    std::vector<std::pair<BNamePtr, BElem>> graph;
    for (const auto& [x, ss] : a->entries) graph.emplace_back(tau_name(alg, x), alg.stackset_sup(ss));
    return make_bname(std::move(graph));
}

NamePtr sigma_name(const BoolCtx& ctx, const BNamePtr& b) {
    std::vector<std::pair<NamePtr, StackSetPtr>> entries;
    for (const auto& [x, v] : b->graph) entries.emplace_back(sigma_name(ctx, x), ss_explicit({bottom(ctx.symbol(v))}));
    return make_name(std::move(entries));
}

namespace {

std::shared_ptr<BFormula> bnode(BFormula::Kind k) {
    auto f = std::make_shared<BFormula>();
    f->kind = k;
    return f;
}

using BKey = std::tuple<unsigned, std::size_t, std::size_t>;

struct BoolCache {
    std::mutex mu;
    std::map<BKey, BElem> sub, in;
};

BoolCache& bool_cache() {
    static BoolCache c;
    return c;
}

std::optional<BElem> cached(std::map<BKey, BElem>& m, const BKey& k) {
    std::lock_guard<std::mutex> lock(bool_cache().mu);
    if (auto it = m.find(k); it != m.end()) return it->second;
    return std::nullopt;
}

void store(std::map<BKey, BElem>& m, const BKey& k, BElem v) {
    std::lock_guard<std::mutex> lock(bool_cache().mu);
    m.emplace(k, v);
}

BNameRef bsubst_ref(const BNameRef& r, const std::string& var, const BNamePtr& n) {
    return r.is_var() && r.var == var ? bref(n) : r;
}

BFormulaPtr bsubst(const BFormulaPtr& f, const std::string& var, const BNamePtr& n) {
    switch (f->kind) {
        case BFormula::Kind::Top:
        case BFormula::Kind::Bot: return f;
        case BFormula::Kind::NotIn: return bf_notin(bsubst_ref(f->a, var, n), bsubst_ref(f->b, var, n));
        case BFormula::Kind::Sub: return bf_sub(bsubst_ref(f->a, var, n), bsubst_ref(f->b, var, n));
        case BFormula::Kind::Impl: return bf_impl(bsubst(f->left, var, n), bsubst(f->right, var, n));
        case BFormula::Kind::Forall:
            if (f->var == var) return f;
            return bf_forall(f->var, f->universe, bsubst(f->left, var, n));
    }
    return f;
}

const BNamePtr& closed_ref(const BNameRef& r) {
    if (r.is_var()) throw std::invalid_argument("free variable " + r.var + " in Boolean formula");
    return r.name;
}

}  // namespace

BNameRef bref(BNamePtr b) { return BNameRef{std::move(b), ""}; }

BFormulaPtr bf_top() { return bnode(BFormula::Kind::Top); }
BFormulaPtr bf_bot() { return bnode(BFormula::Kind::Bot); }

BFormulaPtr bf_notin(BNameRef a, BNameRef b) {
    auto f = bnode(BFormula::Kind::NotIn);
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

BFormulaPtr bf_sub(BNameRef a, BNameRef b) {
    auto f = bnode(BFormula::Kind::Sub);
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

BFormulaPtr bf_impl(BFormulaPtr l, BFormulaPtr r) {
    auto f = bnode(BFormula::Kind::Impl);
    f->left = std::move(l);
    f->right = std::move(r);
    return f;
}

BFormulaPtr bf_forall(std::string var, std::vector<BNamePtr> universe, BFormulaPtr body) {
    auto f = bnode(BFormula::Kind::Forall);
    f->var = std::move(var);
    f->universe = std::move(universe);
    f->left = std::move(body);
    return f;
}

BFormulaPtr bf_eq(const BNamePtr& a, const BNamePtr& b) {
    auto neg = [](BFormulaPtr x) { return bf_impl(std::move(x), bf_bot()); };
    return neg(bf_impl(bf_sub(bref(a), bref(b)), neg(bf_sub(bref(b), bref(a)))));
}

BElem bool_sub(const BoolCtx& ctx, const BNamePtr& a, const BNamePtr& b) {
    BKey k{ctx.atoms(), a->id, b->id};
    if (auto v = cached(bool_cache().sub, k)) return *v;
    BElem m = ctx.one();
    for (const auto& [c, v] : a->graph) m &= ctx.neg(v) | bool_in(ctx, c, b);
    store(bool_cache().sub, k, m);
    return m;
}

BElem bool_in(const BoolCtx& ctx, const BNamePtr& a, const BNamePtr& b) {
    BKey k{ctx.atoms(), a->id, b->id};
    if (auto v = cached(bool_cache().in, k)) return *v;
    BElem m = 0;
    for (const auto& [c, v] : b->graph) m |= bool_eq(ctx, a, c) & v;
    store(bool_cache().in, k, m);
    return m;
}

BElem bool_eq(const BoolCtx& ctx, const BNamePtr& a, const BNamePtr& b) {
    return bool_sub(ctx, a, b) & bool_sub(ctx, b, a);
}

BElem bool_truth(const BoolCtx& ctx, const BFormulaPtr& f) {
    switch (f->kind) {
        case BFormula::Kind::Top: return ctx.one();
        case BFormula::Kind::Bot: return 0;
        case BFormula::Kind::NotIn: return ctx.neg(bool_in(ctx, closed_ref(f->a), closed_ref(f->b)));
        case BFormula::Kind::Sub: return bool_sub(ctx, closed_ref(f->a), closed_ref(f->b));
        case BFormula::Kind::Impl: return ctx.neg(bool_truth(ctx, f->left)) | bool_truth(ctx, f->right);
        case BFormula::Kind::Forall: {
            BElem m = ctx.one();
            for (const auto& n : f->universe) m &= bool_truth(ctx, bsubst(f->left, f->var, n));
            return m;
        }
    }
    return 0;
}

namespace {

BNameRef translate_ref(const ForcingAlgebra& alg, const NameRef& r) {
    if (r.is_var()) return BNameRef{nullptr, r.var};
    return bref(tau_name(alg, r.name));
}

void collect_universe(const FormulaPtr& f, std::set<std::size_t>& out) {
    if (f->kind == FormulaKind::ForallU)
        for (const auto& n : f->universe) out.insert(n->id);
    if (f->left) collect_universe(f->left, out);
    if (f->right) collect_universe(f->right, out);
}

}  // namespace

BFormulaPtr translate(const ForcingAlgebra& alg, const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::Top: return bf_top();
        case FormulaKind::Bot: return bf_bot();
        case FormulaKind::NotIn: return bf_notin(translate_ref(alg, f->a), translate_ref(alg, f->b));
        case FormulaKind::Sub: return bf_sub(translate_ref(alg, f->a), translate_ref(alg, f->b));
        case FormulaKind::Impl: return bf_impl(translate(alg, f->left), translate(alg, f->right));
        case FormulaKind::ForallU: {
            std::vector<BNamePtr> universe;
            for (const auto& n : f->universe) universe.push_back(tau_name(alg, n));
            return bf_forall(f->var, std::move(universe), translate(alg, f->left));
        }
        default: throw std::invalid_argument("formula outside Fml_in: " + print(f));
    }
}

EquivalenceResult equivalence_check(const ForcingAlgebra& alg, const TermPtr& t, const FormulaPtr& f) {
    EquivalenceResult r;
    r.realizes = alg.realizes(t, f);
    BElem truth = bool_truth(alg.ctx(), translate(alg, f));
    r.boolean_side = alg.ctx().leq(tau(alg.ctx(), t), truth);
    std::set<std::size_t> u;
    collect_universe(f, u);
    r.universe = u.size();
    return r;
}

}  // namespace krivine

#include "krivine/names.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace krivine {

std::string HF::key() const {
    std::string out = "{";
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) out += ",";
        out += elems[i].key();
    }
    return out + "}";
}

HF hf_set(std::vector<HF> elems) {
    std::vector<std::pair<std::string, HF>> keyed;
    for (auto& e : elems) keyed.emplace_back(e.key(), std::move(e));
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    HF out;
    for (std::size_t i = 0; i < keyed.size(); ++i)
        if (i == 0 || keyed[i].first != keyed[i - 1].first) out.elems.push_back(std::move(keyed[i].second));
    return out;
}

HF hf_nat(unsigned n) {
    std::vector<HF> elems;
    for (unsigned i = 0; i < n; ++i) elems.push_back(hf_nat(i));
    return hf_set(std::move(elems));
}

HF hf_pair(const HF& a, const HF& b) { return hf_set({hf_set({a}), hf_set({a, b})}); }

std::optional<unsigned> hf_as_nat(const HF& h) {
    unsigned n = static_cast<unsigned>(h.elems.size());
    if (n > 64) return std::nullopt;
    if (h.key() == hf_nat(n).key()) return n;
    return std::nullopt;
}

std::string print(const HF& h) {
    if (auto n = hf_as_nat(h)) return std::to_string(*n);
    std::string out = "{";
    for (std::size_t i = 0; i < h.elems.size(); ++i) {
        if (i) out += ", ";
        out += print(h.elems[i]);
    }
    return out + "}";
}

namespace {

std::shared_ptr<StackSet> ss_node(StackSetKind k) {
    auto s = std::make_shared<StackSet>();
    s->kind = k;
    return s;
}

}  // namespace

StackSetPtr ss_all() {
    static const StackSetPtr all = [] {
        auto s = ss_node(StackSetKind::All);
        s->key = "A";
        return s;
    }();
    return all;
}

StackSetPtr ss_prefix(std::vector<TermPtr> prefix, StackSetPtr tail) {
    for (const auto& t : prefix)
        if (!is_closed(t)) throw OpenTermError("stack set prefix term is open");
    if (prefix.empty()) return tail;
    auto s = ss_node(StackSetKind::Prefix);
    s->key = "P[";
    for (const auto& t : prefix) s->key += canonical(t) + ",";
    s->key += "]" + tail->key;
    s->prefix = std::move(prefix);
    s->tail = std::move(tail);
    return s;
}

StackSetPtr ss_explicit(std::vector<StackPtr> stacks) {
    std::vector<std::pair<std::string, StackPtr>> keyed;
    for (auto& st : stacks) keyed.emplace_back(canonical(st), st);
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    auto s = ss_node(StackSetKind::Explicit);
    s->key = "E{";
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        if (i && keyed[i].first == keyed[i - 1].first) continue;
        s->stacks.push_back(keyed[i].second);
        s->key += keyed[i].first + ";";
    }
    s->key += "}";
    return s;
}

StackSetPtr ss_guarded(FormulaPtr guard, StackSetPtr tail) {
    if (!is_closed(guard)) throw std::invalid_argument("guard formula must be closed");
    auto s = ss_node(StackSetKind::Guarded);
    s->key = "G(" + guard->key + ")" + tail->key;
    s->guard = std::move(guard);
    s->tail = std::move(tail);
    return s;
}

StackSetPtr ss_union(std::vector<StackSetPtr> parts) {
    std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x->key < y->key; });
    parts.erase(std::unique(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x->key == y->key; }),
                parts.end());
    if (parts.size() == 1) return parts[0];
    auto s = ss_node(StackSetKind::Union);
    s->key = "U(";
    for (const auto& p : parts) s->key += p->key + "|";
    s->key += ")";
    s->parts = std::move(parts);
    return s;
}

StackSetPtr ss_component(int i) {
    if (i != 0 && i != 1) throw std::invalid_argument("component must be 0 or 1");
    auto s = ss_node(StackSetKind::Component);
    s->component = i;
    s->key = "C" + std::to_string(i);
    return s;
}

std::string print(const StackSetPtr& s) {
    switch (s->kind) {
        case StackSetKind::All: return "ALL";
        case StackSetKind::Prefix: {
            std::string out = "[";
            for (std::size_t i = 0; i < s->prefix.size(); ++i) {
                if (i) out += ", ";
                out += print(s->prefix[i]);
            }
            return out + "]>" + print(s->tail);
        }
        case StackSetKind::Explicit: {
            std::string out = "{";
            for (std::size_t i = 0; i < s->stacks.size(); ++i) {
                if (i) out += ", ";
                out += print(s->stacks[i]);
            }
            return out + "}";
        }
        case StackSetKind::Guarded: return "GUARD(" + print(s->guard) + ") " + print(s->tail);
        case StackSetKind::Union: {
            std::string out = "U(";
            for (std::size_t i = 0; i < s->parts.size(); ++i) {
                if (i) out += ", ";
                out += print(s->parts[i]);
            }
            return out + ")";
        }
        case StackSetKind::Component: return s->component == 0 ? "PI0" : "PI1";
    }
    return "?";
}

namespace {

struct NameTable {
    std::mutex mu;
    std::unordered_map<std::string, NamePtr> by_key;
    std::vector<std::string> labels;
};

NameTable& names() {
    static NameTable t;
    return t;
}

}  // namespace

NamePtr make_name(std::vector<std::pair<NamePtr, StackSetPtr>> entries, std::string label) {
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
        if (x.first->id != y.first->id) return x.first->id < y.first->id;
        return x.second->key < y.second->key;
    });
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const auto& x, const auto& y) {
                                  return x.first->id == y.first->id && x.second->key == y.second->key;
                              }),
                  entries.end());
    std::string key = "{";
    std::size_t rk = 0;
    for (const auto& [child, ss] : entries) {
        key += "#" + std::to_string(child->id) + ":" + ss->key + ";";
        rk = std::max(rk, child->rank + 1);
    }
    key += "}";
    NameTable& t = names();
    std::lock_guard<std::mutex> lock(t.mu);
    if (auto it = t.by_key.find(key); it != t.by_key.end()) {
        std::string& old = t.labels[it->second->id];
        if (!label.empty() && (old.empty() || label.size() < old.size())) old = label;
        return it->second;
    }
    auto n = std::make_shared<Name>();
    n->entries = std::move(entries);
    n->id = t.labels.size();
    n->rank = rk;
    n->key = key;
    t.labels.push_back(label);
    t.by_key.emplace(key, n);
    return n;
}

std::vector<NamePtr> dom(const NamePtr& a) {
    std::vector<NamePtr> out;
    for (const auto& e : a->entries)
        if (out.empty() || out.back()->id != e.first->id) out.push_back(e.first);
    return out;
}

std::size_t rank(const NamePtr& a) { return a->rank; }

bool same_name(const NamePtr& a, const NamePtr& b) { return a->id == b->id; }

std::string print(const NamePtr& a) {
    {
        NameTable& t = names();
        std::lock_guard<std::mutex> lock(t.mu);
        if (!t.labels[a->id].empty()) return t.labels[a->id];
    }
    std::string out = "{";
    for (std::size_t i = 0; i < a->entries.size(); ++i) {
        if (i) out += ", ";
        out += "(" + print(a->entries[i].first) + ", " + print(a->entries[i].second) + ")";
    }
    return out + "}";
}

NamePtr empty_name() { return make_name({}, "^0"); }

NamePtr reish(const HF& h) {
    std::vector<std::pair<NamePtr, StackSetPtr>> entries;
    for (const auto& e : h.elems) entries.emplace_back(reish(e), ss_all());
    return make_name(std::move(entries), "^" + print(h));
}

NamePtr reish_nat(unsigned n) { return reish(hf_nat(n)); }

NamePtr sng(const NamePtr& a) { return make_name({{a, ss_all()}}, "sng(" + print(a) + ")"); }

NamePtr up(const NamePtr& a, const NamePtr& b) {
    return make_name({{a, ss_prefix({church(0)}, ss_all())}, {b, ss_prefix({church(1)}, ss_all())}},
                     "up(" + print(a) + ", " + print(b) + ")");
}

NamePtr op(const NamePtr& a, const NamePtr& b) {
    NamePtr n = up(up(sng(a), reish_nat(0)), sng(sng(b)));
    return make_name(n->entries, "op(" + print(a) + ", " + print(b) + ")");
}

NamePtr intcup(const NamePtr& a, const NamePtr& b) {
    std::vector<std::pair<NamePtr, StackSetPtr>> entries;
    for (const auto& [x, ss] : a->entries) entries.emplace_back(x, ss_prefix({church(0)}, ss));
    for (const auto& [x, ss] : b->entries) entries.emplace_back(x, ss_prefix({church(1)}, ss));
    return make_name(std::move(entries), "cup(" + print(a) + ", " + print(b) + ")");
}

NamePtr cart(const HF& a, const HF& b) {
    std::vector<std::pair<NamePtr, StackSetPtr>> entries;
    for (const auto& x : a.elems)
        for (const auto& y : b.elems) entries.emplace_back(op(reish(x), reish(y)), ss_all());
    return make_name(std::move(entries), "cart(" + print(a) + ", " + print(b) + ")");
}

NamePtr hat(unsigned alpha, unsigned kappa) {
    if (alpha > kappa) throw std::invalid_argument("hat: alpha exceeds kappa");
    std::vector<std::pair<NamePtr, StackSetPtr>> entries;
    for (unsigned beta = 0; beta < alpha; ++beta)
        entries.emplace_back(hat(beta, kappa), ss_prefix({church(beta)}, ss_all()));
    return make_name(std::move(entries), "hat(" + std::to_string(alpha) + ")");
}

NamePtr pairing_name(const NamePtr& a, const NamePtr& b) {
    return make_name({{a, ss_all()}, {b, ss_all()}}, "pair(" + print(a) + ", " + print(b) + ")");
}

namespace {

bool surely_empty(const StackSetPtr& s) {
    switch (s->kind) {
        case StackSetKind::Explicit: return s->stacks.empty();
        case StackSetKind::Prefix: return surely_empty(s->tail);
        case StackSetKind::Union:
            return std::all_of(s->parts.begin(), s->parts.end(), [](const auto& p) { return surely_empty(p); });
        default: return false;
    }
}

}  // namespace

NamePtr union_name(const NamePtr& a) {
    std::vector<std::pair<NamePtr, StackSetPtr>> entries;
    for (const auto& [x, ss] : a->entries) {
        if (surely_empty(ss)) continue;
        entries.insert(entries.end(), x->entries.begin(), x->entries.end());
    }
    return make_name(std::move(entries), "union(" + print(a) + ")");
}

NamePtr separation_name(const NamePtr& a, const std::string& var, const FormulaPtr& phi) {
    std::vector<std::pair<NamePtr, StackSetPtr>> entries;
    for (const auto& [x, ss] : a->entries) entries.emplace_back(x, ss_guarded(subst(phi, var, x), ss));
    return make_name(std::move(entries), "sep(" + print(a) + ", " + var + ". " + print(phi) + ")");
}

NamePtr y_x_name(const NamePtr& a, const NamePtr& x) {
    std::vector<std::pair<NamePtr, StackSetPtr>> entries;
    for (const auto& [z, ss] : a->entries) entries.emplace_back(z, ss_guarded(f_eps(nref(z), nref(x)), ss));
    return make_name(std::move(entries), "y(" + print(a) + ", " + print(x) + ")");
}

NamePtr weak_power_name(const NamePtr& a, const std::vector<NamePtr>& xs) {
    if (a->entries.size() > 6) throw std::invalid_argument("weak_power_name: too many entries");
    std::vector<NamePtr> members;
    std::size_t m = a->entries.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<std::pair<NamePtr, StackSetPtr>> sub;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1) sub.push_back(a->entries[i]);
        members.push_back(make_name(sub));
    }
    auto d = dom(a);
    for (std::size_t mask = 0; mask < (std::size_t{1} << d.size()); ++mask) {
        std::vector<std::pair<NamePtr, StackSetPtr>> sub;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (mask >> i & 1) sub.emplace_back(d[i], ss_all());
        members.push_back(make_name(sub));
    }
    for (const auto& x : xs) members.push_back(y_x_name(a, x));
    std::vector<std::pair<NamePtr, StackSetPtr>> entries;
    for (const auto& y : members) entries.emplace_back(y, ss_all());
    return make_name(std::move(entries), "wpow(" + print(a) + ")");
}

NamePtr iterate_sng(const NamePtr& a, unsigned n) {
    NamePtr cur = a;
    for (unsigned i = 0; i < n; ++i) cur = sng(cur);
    return cur;
}

NamePtr infinity_name(const NamePtr& a, unsigned n_max) {
    std::vector<std::pair<NamePtr, StackSetPtr>> entries;
    for (unsigned n = 0; n <= n_max; ++n) entries.emplace_back(iterate_sng(a, n), ss_all());
    return make_name(std::move(entries), "inf(" + print(a) + ", " + std::to_string(n_max) + ")");
}

LiftPtr make_lift(std::string id, std::vector<std::pair<HF, HF>> graph, HF domain, HF codomain) {
    auto f = std::make_shared<Lift>();
    f->id = std::move(id);
    for (auto& [x, y] : graph) f->graph.push_back({{x}, y});
    f->domain0 = std::move(domain);
    f->codomain = std::move(codomain);
    return f;
}

LiftPtr make_lift2(std::string id, std::vector<std::pair<std::pair<HF, HF>, HF>> graph, HF d0, HF d1, HF codomain) {
    auto f = std::make_shared<Lift>();
    f->id = std::move(id);
    f->binary = true;
    for (auto& [xy, v] : graph) f->graph.push_back({{xy.first, xy.second}, v});
    f->domain0 = std::move(d0);
    f->domain1 = std::move(d1);
    f->codomain = std::move(codomain);
    return f;
}

namespace {

NamePtr lift_argument(const LiftPtr& f, const std::vector<HF>& args) {
    if (f->binary) return op(reish(args[0]), reish(args[1]));
    return reish(args[0]);
}

}  // namespace

NamePtr lift_name(const LiftPtr& f) {
    std::vector<std::pair<NamePtr, StackSetPtr>> entries;
    for (const auto& [args, v] : f->graph) entries.emplace_back(op(lift_argument(f, args), reish(v)), ss_all());
    return make_name(std::move(entries), "lift(" + f->id + ")");
}

std::optional<HF> lift_apply(const LiftPtr& f, const NamePtr& x) {
    for (const auto& [args, v] : f->graph)
        if (same_name(lift_argument(f, args), x)) return v;
    return std::nullopt;
}

NameRef nref(NamePtr n) { return NameRef{std::move(n), ""}; }
NameRef nvar(std::string v) { return NameRef{nullptr, std::move(v)}; }

namespace {

std::string ref_key(const NameRef& r) { return r.is_var() ? "$" + r.var : "#" + std::to_string(r.name->id); }

std::shared_ptr<Formula> fnode(FormulaKind k) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    return f;
}

FormulaPtr atom(FormulaKind k, const char* tag, NameRef a, NameRef b) {
    auto f = fnode(k);
    f->key = std::string(tag) + "(" + ref_key(a) + "," + ref_key(b) + ")";
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

}  // namespace

FormulaPtr f_top() {
    static const FormulaPtr t = [] {
        auto f = fnode(FormulaKind::Top);
        f->key = "T";
        return f;
    }();
    return t;
}

FormulaPtr f_bot() {
    static const FormulaPtr b = [] {
        auto f = fnode(FormulaKind::Bot);
        f->key = "F";
        return f;
    }();
    return b;
}

FormulaPtr f_noteps(NameRef a, NameRef b) { return atom(FormulaKind::NotEps, "ne", std::move(a), std::move(b)); }
FormulaPtr f_notin(NameRef a, NameRef b) { return atom(FormulaKind::NotIn, "ni", std::move(a), std::move(b)); }
FormulaPtr f_sub(NameRef a, NameRef b) { return atom(FormulaKind::Sub, "sb", std::move(a), std::move(b)); }
FormulaPtr f_neq(NameRef a, NameRef b) { return atom(FormulaKind::NeqNE, "nq", std::move(a), std::move(b)); }

FormulaPtr f_impl(FormulaPtr l, FormulaPtr r) {
    auto f = fnode(FormulaKind::Impl);
    f->key = "I(" + l->key + "," + r->key + ")";
    f->left = std::move(l);
    f->right = std::move(r);
    return f;
}

FormulaPtr f_forall(std::string var, std::vector<NamePtr> universe, FormulaPtr body) {
    std::sort(universe.begin(), universe.end(), [](const auto& x, const auto& y) { return x->id < y->id; });
    universe.erase(std::unique(universe.begin(), universe.end(),
                               [](const auto& x, const auto& y) { return x->id == y->id; }),
                   universe.end());
    auto f = fnode(FormulaKind::ForallU);
    f->key = "A" + var + "{";
    for (const auto& n : universe) f->key += std::to_string(n->id) + ",";
    f->key += "}" + body->key;
    f->var = std::move(var);
    f->universe = std::move(universe);
    f->left = std::move(body);
    return f;
}

FormulaPtr f_forallr(std::string var, NameRef range, FormulaPtr body) {
    auto f = fnode(FormulaKind::ForallR);
    f->key = "R" + var + "^" + ref_key(range) + "." + body->key;
    f->var = std::move(var);
    f->a = std::move(range);
    f->left = std::move(body);
    return f;
}

FormulaPtr f_forallhat(std::string var, unsigned alpha, FormulaPtr body) {
    auto f = fnode(FormulaKind::ForallHat);
    f->key = "H" + var + "^" + std::to_string(alpha) + "." + body->key;
    f->var = std::move(var);
    f->alpha = alpha;
    f->left = std::move(body);
    return f;
}

FormulaPtr f_hook(NameRef a, NameRef b, FormulaPtr body) {
    auto f = fnode(FormulaKind::Hook);
    f->key = "K(" + ref_key(a) + "," + ref_key(b) + ")" + body->key;
    f->a = std::move(a);
    f->b = std::move(b);
    f->left = std::move(body);
    return f;
}

FormulaPtr f_applied_lift(LiftPtr lf, NameRef x, std::string var, FormulaPtr body) {
    auto f = fnode(FormulaKind::AppliedLift);
    f->key = "L(" + lf->id + "," + ref_key(x) + "," + var + ")" + body->key;
    f->lift = std::move(lf);
    f->a = std::move(x);
    f->var = std::move(var);
    f->left = std::move(body);
    return f;
}

FormulaPtr f_not(FormulaPtr f) { return f_impl(std::move(f), f_bot()); }
FormulaPtr f_and(FormulaPtr f, FormulaPtr g) { return f_not(f_impl(std::move(f), f_not(std::move(g)))); }
FormulaPtr f_or(FormulaPtr f, FormulaPtr g) { return f_impl(f_not(std::move(f)), f_impl(f_not(std::move(g)), f_bot())); }
FormulaPtr f_eps(NameRef a, NameRef b) { return f_not(f_noteps(std::move(a), std::move(b))); }
FormulaPtr f_in(NameRef a, NameRef b) { return f_not(f_notin(std::move(a), std::move(b))); }
FormulaPtr f_eq(NameRef a, NameRef b) { return f_not(f_neq(std::move(a), std::move(b))); }
FormulaPtr f_sim(NameRef a, NameRef b) { return f_and(f_sub(a, b), f_sub(b, a)); }
FormulaPtr f_exists(std::string var, std::vector<NamePtr> universe, FormulaPtr body) {
    return f_not(f_forall(std::move(var), std::move(universe), f_not(std::move(body))));
}

namespace {

NameRef subst_ref(const NameRef& r, const std::string& var, const NamePtr& n) {
    return r.is_var() && r.var == var ? nref(n) : r;
}

}  // namespace

FormulaPtr subst(const FormulaPtr& f, const std::string& var, const NamePtr& n) {
    switch (f->kind) {
        case FormulaKind::Top:
        case FormulaKind::Bot: return f;
        case FormulaKind::NotEps: return f_noteps(subst_ref(f->a, var, n), subst_ref(f->b, var, n));
        case FormulaKind::NotIn: return f_notin(subst_ref(f->a, var, n), subst_ref(f->b, var, n));
        case FormulaKind::Sub: return f_sub(subst_ref(f->a, var, n), subst_ref(f->b, var, n));
        case FormulaKind::NeqNE: return f_neq(subst_ref(f->a, var, n), subst_ref(f->b, var, n));
        case FormulaKind::Impl: return f_impl(subst(f->left, var, n), subst(f->right, var, n));
        case FormulaKind::ForallU:
            if (f->var == var) return f;
            return f_forall(f->var, f->universe, subst(f->left, var, n));
        case FormulaKind::ForallR:
            return f_forallr(f->var, subst_ref(f->a, var, n), f->var == var ? f->left : subst(f->left, var, n));
        case FormulaKind::ForallHat:
            if (f->var == var) return f;
            return f_forallhat(f->var, f->alpha, subst(f->left, var, n));
        case FormulaKind::Hook:
            return f_hook(subst_ref(f->a, var, n), subst_ref(f->b, var, n), subst(f->left, var, n));
        case FormulaKind::AppliedLift:
            return f_applied_lift(f->lift, subst_ref(f->a, var, n), f->var,
                                  f->var == var ? f->left : subst(f->left, var, n));
    }
    return f;
}

namespace {

void collect_free(const FormulaPtr& f, std::vector<std::string>& bound, std::set<std::string>& out) {
    auto ref = [&](const NameRef& r) {
        if (r.is_var() && std::find(bound.begin(), bound.end(), r.var) == bound.end()) out.insert(r.var);
    };
    auto under = [&](const std::string& v, const FormulaPtr& body) {
        bound.push_back(v);
        collect_free(body, bound, out);
        bound.pop_back();
    };
    switch (f->kind) {
        case FormulaKind::Top:
        case FormulaKind::Bot: return;
        case FormulaKind::NotEps:
        case FormulaKind::NotIn:
        case FormulaKind::Sub:
        case FormulaKind::NeqNE:
            ref(f->a);
            ref(f->b);
            return;
        case FormulaKind::Impl:
            collect_free(f->left, bound, out);
            collect_free(f->right, bound, out);
            return;
        case FormulaKind::ForallU:
        case FormulaKind::ForallHat: under(f->var, f->left); return;
        case FormulaKind::ForallR:
            ref(f->a);
            under(f->var, f->left);
            return;
        case FormulaKind::Hook:
            ref(f->a);
            ref(f->b);
            collect_free(f->left, bound, out);
            return;
        case FormulaKind::AppliedLift:
            ref(f->a);
            under(f->var, f->left);
            return;
    }
}

}  // namespace

std::vector<std::string> free_name_vars(const FormulaPtr& f) {
    std::vector<std::string> bound;
    std::set<std::string> out;
    collect_free(f, bound, out);
    return {out.begin(), out.end()};
}

bool is_closed(const FormulaPtr& f) { return free_name_vars(f).empty(); }

bool in_fml_in(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::Top:
        case FormulaKind::Bot:
        case FormulaKind::NotIn:
        case FormulaKind::Sub: return true;
        case FormulaKind::Impl: return in_fml_in(f->left) && in_fml_in(f->right);
        case FormulaKind::ForallU: return in_fml_in(f->left);
        default: return false;
    }
}

std::size_t formula_depth(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::Impl: return 1 + std::max(formula_depth(f->left), formula_depth(f->right));
        case FormulaKind::ForallU:
        case FormulaKind::ForallR:
        case FormulaKind::ForallHat:
        case FormulaKind::Hook:
        case FormulaKind::AppliedLift: return 1 + formula_depth(f->left);
        default: return 0;
    }
}

namespace {

std::string ref_str(const NameRef& r) { return r.is_var() ? r.var : print(r.name); }

bool is_atomic(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::Impl:
        case FormulaKind::ForallU:
        case FormulaKind::ForallR:
        case FormulaKind::ForallHat:
        case FormulaKind::Hook:
        case FormulaKind::AppliedLift: return false;
        default: return true;
    }
}

std::string wrap(const FormulaPtr& f) { return is_atomic(f) ? print(f) : "(" + print(f) + ")"; }

}  // namespace

std::string print(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::Top: return "top";
        case FormulaKind::Bot: return "bot";
        case FormulaKind::NotEps: return ref_str(f->a) + " eps! " + ref_str(f->b);
        case FormulaKind::NotIn: return ref_str(f->a) + " in! " + ref_str(f->b);
        case FormulaKind::Sub: return ref_str(f->a) + " sub " + ref_str(f->b);
        case FormulaKind::NeqNE: return ref_str(f->a) + " ne " + ref_str(f->b);
        case FormulaKind::Impl: return wrap(f->left) + " -> " + print(f->right);
        case FormulaKind::ForallU: {
            std::string out = "forall " + f->var + " in {";
            for (std::size_t i = 0; i < f->universe.size(); ++i) {
                if (i) out += ", ";
                out += print(f->universe[i]);
            }
            return out + "} . " + print(f->left);
        }
        case FormulaKind::ForallR: return "forallr " + f->var + " " + ref_str(f->a) + " . " + print(f->left);
        case FormulaKind::ForallHat:
            return "forallh " + f->var + " " + std::to_string(f->alpha) + " . " + print(f->left);
        case FormulaKind::Hook: return "hook(" + ref_str(f->a) + ", " + ref_str(f->b) + ") " + wrap(f->left);
        case FormulaKind::AppliedLift:
            return "lift(" + f->lift->id + ", " + ref_str(f->a) + ", " + f->var + ") " + wrap(f->left);
    }
    return "?";
}

}  // namespace krivine

#include "krivine/term.hpp"

#include <algorithm>
#include <functional>

#include "krivine/cursor.hpp"

namespace krivine {

InstructionRegistry::InstructionRegistry() : symbols_{"q", "chi", "d"} {}

InstructionRegistry& InstructionRegistry::global() {
    static InstructionRegistry reg;
    return reg;
}

void InstructionRegistry::declare(const std::string& symbol) {
    if (symbol.empty() || !Cursor::ident_start(symbol[0]))
        throw std::invalid_argument("bad instruction symbol '" + symbol + "'");
    std::lock_guard<std::mutex> lock(mu_);
    symbols_.insert(symbol);
}

bool InstructionRegistry::known(const std::string& symbol) const {
    std::lock_guard<std::mutex> lock(mu_);
    return symbols_.count(symbol) > 0;
}

std::vector<std::string> InstructionRegistry::symbols() const {
    std::lock_guard<std::mutex> lock(mu_);
    return {symbols_.begin(), symbols_.end()};
}

namespace {

std::vector<std::string> merge_free(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::shared_ptr<Term> node(TermKind k) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    return t;
}

}  // namespace

TermPtr var(const std::string& name) {
    auto t = node(TermKind::Var);
    t->name = name;
    t->free = {name};
    return t;
}

TermPtr lam(const std::string& binder, TermPtr body) {
    auto t = node(TermKind::Lam);
    t->name = binder;
    t->size = 1 + body->size;
    t->free = body->free;
    t->free.erase(std::remove(t->free.begin(), t->free.end(), binder), t->free.end());
    t->left = std::move(body);
    return t;
}

TermPtr lam(const std::vector<std::string>& binders, TermPtr body) {
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = lam(*it, body);
    return body;
}

TermPtr app(TermPtr fn, TermPtr arg) {
    auto t = node(TermKind::App);
    t->size = 1 + fn->size + arg->size;
    t->free = merge_free(fn->free, arg->free);
    t->left = std::move(fn);
    t->right = std::move(arg);
    return t;
}

TermPtr apps(const std::vector<TermPtr>& parts) {
    if (parts.empty()) throw std::invalid_argument("apps: empty");
    TermPtr t = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) t = app(t, parts[i]);
    return t;
}

TermPtr callcc() {
    static const TermPtr cc = node(TermKind::CallCC);
    return cc;
}

TermPtr cont(StackPtr saved) {
    auto t = node(TermKind::Cont);
    t->size = 1 + saved->size;
    t->saved = std::move(saved);
    return t;
}

TermPtr instr(const std::string& symbol) {
    auto t = node(TermKind::Instr);
    t->name = symbol;
    return t;
}

StackPtr bottom(const std::string& symbol) {
    auto s = std::make_shared<Stack>();
    s->bottom = symbol;
    return s;
}

StackPtr push_unchecked(TermPtr head, StackPtr tail) {
    auto s = std::make_shared<Stack>();
    s->size = head->size + tail->size;
    s->depth = tail->depth + 1;
    s->head = std::move(head);
    s->tail = std::move(tail);
    return s;
}

StackPtr push(TermPtr head, StackPtr tail) {
    if (!head->free.empty()) throw OpenTermError("stack head has free variable '" + head->free.front() + "'");
    return push_unchecked(std::move(head), std::move(tail));
}

StackPtr push_all(const std::vector<TermPtr>& heads, StackPtr tail) {
    for (auto it = heads.rbegin(); it != heads.rend(); ++it) tail = push(*it, tail);
    return tail;
}

std::vector<TermPtr> stack_items(const StackPtr& s) {
    std::vector<TermPtr> out;
    for (const Stack* p = s.get(); !p->is_bottom(); p = p->tail.get()) out.push_back(p->head);
    return out;
}

const std::string& stack_bottom(const StackPtr& s) {
    const Stack* p = s.get();
    while (!p->is_bottom()) p = p->tail.get();
    return p->bottom;
}

Process make_process(TermPtr head, StackPtr stack) {
    if (!head->free.empty()) throw OpenTermError("process head has free variable '" + head->free.front() + "'");
    return Process{std::move(head), std::move(stack)};
}

std::set<std::string> free_vars(const TermPtr& t) { return {t->free.begin(), t->free.end()}; }

bool is_closed(const TermPtr& t) { return t->free.empty(); }

namespace {

bool has_cont(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Cont: return true;
        case TermKind::Lam: return has_cont(t->left);
        case TermKind::App: return has_cont(t->left) || has_cont(t->right);
        default: return false;
    }
}

}  // namespace

bool is_realizer(const TermPtr& t) {
    if (!t->free.empty()) throw OpenTermError("is_realizer: open term");
    return !has_cont(t);
}

TermPtr substitute(const TermPtr& t, const std::string& u, const TermPtr& s) {
    if (!std::binary_search(t->free.begin(), t->free.end(), u)) return t;
    switch (t->kind) {
        case TermKind::Var: return s;
        case TermKind::Lam: return lam(t->name, substitute(t->left, u, s));
        case TermKind::App: return app(substitute(t->left, u, s), substitute(t->right, u, s));
        default: return t;
    }
}

namespace {

using Env = std::vector<const std::string*>;

long lookup(const Env& env, const std::string& name) {
    for (std::size_t i = env.size(); i-- > 0;)
        if (*env[i] == name) return static_cast<long>(env.size() - 1 - i);
    return -1;
}

bool alpha_term(const Term* a, const Term* b, Env& ea, Env& eb);

bool alpha_stack(const Stack* a, const Stack* b) {
    while (true) {
        if (a == b) return true;
        if (a->is_bottom() || b->is_bottom()) return a->is_bottom() && b->is_bottom() && a->bottom == b->bottom;
        Env ea, eb;
        if (!alpha_term(a->head.get(), b->head.get(), ea, eb)) return false;
        a = a->tail.get();
        b = b->tail.get();
    }
}

bool alpha_term(const Term* a, const Term* b, Env& ea, Env& eb) {
    if (a->kind != b->kind || a->size != b->size) return false;
    switch (a->kind) {
        case TermKind::Var: {
            long ia = lookup(ea, a->name), ib = lookup(eb, b->name);
            if (ia != ib) return false;
            return ia >= 0 || a->name == b->name;
        }
        case TermKind::Lam: {
            ea.push_back(&a->name);
            eb.push_back(&b->name);
            bool r = alpha_term(a->left.get(), b->left.get(), ea, eb);
            ea.pop_back();
            eb.pop_back();
            return r;
        }
        case TermKind::App:
            return alpha_term(a->left.get(), b->left.get(), ea, eb) &&
                   alpha_term(a->right.get(), b->right.get(), ea, eb);
        case TermKind::CallCC: return true;
        case TermKind::Instr: return a->name == b->name;
        case TermKind::Cont: return alpha_stack(a->saved.get(), b->saved.get());
    }
    return false;
}

void canon_term(const Term* t, Env& env, std::string& out);

void canon_stack(const Stack* s, std::string& out) {
    while (!s->is_bottom()) {
        Env env;
        canon_term(s->head.get(), env, out);
        out += " . ";
        s = s->tail.get();
    }
    out += "w[" + s->bottom + "]";
}

void canon_term(const Term* t, Env& env, std::string& out) {
    switch (t->kind) {
        case TermKind::Var: {
            long i = lookup(env, t->name);
            if (i >= 0)
                out += "%" + std::to_string(i);
            else
                out += t->name;
            return;
        }
        case TermKind::Lam:
            out += "\\.";
            env.push_back(&t->name);
            canon_term(t->left.get(), env, out);
            env.pop_back();
            return;
        case TermKind::App:
            out += "(";
            canon_term(t->left.get(), env, out);
            out += " ";
            canon_term(t->right.get(), env, out);
            out += ")";
            return;
        case TermKind::CallCC: out += "cc"; return;
        case TermKind::Instr: out += "@" + t->name; return;
        case TermKind::Cont:
            out += "k[";
            canon_stack(t->saved.get(), out);
            out += "]";
            return;
    }
}

}  // namespace

bool alpha_eq(const TermPtr& t, const TermPtr& s) {
    if (t == s) return true;
    Env ea, eb;
    return alpha_term(t.get(), s.get(), ea, eb);
}

bool alpha_eq(const StackPtr& a, const StackPtr& b) { return alpha_stack(a.get(), b.get()); }

bool alpha_eq(const Process& a, const Process& b) {
    return alpha_eq(a.head, b.head) && alpha_eq(a.stack, b.stack);
}

std::string canonical(const TermPtr& t) {
    std::string out;
    Env env;
    canon_term(t.get(), env, out);
    return out;
}

std::string canonical(const StackPtr& s) {
    std::string out;
    canon_stack(s.get(), out);
    return out;
}

std::string canonical(const Process& p) { return canonical(p.head) + " * " + canonical(p.stack); }

TermPtr church(unsigned n) {
    static std::mutex mu;
    static std::vector<TermPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.empty()) {
        cache.push_back(lam("u", lam("v", var("v"))));
        cache.push_back(lam("u", lam("v", app(var("u"), var("v")))));
    }
    while (cache.size() <= n) {
        TermPtr prev = cache.back();
        cache.push_back(lam("u", lam("v", app(app(prev, var("u")), app(var("u"), var("v"))))));
    }
    return cache[n];
}

TermPtr identity() {
    static const TermPtr i = lam("u", var("u"));
    return i;
}

std::optional<unsigned> church_index(const TermPtr& t) {
    if (t->kind != TermKind::Lam || t->left->kind != TermKind::Lam || !t->free.empty()) return std::nullopt;
    const std::string& u = t->name;
    const std::string& v = t->left->name;
    if (u == v) return std::nullopt;
    const Term* body = t->left->left.get();
    auto is_var = [](const Term* x, const std::string& n) { return x->kind == TermKind::Var && x->name == n; };
    if (is_var(body, v)) return 0u;
    if (body->kind != TermKind::App) return std::nullopt;
    const Term* f = body->left.get();
    const Term* a = body->right.get();
    if (is_var(f, u) && is_var(a, v)) return 1u;
    if (f->kind != TermKind::App || a->kind != TermKind::App) return std::nullopt;
    if (!is_var(f->right.get(), u) || !is_var(a->left.get(), u) || !is_var(a->right.get(), v)) return std::nullopt;
    if (!f->left->free.empty()) return std::nullopt;
    auto inner = church_index(f->left);
    if (!inner || *inner == 0) return std::nullopt;
    return *inner + 1;
}

namespace {

// Exact structural match with church(n), used to abbreviate as #n.
std::optional<unsigned> exact_numeral(const Term* t) {
    if (t->kind != TermKind::Lam || t->name != "u" || t->left->kind != TermKind::Lam || t->left->name != "v")
        return std::nullopt;
    const Term* body = t->left->left.get();
    auto is_var = [](const Term* x, const char* n) { return x->kind == TermKind::Var && x->name == n; };
    if (is_var(body, "v")) return 0u;
    if (body->kind != TermKind::App) return std::nullopt;
    const Term* f = body->left.get();
    const Term* a = body->right.get();
    if (is_var(f, "u") && is_var(a, "v")) return 1u;
    if (f->kind != TermKind::App || a->kind != TermKind::App) return std::nullopt;
    if (!is_var(f->right.get(), "u") || !is_var(a->left.get(), "u") || !is_var(a->right.get(), "v"))
        return std::nullopt;
    auto inner = exact_numeral(f->left.get());
    if (!inner || *inner == 0) return std::nullopt;
    return *inner + 1;
}

void print_term(const Term* t, std::string& out);

void print_stack(const Stack* s, std::string& out) {
    while (!s->is_bottom()) {
        const Term* h = s->head.get();
        bool paren = h->kind == TermKind::Lam && !exact_numeral(h);
        if (paren) out += "(";
        print_term(h, out);
        if (paren) out += ")";
        out += " . ";
        s = s->tail.get();
    }
    out += "w[" + s->bottom + "]";
}

void print_term(const Term* t, std::string& out) {
    if (auto n = exact_numeral(t)) {
        out += "#" + std::to_string(*n);
        return;
    }
    switch (t->kind) {
        case TermKind::Var: out += t->name; return;
        case TermKind::CallCC: out += "cc"; return;
        case TermKind::Instr: out += "@" + t->name; return;
        case TermKind::Cont:
            out += "k[";
            print_stack(t->saved.get(), out);
            out += "]";
            return;
        case TermKind::Lam:
            out += "\\" + t->name + ".";
            print_term(t->left.get(), out);
            return;
        case TermKind::App: {
            const Term* f = t->left.get();
            const Term* a = t->right.get();
            bool pf = f->kind == TermKind::Lam && !exact_numeral(f);
            bool pa = (a->kind == TermKind::App || a->kind == TermKind::Lam) && !exact_numeral(a);
            if (pf) out += "(";
            print_term(f, out);
            if (pf) out += ")";
            out += " ";
            if (pa) out += "(";
            print_term(a, out);
            if (pa) out += ")";
            return;
        }
    }
}

}  // namespace

std::string print(const TermPtr& t) {
    std::string out;
    print_term(t.get(), out);
    return out;
}

std::string print(const StackPtr& s) {
    std::string out;
    print_stack(s.get(), out);
    return out;
}

std::string print(const Process& p) { return print(p.head) + " * " + print(p.stack); }

bool at_term_start(Cursor& c) {
    char ch = c.peek();
    if (ch == '\\' || ch == '(' || ch == '@' || ch == '#') return true;
    if (!Cursor::ident_start(ch)) return false;
    // an identifier glued to '[' is a bottom or continuation, only k[ starts a term
    std::size_t i = 0;
    while (Cursor::ident_char(c.peek_raw(i))) ++i;
    if (c.peek_raw(i) == '[') return i == 1 && c.peek_raw(0) == 'k';
    return true;
}

namespace {

TermPtr parse_atom(Cursor& c, const InstructionRegistry& reg) {
    if (c.accept("\\")) {
        std::string binder = c.ident();
        if (binder == "cc") c.fail("'cc' cannot be bound");
        c.expect(".");
        return lam(binder, parse_term_at(c, reg));
    }
    if (c.accept("(")) {
        TermPtr t = parse_term_at(c, reg);
        c.expect(")");
        return t;
    }
    if (c.accept("@")) {
        std::size_t at = c.pos();
        std::string sym = c.ident();
        if (!reg.known(sym)) throw SyntaxError("unknown instruction '@" + sym + "'", at);
        return instr(sym);
    }
    if (c.accept("#")) return church(static_cast<unsigned>(c.nat()));
    if (c.starts_with("k[")) {
        c.expect("k[");
        StackPtr s = parse_stack_at(c, reg);
        c.expect("]");
        return cont(s);
    }
    std::string id = c.ident();
    if (id == "cc") return callcc();
    return var(id);
}

}  // namespace

TermPtr parse_term_at(Cursor& c, const InstructionRegistry& reg) {
    if (!at_term_start(c)) c.fail("expected term");
    TermPtr t = parse_atom(c, reg);
    while (at_term_start(c)) t = app(t, parse_atom(c, reg));
    return t;
}

StackPtr parse_stack_at(Cursor& c, const InstructionRegistry& reg) {
    std::vector<TermPtr> heads;
    while (!c.starts_with("w[")) {
        heads.push_back(parse_term_at(c, reg));
        c.expect(".");
    }
    c.expect("w[");
    std::string sym = c.at_nat() ? std::to_string(c.nat()) : c.ident();
    c.expect("]");
    StackPtr s = bottom(sym);
    for (auto it = heads.rbegin(); it != heads.rend(); ++it) s = push_unchecked(*it, s);
    return s;
}

TermPtr parse_term(const std::string& text, const InstructionRegistry& reg) {
    Cursor c(text);
    TermPtr t = parse_term_at(c, reg);
    if (!c.at_end()) c.fail("trailing input");
    return t;
}

StackPtr parse_stack(const std::string& text, const InstructionRegistry& reg) {
    Cursor c(text);
    StackPtr s = parse_stack_at(c, reg);
    if (!c.at_end()) c.fail("trailing input");
    return s;
}

Process parse_process(const std::string& text, const InstructionRegistry& reg) {
    Cursor c(text);
    TermPtr t = parse_term_at(c, reg);
    c.expect("*");
    StackPtr s = parse_stack_at(c, reg);
    if (!c.at_end()) c.fail("trailing input");
    return Process{t, s};
}

void collect_bottoms(const StackPtr& s, std::set<std::string>& out) {
    for (const Stack* p = s.get();; p = p->tail.get()) {
        if (p->is_bottom()) {
            out.insert(p->bottom);
            return;
        }
        collect_bottoms(p->head, out);
    }
}

void collect_bottoms(const TermPtr& t, std::set<std::string>& out) {
    switch (t->kind) {
        case TermKind::Lam: collect_bottoms(t->left, out); return;
        case TermKind::App:
            collect_bottoms(t->left, out);
            collect_bottoms(t->right, out);
            return;
        case TermKind::Cont: collect_bottoms(t->saved, out); return;
        default: return;
    }
}

void collect_instructions(const StackPtr& s, std::set<std::string>& out) {
    for (const Stack* p = s.get(); !p->is_bottom(); p = p->tail.get()) collect_instructions(p->head, out);
}

void collect_instructions(const TermPtr& t, std::set<std::string>& out) {
    switch (t->kind) {
        case TermKind::Instr: out.insert(t->name); return;
        case TermKind::Lam: collect_instructions(t->left, out); return;
        case TermKind::App:
            collect_instructions(t->left, out);
            collect_instructions(t->right, out);
            return;
        case TermKind::Cont: collect_instructions(t->saved, out); return;
        default: return;
    }
}

std::size_t process_size(const Process& p) { return p.head->size + p.stack->size; }

}  // namespace krivine

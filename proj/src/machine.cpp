#include "krivine/machine.hpp"

#include <algorithm>

namespace krivine {

std::string rule_name(StepRule r) {
    switch (r) {
        case StepRule::push: return "push";
        case StepRule::grab: return "grab";
        case StepRule::save: return "save";
        case StepRule::restore: return "restore";
        case StepRule::quote: return "quote";
        case StepRule::chi: return "chi";
        case StepRule::none: return "none";
    }
    return "none";
}

QuoteTable& QuoteTable::global() {
    static QuoteTable table;
    return table;
}

void QuoteTable::seed(std::vector<TermPtr> terms) {
    std::vector<std::pair<std::size_t, std::string>> keys;
    keys.reserve(terms.size());
    for (const auto& t : terms) keys.emplace_back(t->size, canonical(t));
    std::sort(keys.begin(), keys.end());
    std::lock_guard<std::mutex> lock(mu_);
    for (auto& k : keys)
        if (codes_.emplace(k.second, next_).second) ++next_;
}

unsigned QuoteTable::code(const TermPtr& t) {
    std::string key = canonical(t);
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, fresh] = codes_.emplace(key, next_);
    if (fresh) ++next_;
    return it->second;
}

std::optional<unsigned> QuoteTable::lookup(const TermPtr& t) const {
    std::string key = canonical(t);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = codes_.find(key);
    if (it == codes_.end()) return std::nullopt;
    return it->second;
}

std::size_t QuoteTable::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return codes_.size();
}

std::optional<std::pair<Process, StepRule>> step(const Process& p, const Hooks& hooks) {
    const Term& t = *p.head;
    const Stack& s = *p.stack;
    switch (t.kind) {
        case TermKind::App:
            return std::pair{Process{t.left, push_unchecked(t.right, p.stack)}, StepRule::push};
        case TermKind::Lam:
            if (s.is_bottom()) return std::nullopt;
            return std::pair{Process{substitute(t.left, t.name, s.head), s.tail}, StepRule::grab};
        case TermKind::CallCC:
            if (s.is_bottom()) return std::nullopt;
            return std::pair{Process{s.head, push_unchecked(cont(s.tail), s.tail)}, StepRule::save};
        case TermKind::Cont:
            if (s.is_bottom()) return std::nullopt;
            return std::pair{Process{s.head, t.saved}, StepRule::restore};
        case TermKind::Instr:
            if (t.name == "q" && hooks.quote) {
                if (s.is_bottom() || s.tail->is_bottom()) return std::nullopt;
                QuoteTable& table = hooks.quote_table ? *hooks.quote_table : QuoteTable::global();
                const TermPtr& quoted = s.tail->head;
                if (!quoted->free.empty()) return std::nullopt;
                return std::pair{Process{s.head, push_unchecked(church(table.code(quoted)), s.tail->tail)},
                                 StepRule::quote};
            }
            if (t.name == "chi" && hooks.chi) {
                auto items = stack_items(p.stack);
                if (items.size() < 5) return std::nullopt;
                auto a = church_index(items[0]);
                auto b = church_index(items[1]);
                if (!a || !b) return std::nullopt;
                StackPtr rest = p.stack;
                for (int i = 0; i < 5; ++i) rest = rest->tail;
                const TermPtr& chosen = *a < *b ? items[2] : (*a == *b ? items[3] : items[4]);
                return std::pair{Process{chosen, rest}, StepRule::chi};
            }
            return std::nullopt;
        case TermKind::Var: return std::nullopt;
    }
    return std::nullopt;
}

Trace run(const Process& p, std::size_t budget, const Hooks& hooks, bool record) {
    Trace tr;
    tr.states.push_back(p);
    Process cur = p;
    while (true) {
        auto next = step(cur, hooks);
        if (!next) {
            tr.terminal = Trace::Terminal::normal_form;
            break;
        }
        if (tr.steps == budget) {
            tr.terminal = Trace::Terminal::budget_exhausted;
            break;
        }
        ++tr.steps;
        cur = std::move(next->first);
        if (record) {
            tr.states.push_back(cur);
            tr.rules.push_back(next->second);
        }
    }
    if (!record && tr.steps > 0) tr.states.push_back(cur);
    return tr;
}

bool passes_through(const Process& p, const Process& target, std::size_t budget, const Hooks& hooks) {
    Process cur = p;
    for (std::size_t i = 0;; ++i) {
        if (alpha_eq(cur, target)) return true;
        if (i == budget) return false;
        auto next = step(cur, hooks);
        if (!next) return false;
        cur = std::move(next->first);
    }
}

TermPtr marker(const std::string& symbol) {
    InstructionRegistry::global().declare(symbol);
    return instr(symbol);
}

namespace {

// Normal form, feeding fresh markers while a lambda waits on an empty stack.
std::optional<Process> observe(Process p) {
    for (int fed = 0;; ++fed) {
        Trace tr = run(p, 10000, {}, false);
        if (tr.exhausted()) return std::nullopt;
        Process q = tr.last();
        if (q.head->kind != TermKind::Lam || !q.stack->is_bottom() || fed == 4) return q;
        p = Process{q.head, push(marker("obs" + std::to_string(fed)), q.stack)};
    }
}

}  // namespace

bool beta_step_check(unsigned n) {
    TermPtr succ = lam({"n", "u", "v"}, app(app(var("n"), var("u")), app(var("u"), var("v"))));
    TermPtr lhs = app(succ, church(n));
    TermPtr rhs = church(n + 1);
    std::vector<TermPtr> pool{identity(), marker("sa"), marker("sb")};
    std::vector<StackPtr> stacks{bottom("p0")};
    for (std::size_t lo = 0, depth = 0; depth < 3; ++depth) {
        std::size_t hi = stacks.size();
        for (std::size_t i = lo; i < hi; ++i)
            for (const auto& t : pool) stacks.push_back(push(t, stacks[i]));
        lo = hi;
    }
    for (const auto& s : stacks) {
        auto a = observe(Process{lhs, s});
        auto b = observe(Process{rhs, s});
        if (!a || !b || !alpha_eq(*a, *b)) return false;
    }
    return true;
}

}  // namespace krivine

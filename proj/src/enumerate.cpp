#include "krivine/enumerate.hpp"

namespace krivine {

Enumerator::Enumerator(std::vector<TermPtr> constants, std::vector<std::string> bottoms, bool continuations)
    : constants_(std::move(constants)), bottoms_(std::move(bottoms)), continuations_(continuations) {}

const std::vector<TermPtr>& Enumerator::terms(std::size_t size, std::size_t scope) {
    auto key = std::make_pair(size, scope);
    if (auto it = terms_.find(key); it != terms_.end()) return it->second;
    std::vector<TermPtr> out;
    if (size == 1) {
        for (std::size_t i = 0; i < scope; ++i) out.push_back(var("x" + std::to_string(i)));
        out.insert(out.end(), constants_.begin(), constants_.end());
    } else if (size >= 2) {
        for (const auto& body : terms(size - 1, scope + 1)) out.push_back(lam("x" + std::to_string(scope), body));
        for (std::size_t a = 1; a + 1 < size; ++a) {
            const auto& fs = terms(a, scope);
            const auto& as = terms(size - 1 - a, scope);
            for (const auto& f : fs)
                for (const auto& x : as) out.push_back(app(f, x));
        }
        if (continuations_)
            for (const auto& s : stacks(size - 1)) out.push_back(cont(s));
    }
    return terms_.emplace(key, std::move(out)).first->second;
}

const std::vector<StackPtr>& Enumerator::stacks(std::size_t size) {
    if (auto it = stacks_.find(size); it != stacks_.end()) return it->second;
    std::vector<StackPtr> out;
    if (size == 1) {
        for (const auto& b : bottoms_) out.push_back(bottom(b));
    } else if (size >= 2) {
        for (std::size_t a = 1; a < size; ++a) {
            const auto& hs = terms(a, 0);
            const auto& ts = stacks(size - a);
            for (const auto& h : hs)
                for (const auto& t : ts) out.push_back(push(h, t));
        }
    }
    return stacks_.emplace(size, std::move(out)).first->second;
}

std::vector<TermPtr> Enumerator::closed_upto(std::size_t max_size) {
    std::vector<TermPtr> out;
    for (std::size_t n = 1; n <= max_size; ++n) {
        const auto& v = terms(n, 0);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::vector<StackPtr> Enumerator::stacks_upto(std::size_t max_size) {
    std::vector<StackPtr> out;
    for (std::size_t n = 1; n <= max_size; ++n) {
        const auto& v = stacks(n);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::vector<Process> Enumerator::processes(std::size_t size) {
    std::vector<Process> out;
    for (std::size_t a = 1; a < size; ++a) {
        const auto& hs = terms(a, 0);
        const auto& ss = stacks(size - a);
        for (const auto& h : hs)
            for (const auto& s : ss) out.push_back(Process{h, s});
    }
    return out;
}

std::vector<Process> Enumerator::processes_upto(std::size_t max_size) {
    std::vector<Process> out;
    for (std::size_t n = 2; n <= max_size; ++n) {
        auto v = processes(n);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::size_t Enumerator::term_size(const TermPtr& t) const {
    for (const auto& c : constants_)
        if (c == t || alpha_eq(c, t)) return 1;
    switch (t->kind) {
        case TermKind::Lam: return 1 + term_size(t->left);
        case TermKind::App: return 1 + term_size(t->left) + term_size(t->right);
        case TermKind::Cont: return 1 + stack_size(t->saved);
        default: return 1;
    }
}

std::size_t Enumerator::stack_size(const StackPtr& s) const {
    if (s->is_bottom()) return 1;
    return term_size(s->head) + stack_size(s->tail);
}

std::vector<StackPtr> stacks_over(const std::vector<TermPtr>& pool, const std::vector<std::string>& bottoms,
                                  std::size_t max_depth) {
    std::vector<StackPtr> out;
    for (const auto& b : bottoms) out.push_back(bottom(b));
    std::size_t lo = 0;
    for (std::size_t d = 0; d < max_depth; ++d) {
        std::size_t hi = out.size();
        for (std::size_t i = lo; i < hi; ++i)
            for (const auto& t : pool) out.push_back(push(t, out[i]));
        lo = hi;
    }
    return out;
}

}  // namespace krivine

#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "krivine/term.hpp"

namespace krivine {

enum class StepRule { push, grab, save, restore, quote, chi, none };

std::string rule_name(StepRule r);

// Code table for the quote instruction. Codes are handed out to
// alpha-classes of closed terms; seeded batches in size-then-lex order.
class QuoteTable {
public:
    void seed(std::vector<TermPtr> terms);
    unsigned code(const TermPtr& t);
    std::optional<unsigned> lookup(const TermPtr& t) const;
    std::size_t size() const;

    static QuoteTable& global();

private:
    mutable std::mutex mu_;
    std::unordered_map<std::string, unsigned> codes_;
    unsigned next_ = 0;
};

struct Hooks {
    bool quote = false;
    bool chi = false;
    QuoteTable* quote_table = nullptr;  // global table when null

    static Hooks none() { return {}; }
    static Hooks all() { return {true, true, nullptr}; }
};

struct Trace {
    enum class Terminal { normal_form, budget_exhausted };
    std::vector<Process> states;
    std::vector<StepRule> rules;
    Terminal terminal = Terminal::normal_form;
    std::size_t steps = 0;

    const Process& last() const { return states.back(); }
    bool exhausted() const { return terminal == Terminal::budget_exhausted; }
};

std::optional<std::pair<Process, StepRule>> step(const Process& p, const Hooks& hooks = {});

// With record == false only the first and last states are kept.
Trace run(const Process& p, std::size_t budget, const Hooks& hooks = {}, bool record = true);

// True when some state of run(p) is alpha-equal to target, within budget.
bool passes_through(const Process& p, const Process& target, std::size_t budget, const Hooks& hooks = {});

// Successor combinator \n.\u.\v.(n u)(u v) applied to church(n) observed against church(n+1).
bool beta_step_check(unsigned n);

// Registers (if needed) and returns an inert instruction used as an opaque marker.
TermPtr marker(const std::string& symbol);

}  // namespace krivine

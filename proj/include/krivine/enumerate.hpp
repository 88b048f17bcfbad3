#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "krivine/term.hpp"

namespace krivine {

// Exhaustive generator of terms, stacks and processes by size.
// Constants count as leaves of size 1; binders are named x0, x1, ... by depth.
// Continuations k[s] are generated when enabled, with size 1 + |s|.
class Enumerator {
public:
    Enumerator(std::vector<TermPtr> constants, std::vector<std::string> bottoms, bool continuations);

    // Terms of exactly this size whose free variables are among x0..x{scope-1}.
    const std::vector<TermPtr>& terms(std::size_t size, std::size_t scope = 0);
    const std::vector<StackPtr>& stacks(std::size_t size);
    std::vector<TermPtr> closed_upto(std::size_t max_size);
    std::vector<StackPtr> stacks_upto(std::size_t max_size);
    std::vector<Process> processes(std::size_t size);
    std::vector<Process> processes_upto(std::size_t max_size);

    // Sizes as counted here, which differ from Term::size for constants.
    std::size_t term_size(const TermPtr& t) const;
    std::size_t stack_size(const StackPtr& s) const;

private:
    std::vector<TermPtr> constants_;
    std::vector<std::string> bottoms_;
    bool continuations_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<TermPtr>> terms_;
    std::map<std::size_t, std::vector<StackPtr>> stacks_;
};

// Stacks of depth <= max_depth over a pool of closed terms, for each bottom.
std::vector<StackPtr> stacks_over(const std::vector<TermPtr>& pool, const std::vector<std::string>& bottoms,
                                  std::size_t max_depth);

}  // namespace krivine

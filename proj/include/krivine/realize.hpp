#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "krivine/algebra.hpp"
#include "krivine/names.hpp"

namespace krivine {

enum class Tri { yes, no, unknown };

std::string to_string(Tri t);

struct Verdict {
    enum class Kind { certified, refuted, passed_bounded, unknown } kind = Kind::unknown;
    StackPtr witness;         // refuted: a stack of ||phi|| escaping the pole
    std::size_t checked = 0;  // falsity stacks examined (generic mode)
    std::size_t universe = 0; // names quantified over by ForallU

    bool refuted() const { return kind == Kind::refuted; }
    bool ok() const { return kind == Kind::certified || kind == Kind::passed_bounded; }
};

std::string to_string(Verdict::Kind k);

struct EngineOptions {
    std::size_t depth = 2;        // push depth of sampled stacks
    std::size_t sample_cap = 64;  // per formula node
};

// ||phi|| is empty for every algebra (e.g. top, or phi -> top).
bool surely_empty(const FormulaPtr& f);
bool surely_empty(const StackSetPtr& s);

// pi in ||phi||. Forcing mode decides exactly; elsewhere, realization premises are
// decided only for certified realizers and otherwise answer unknown.
Tri falsity_contains(const Algebra& alg, const FormulaPtr& f, const StackPtr& pi);
Tri stackset_contains(const Algebra& alg, const StackSetPtr& s, const StackPtr& pi);

// Terms known to realize phi in this algebra, without consulting the pole.
std::vector<TermPtr> realizers_of(const Algebra& alg, const FormulaPtr& f, const EngineOptions& opt = {});

// Finite subset of ||phi||; each stack is provably a member.
std::vector<StackPtr> falsity_sample(const Algebra& alg, const FormulaPtr& f, const EngineOptions& opt = {});
std::vector<StackPtr> stackset_sample(const Algebra& alg, const StackSetPtr& s, const EngineOptions& opt = {});

// Forcing mode: certified or refuted exactly. Generic mode: refuted when a sampled
// falsity stack leaves the pole, unknown when a pole decision ran out of budget,
// certified when ||phi|| is provably empty, otherwise passed_bounded.
Verdict realizes(const Algebra& alg, const TermPtr& t, const FormulaPtr& f, const EngineOptions& opt = {});

std::size_t universe_size(const FormulaPtr& f);

}  // namespace krivine

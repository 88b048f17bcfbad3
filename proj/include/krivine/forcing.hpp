#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "krivine/algebra.hpp"
#include "krivine/names.hpp"

namespace krivine {

// Element of a powerset Boolean algebra over at most 16 atoms, as a bit mask.
using BElem = std::uint32_t;

class BoolCtx {
public:
    explicit BoolCtx(unsigned atoms);

    unsigned atoms() const { return atoms_; }
    BElem one() const { return full_; }
    BElem neg(BElem x) const { return full_ & ~x; }
    bool leq(BElem x, BElem y) const { return (x & ~y) == 0; }
    std::vector<BElem> elements() const;

    // Bottom symbols: "0", "1", "p<i>" for a single atom, "m<mask>" otherwise.
    std::string symbol(BElem x) const;
    std::optional<BElem> parse_symbol(const std::string& s) const;
    // Set notation, e.g. {a0,a2}.
    std::string show(BElem x) const;

private:
    unsigned atoms_;
    BElem full_;
};

BElem tau(const BoolCtx& ctx, const TermPtr& t);
BElem tau(const BoolCtx& ctx, const StackPtr& s);
BElem tau(const BoolCtx& ctx, const Process& p);

class ForcingAlgebra : public Algebra {
public:
    explicit ForcingAlgebra(unsigned atoms) : ctx_(atoms) {}

    const BoolCtx& ctx() const { return ctx_; }
    std::string name() const override { return "forcing(" + std::to_string(ctx_.atoms()) + ")"; }
    PoleVerdict pole_contains(const Process& p) const override;
    std::vector<std::string> bottoms() const override;
    std::vector<TermPtr> universal_realizers() const override;
    const ForcingAlgebra* as_forcing() const override { return this; }

    // t * pi > s * sigma iff tau(t * pi) <= tau(s * sigma).
    bool order_leq(const Process& p, const Process& q) const;

    // Supremum of tau over a stack set and over a falsity value.
    BElem stackset_sup(const StackSetPtr& s) const;
    BElem falsity_sup(const FormulaPtr& f) const;
    bool realizes(const TermPtr& t, const FormulaPtr& f) const;
    // A stack of ||f|| whose tau contains the given atom, or null when none exists.
    StackPtr falsity_witness(const FormulaPtr& f, unsigned atom) const;
    StackPtr stackset_witness(const StackSetPtr& s, unsigned atom) const;
    // k[w[m]]: a term of tau m realizing every formula whose falsity sup is disjoint from m.
    TermPtr tau_term(BElem m) const;

private:
    BoolCtx ctx_;
};

struct BooleanName;
using BNamePtr = std::shared_ptr<const BooleanName>;

// Name of the Boolean-valued model: a finite map child -> value, interned by structure.
struct BooleanName {
    std::vector<std::pair<BNamePtr, BElem>> graph;  // sorted by child id, children distinct
    std::size_t id = 0;
    std::size_t rank = 0;
    std::string key;
};

// Values of repeated children are joined.
BNamePtr make_bname(std::vector<std::pair<BNamePtr, BElem>> graph);
std::string print(const BoolCtx& ctx, const BNamePtr& b);

BNamePtr tau_name(const ForcingAlgebra& alg, const NamePtr& a);
NamePtr sigma_name(const BoolCtx& ctx, const BNamePtr& b);

// Fml_in over Boolean names.
struct BFormula;
using BFormulaPtr = std::shared_ptr<const BFormula>;

struct BNameRef {
    BNamePtr name;
    std::string var;
    bool is_var() const { return !name; }
};

struct BFormula {
    enum class Kind { Top, Bot, NotIn, Sub, Impl, Forall } kind = Kind::Top;
    BNameRef a, b;
    BFormulaPtr left, right;
    std::string var;
    std::vector<BNamePtr> universe;
};

BFormulaPtr bf_top();
BFormulaPtr bf_bot();
BFormulaPtr bf_notin(BNameRef a, BNameRef b);
BFormulaPtr bf_sub(BNameRef a, BNameRef b);
BFormulaPtr bf_impl(BFormulaPtr l, BFormulaPtr r);
BFormulaPtr bf_forall(std::string var, std::vector<BNamePtr> universe, BFormulaPtr body);
BFormulaPtr bf_eq(const BNamePtr& a, const BNamePtr& b);  // a sub b and b sub a, as a conjunction
BNameRef bref(BNamePtr b);

BElem bool_in(const BoolCtx& ctx, const BNamePtr& a, const BNamePtr& b);
BElem bool_sub(const BoolCtx& ctx, const BNamePtr& a, const BNamePtr& b);
BElem bool_eq(const BoolCtx& ctx, const BNamePtr& a, const BNamePtr& b);
// Throws std::invalid_argument on a free variable.
BElem bool_truth(const BoolCtx& ctx, const BFormulaPtr& f);

// Image of a Fml_in formula under tau; throws std::invalid_argument outside Fml_in.
BFormulaPtr translate(const ForcingAlgebra& alg, const FormulaPtr& f);

struct EquivalenceResult {
    bool realizes = false;      // t ||- phi in the forcing algebra
    bool boolean_side = false;  // tau(t) <= [[tau phi]]
    std::size_t universe = 0;   // names quantified over
    bool agree() const { return realizes == boolean_side; }
};

EquivalenceResult equivalence_check(const ForcingAlgebra& alg, const TermPtr& t, const FormulaPtr& f);

}  // namespace krivine

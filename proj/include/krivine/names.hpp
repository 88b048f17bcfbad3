#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krivine/term.hpp"

namespace krivine {

struct Name;
struct StackSet;
struct Formula;
struct Lift;
using NamePtr = std::shared_ptr<const Name>;
using StackSetPtr = std::shared_ptr<const StackSet>;
using FormulaPtr = std::shared_ptr<const Formula>;
using LiftPtr = std::shared_ptr<const Lift>;

// Hereditarily finite set, kept sorted and duplicate free.
struct HF {
    std::vector<HF> elems;

    std::string key() const;
    bool operator<(const HF& o) const { return key() < o.key(); }
    bool operator==(const HF& o) const { return key() == o.key(); }
};

HF hf_set(std::vector<HF> elems);
HF hf_nat(unsigned n);  // von Neumann numeral
HF hf_pair(const HF& a, const HF& b);  // Kuratowski pair, for lift2 domains
std::optional<unsigned> hf_as_nat(const HF& h);
std::string print(const HF& h);

enum class StackSetKind { All, Prefix, Explicit, Guarded, Union, Component };

// Symbolic description of a set of stacks.
struct StackSet {
    StackSetKind kind = StackSetKind::All;
    std::vector<TermPtr> prefix;       // Prefix
    StackSetPtr tail;                  // Prefix, Guarded
    std::vector<StackPtr> stacks;      // Explicit
    FormulaPtr guard;                  // Guarded
    std::vector<StackSetPtr> parts;    // Union
    int component = 0;                 // Component: stacks whose bottoms are all p<component>
    std::string key;
};

StackSetPtr ss_all();
StackSetPtr ss_prefix(std::vector<TermPtr> prefix, StackSetPtr tail);
StackSetPtr ss_explicit(std::vector<StackPtr> stacks);
StackSetPtr ss_guarded(FormulaPtr guard, StackSetPtr tail);
StackSetPtr ss_union(std::vector<StackSetPtr> parts);
StackSetPtr ss_component(int i);
std::string print(const StackSetPtr& s);

// A name: finite set of (Name, StackSet) pairs. Names are interned, so
// structural equality is id equality. Labels are display hints kept per id.
struct Name {
    std::vector<std::pair<NamePtr, StackSetPtr>> entries;  // sorted by (child id, stackset key)
    std::size_t id = 0;
    std::size_t rank = 0;
    std::string key;
};

NamePtr make_name(std::vector<std::pair<NamePtr, StackSetPtr>> entries, std::string label = "");
std::vector<NamePtr> dom(const NamePtr& a);
std::size_t rank(const NamePtr& a);
bool same_name(const NamePtr& a, const NamePtr& b);
std::string print(const NamePtr& a);

NamePtr empty_name();
NamePtr reish(const HF& h);
NamePtr reish_nat(unsigned n);
NamePtr sng(const NamePtr& a);
NamePtr up(const NamePtr& a, const NamePtr& b);
NamePtr op(const NamePtr& a, const NamePtr& b);
NamePtr intcup(const NamePtr& a, const NamePtr& b);
NamePtr cart(const HF& a, const HF& b);
// hat(alpha) = {(hat(beta), nu_beta . Pi) | beta < alpha} with nu_n = church(n).
NamePtr hat(unsigned alpha, unsigned kappa = 1000);
NamePtr pairing_name(const NamePtr& a, const NamePtr& b);
NamePtr union_name(const NamePtr& a);
// Forcing mode only: entries (x, GUARD(phi(x)) ss).
NamePtr separation_name(const NamePtr& a, const std::string& var, const FormulaPtr& phi);
// Subsets of a's entries and of dom(a) x Pi, plus y_x for each given x (guarded, forcing mode).
NamePtr weak_power_name(const NamePtr& a, const std::vector<NamePtr>& xs = {});
NamePtr y_x_name(const NamePtr& a, const NamePtr& x);
NamePtr infinity_name(const NamePtr& a, unsigned n_max = 4);
NamePtr iterate_sng(const NamePtr& a, unsigned n);

// Ground-model function of one or two arguments, given by its graph.
struct Lift {
    std::string id;
    bool binary = false;
    std::vector<std::pair<std::vector<HF>, HF>> graph;  // arguments -> value
    HF domain0, domain1, codomain;
};

LiftPtr make_lift(std::string id, std::vector<std::pair<HF, HF>> graph, HF domain, HF codomain);
LiftPtr make_lift2(std::string id, std::vector<std::pair<std::pair<HF, HF>, HF>> graph, HF d0, HF d1, HF codomain);
NamePtr lift_name(const LiftPtr& f);
// f(c) when x is the reish name of some argument c (op(^x0,^x1) for binary lifts).
std::optional<HF> lift_apply(const LiftPtr& f, const NamePtr& x);

struct NameRef {
    NamePtr name;
    std::string var;

    bool is_var() const { return !name; }
};

NameRef nref(NamePtr n);
NameRef nvar(std::string v);

enum class FormulaKind {
    Top,
    Bot,
    NotEps,
    NotIn,
    Sub,
    Impl,
    ForallU,
    ForallR,
    ForallHat,
    NeqNE,
    Hook,
    AppliedLift
};

struct Formula {
    FormulaKind kind = FormulaKind::Top;
    NameRef a, b;                    // atoms, Hook, ForallR range (a), AppliedLift argument (a)
    FormulaPtr left, right;          // Impl; quantifier and Hook bodies in left
    std::string var;                 // bound variable
    std::vector<NamePtr> universe;   // ForallU
    unsigned alpha = 0;              // ForallHat
    LiftPtr lift;                    // AppliedLift
    std::string key;
};

FormulaPtr f_top();
FormulaPtr f_bot();
FormulaPtr f_noteps(NameRef a, NameRef b);
FormulaPtr f_notin(NameRef a, NameRef b);
FormulaPtr f_sub(NameRef a, NameRef b);
FormulaPtr f_impl(FormulaPtr l, FormulaPtr r);
FormulaPtr f_forall(std::string var, std::vector<NamePtr> universe, FormulaPtr body);
FormulaPtr f_forallr(std::string var, NameRef range, FormulaPtr body);
FormulaPtr f_forallhat(std::string var, unsigned alpha, FormulaPtr body);
FormulaPtr f_neq(NameRef a, NameRef b);
FormulaPtr f_hook(NameRef a, NameRef b, FormulaPtr body);
FormulaPtr f_applied_lift(LiftPtr f, NameRef x, std::string var, FormulaPtr body);

// Derived forms.
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr f, FormulaPtr g);
FormulaPtr f_or(FormulaPtr f, FormulaPtr g);
FormulaPtr f_eps(NameRef a, NameRef b);
FormulaPtr f_in(NameRef a, NameRef b);
FormulaPtr f_eq(NameRef a, NameRef b);
FormulaPtr f_sim(NameRef a, NameRef b);
FormulaPtr f_exists(std::string var, std::vector<NamePtr> universe, FormulaPtr body);

FormulaPtr subst(const FormulaPtr& f, const std::string& var, const NamePtr& n);
std::vector<std::string> free_name_vars(const FormulaPtr& f);
bool is_closed(const FormulaPtr& f);
// Fml_in fragment: top, bot, notin, sub, impl, forall over a universe.
bool in_fml_in(const FormulaPtr& f);
std::size_t formula_depth(const FormulaPtr& f);
std::string print(const FormulaPtr& f);

}  // namespace krivine

#pragma once

#include <map>
#include <string>
#include <vector>

#include "krivine/cursor.hpp"
#include "krivine/names.hpp"

namespace krivine {

// Declarations visible to the name, formula and claim parsers.
struct Env {
    std::map<std::string, NamePtr> names;
    std::map<std::string, LiftPtr> lifts;
    std::map<std::string, TermPtr> terms;  // closed terms substituted for matching free variables
    std::vector<NamePtr> universe;         // range of a bare forall / exists

    // Env with the standard term abbreviations (I, K, S, W, Y, TT, ...).
    static Env standard();
};

HF parse_hf(const std::string& text);
NamePtr parse_name(const std::string& text, const Env& env);
StackSetPtr parse_stackset(const std::string& text, const Env& env);
FormulaPtr parse_formula(const std::string& text, const Env& env);
// A term whose free variables named in env.terms are replaced by their definitions.
TermPtr parse_env_term(const std::string& text, const Env& env);

HF parse_hf_at(Cursor& c);
NameRef parse_name_ref_at(Cursor& c, const Env& env);
NamePtr parse_name_at(Cursor& c, const Env& env);
StackSetPtr parse_stackset_at(Cursor& c, const Env& env);
FormulaPtr parse_formula_at(Cursor& c, const Env& env);
TermPtr expand_terms(const TermPtr& t, const Env& env);

struct RealizesClaim {
    TermPtr term;
    FormulaPtr formula;
};

// "t ||- phi".
RealizesClaim parse_realizes(const std::string& text, const Env& env);

// Applies one declaration line ("name a = ...", "lift f = {...}", "lift2 g = {...}",
// "universe a, b, ...", "term T = ..."). Returns false when the line is not a declaration.
bool apply_declaration(const std::string& line, Env& env);

}  // namespace krivine

#include "krivine/syntax.hpp"

#include <set>

#include "krivine/four_valued.hpp"

namespace krivine {

Env Env::standard() {
    Env env;
    auto def = [&](const std::string& name, const std::string& text) { env.terms[name] = parse_term(text); };
    def("I", "\\x.x");
    def("K", "\\u.\\v.u");
    def("S", "\\u.\\v.\\w.(u w)(v w)");
    def("CL", "\\u.\\v.cc(\\k.(u k)(v k))");
    def("TT", "(\\u.\\v.(v (u u))(u u)) (\\u.\\v.(v (u u))(u u))");
    def("Y", "(\\u.\\v.v ((u u) v)) (\\u.\\v.v ((u u) v))");
    return env;
}

namespace {

bool call(Cursor& c, std::string_view kw) {
    std::size_t at = c.pos();
    if (c.accept_word(kw) && c.accept("(")) return true;
    c.set_pos(at);
    return false;
}

const std::set<std::string>& reserved() {
    static const std::set<std::string> words{"top", "bot",   "not", "and",  "or",  "forall", "exists", "forallr",
                                             "forallh", "hook", "in",  "eps",  "sub", "ne",     "nsim"};
    return words;
}

std::vector<NamePtr> name_list(Cursor& c, const Env& env, char close) {
    std::vector<NamePtr> out;
    if (c.peek() == close) return out;
    do out.push_back(parse_name_at(c, env));
    while (c.accept(","));
    return out;
}

}  // namespace

HF parse_hf_at(Cursor& c) {
    if (c.at_nat()) return hf_nat(static_cast<unsigned>(c.nat()));
    c.expect("{");
    std::vector<HF> elems;
    if (!c.accept("}")) {
        do elems.push_back(parse_hf_at(c));
        while (c.accept(","));
        c.expect("}");
    }
    return hf_set(std::move(elems));
}

NameRef parse_name_ref_at(Cursor& c, const Env& env) {
    if (c.at_ident()) {
        std::size_t at = c.pos();
        std::string id = c.ident();
        bool constructor = c.peek() == '(' || id == "gamma0" || id == "gamma1" || id == "empty";
        if (!constructor && !env.names.count(id)) {
            if (reserved().count(id)) throw SyntaxError("unexpected keyword '" + id + "'", at);
            return nvar(id);
        }
        c.set_pos(at);
    }
    return nref(parse_name_at(c, env));
}

NamePtr parse_name_at(Cursor& c, const Env& env) {
    if (c.accept("^")) return reish(parse_hf_at(c));
    if (c.accept("(")) {
        NamePtr n = parse_name_at(c, env);
        c.expect(")");
        return n;
    }
    if (c.accept("{")) {
        std::vector<std::pair<NamePtr, StackSetPtr>> entries;
        if (!c.accept("}")) {
            do {
                c.expect("(");
                NamePtr child = parse_name_at(c, env);
                c.expect(",");
                StackSetPtr ss = parse_stackset_at(c, env);
                c.expect(")");
                entries.emplace_back(child, ss);
            } while (c.accept(","));
            c.expect("}");
        }
        return make_name(std::move(entries));
    }
    auto close = [&](NamePtr n) {
        c.expect(")");
        return n;
    };
    auto two = [&](NamePtr (*f)(const NamePtr&, const NamePtr&)) {
        NamePtr a = parse_name_at(c, env);
        c.expect(",");
        NamePtr b = parse_name_at(c, env);
        return close(f(a, b));
    };
    if (call(c, "sng")) return close(sng(parse_name_at(c, env)));
    if (call(c, "up")) return two(up);
    if (call(c, "op")) return two(op);
    if (call(c, "cup")) return two(intcup);
    if (call(c, "pair")) return two(pairing_name);
    if (call(c, "y")) return two(y_x_name);
    if (call(c, "union")) return close(union_name(parse_name_at(c, env)));
    if (call(c, "hat")) return close(hat(static_cast<unsigned>(c.nat())));
    if (call(c, "cart")) {
        HF a = parse_hf_at(c);
        c.expect(",");
        return close(cart(a, parse_hf_at(c)));
    }
    if (call(c, "inf")) {
        NamePtr a = parse_name_at(c, env);
        unsigned n = 4;
        if (c.accept(",")) n = static_cast<unsigned>(c.nat());
        return close(infinity_name(a, n));
    }
    if (call(c, "wpow")) {
        NamePtr a = parse_name_at(c, env);
        std::vector<NamePtr> xs;
        while (c.accept(",")) xs.push_back(parse_name_at(c, env));
        return close(weak_power_name(a, xs));
    }
    if (call(c, "sep")) {
        NamePtr a = parse_name_at(c, env);
        c.expect(",");
        std::string v = c.ident();
        c.expect(".");
        return close(separation_name(a, v, parse_formula_at(c, env)));
    }
    if (call(c, "lift")) {
        std::size_t at = c.pos();
        std::string id = c.ident();
        auto it = env.lifts.find(id);
        if (it == env.lifts.end()) throw SyntaxError("unknown lift '" + id + "'", at);
        return close(lift_name(it->second));
    }
    std::size_t at = c.pos();
    std::string id = c.ident();
    if (id == "gamma0") return gamma0();
    if (id == "gamma1") return gamma1();
    if (id == "empty") return empty_name();
    auto it = env.names.find(id);
    if (it == env.names.end()) throw SyntaxError("unbound name '" + id + "'", at);
    return it->second;
}

StackSetPtr parse_stackset_at(Cursor& c, const Env& env) {
    if (c.accept_word("ALL")) return ss_all();
    if (c.accept_word("PI0")) return ss_component(0);
    if (c.accept_word("PI1")) return ss_component(1);
    if (c.accept("[")) {
        std::vector<TermPtr> prefix;
        do prefix.push_back(expand_terms(parse_term_at(c, InstructionRegistry::global()), env));
        while (c.accept(","));
        c.expect("]>");
        return ss_prefix(std::move(prefix), parse_stackset_at(c, env));
    }
    if (c.accept("{")) {
        std::vector<StackPtr> stacks;
        if (!c.accept("}")) {
            do stacks.push_back(parse_stack_at(c, InstructionRegistry::global()));
            while (c.accept(","));
            c.expect("}");
        }
        return ss_explicit(std::move(stacks));
    }
    if (c.accept("GUARD(")) {
        FormulaPtr f = parse_formula_at(c, env);
        c.expect(")");
        return ss_guarded(f, parse_stackset_at(c, env));
    }
    if (c.accept("U(")) {
        std::vector<StackSetPtr> parts;
        do parts.push_back(parse_stackset_at(c, env));
        while (c.accept(","));
        c.expect(")");
        return ss_union(std::move(parts));
    }
    c.fail("expected stack set");
}

namespace {

FormulaPtr parse_impl(Cursor& c, const Env& env);

FormulaPtr parse_atomic(Cursor& c, const Env& env) {
    NameRef a = parse_name_ref_at(c, env);
    auto rhs = [&] { return parse_name_ref_at(c, env); };
    if (c.accept("eps!")) return f_noteps(a, rhs());
    if (c.accept("in!")) return f_notin(a, rhs());
    if (c.accept_word("sub")) return f_sub(a, rhs());
    if (c.accept_word("nsim")) {
        NameRef b = rhs();
        return f_impl(f_sub(a, b), f_impl(f_sub(b, a), f_bot()));
    }
    if (c.accept_word("ne")) return f_neq(a, rhs());
    if (c.accept_word("eps")) return f_eps(a, rhs());
    if (c.accept_word("in")) return f_in(a, rhs());
    if (c.accept("=")) return f_eq(a, rhs());
    if (c.accept("~")) return f_sim(a, rhs());
    c.fail("expected relation (eps!, in!, sub, ne, eps, in, =, ~, nsim)");
}

std::vector<NamePtr> quantifier_range(Cursor& c, const Env& env) {
    if (c.accept_word("in")) {
        c.expect("{");
        auto names = name_list(c, env, '}');
        c.expect("}");
        return names;
    }
    return env.universe;
}

FormulaPtr parse_unary(Cursor& c, const Env& env) {
    if (c.accept_word("top")) return f_top();
    if (c.accept_word("bot")) return f_bot();
    if (c.accept_word("not")) return f_not(parse_unary(c, env));
    if (c.accept("(")) {
        FormulaPtr f = parse_impl(c, env);
        c.expect(")");
        return f;
    }
    if (c.accept_word("forall") || c.starts_with_word("exists")) {
        bool exists = c.accept_word("exists");
        std::string v = c.ident();
        auto range = quantifier_range(c, env);
        c.expect(".");
        FormulaPtr body = parse_impl(c, env);
        return exists ? f_exists(v, range, body) : f_forall(v, range, body);
    }
    if (c.accept_word("forallr")) {
        std::string v = c.ident();
        NameRef range = parse_name_ref_at(c, env);
        c.expect(".");
        return f_forallr(v, range, parse_impl(c, env));
    }
    if (c.accept_word("forallh")) {
        std::string v = c.ident();
        unsigned alpha = static_cast<unsigned>(c.nat());
        c.expect(".");
        return f_forallhat(v, alpha, parse_impl(c, env));
    }
    if (call(c, "hook")) {
        NameRef a = parse_name_ref_at(c, env);
        c.expect(",");
        NameRef b = parse_name_ref_at(c, env);
        c.expect(")");
        return f_hook(a, b, parse_unary(c, env));
    }
    std::size_t at = c.pos();
    if (call(c, "lift")) {
        std::string id = c.ident();
        if (c.accept(",")) {
            auto it = env.lifts.find(id);
            if (it == env.lifts.end()) throw SyntaxError("unknown lift '" + id + "'", at);
            NameRef x = parse_name_ref_at(c, env);
            c.expect(",");
            std::string v = c.ident();
            c.expect(")");
            return f_applied_lift(it->second, x, v, parse_unary(c, env));
        }
        c.set_pos(at);
    }
    return parse_atomic(c, env);
}

FormulaPtr parse_conj(Cursor& c, const Env& env) {
    FormulaPtr f = parse_unary(c, env);
    while (c.accept_word("and")) f = f_and(f, parse_unary(c, env));
    return f;
}

FormulaPtr parse_disj(Cursor& c, const Env& env) {
    FormulaPtr f = parse_conj(c, env);
    while (c.accept_word("or")) f = f_or(f, parse_conj(c, env));
    return f;
}

FormulaPtr parse_impl(Cursor& c, const Env& env) {
    FormulaPtr f = parse_disj(c, env);
    if (c.accept("->")) return f_impl(f, parse_impl(c, env));
    return f;
}

template <class T, class F>
T whole(const std::string& text, F f) {
    Cursor c(text);
    T out = f(c);
    if (!c.at_end()) c.fail("trailing input");
    return out;
}

}  // namespace

FormulaPtr parse_formula_at(Cursor& c, const Env& env) { return parse_impl(c, env); }

TermPtr expand_terms(const TermPtr& t, const Env& env) {
    TermPtr out = t;
    for (const auto& v : t->free)
        if (auto it = env.terms.find(v); it != env.terms.end()) out = substitute(out, v, it->second);
    return out;
}

HF parse_hf(const std::string& text) {
    return whole<HF>(text, [](Cursor& c) { return parse_hf_at(c); });
}

NamePtr parse_name(const std::string& text, const Env& env) {
    return whole<NamePtr>(text, [&](Cursor& c) { return parse_name_at(c, env); });
}

StackSetPtr parse_stackset(const std::string& text, const Env& env) {
    return whole<StackSetPtr>(text, [&](Cursor& c) { return parse_stackset_at(c, env); });
}

FormulaPtr parse_formula(const std::string& text, const Env& env) {
    return whole<FormulaPtr>(text, [&](Cursor& c) { return parse_formula_at(c, env); });
}

TermPtr parse_env_term(const std::string& text, const Env& env) { return expand_terms(parse_term(text), env); }

RealizesClaim parse_realizes(const std::string& text, const Env& env) {
    return whole<RealizesClaim>(text, [&](Cursor& c) {
        TermPtr t = expand_terms(parse_term_at(c, InstructionRegistry::global()), env);
        c.expect("||-");
        return RealizesClaim{t, parse_formula_at(c, env)};
    });
}

namespace {

void parse_lift_graph(Cursor& c, const std::string& id, bool binary, Env& env) {
    c.expect("{");
    std::vector<std::pair<HF, HF>> g1;
    std::vector<std::pair<std::pair<HF, HF>, HF>> g2;
    std::vector<HF> d0, d1, cod;
    if (!c.accept("}")) {
        do {
            if (binary) {
                c.expect("(");
                HF x = parse_hf_at(c);
                c.expect(",");
                HF y = parse_hf_at(c);
                c.expect(")");
                c.expect("->");
                HF v = parse_hf_at(c);
                d0.push_back(x);
                d1.push_back(y);
                cod.push_back(v);
                g2.push_back({{x, y}, v});
            } else {
                HF x = parse_hf_at(c);
                c.expect("->");
                HF v = parse_hf_at(c);
                d0.push_back(x);
                cod.push_back(v);
                g1.emplace_back(x, v);
            }
        } while (c.accept(","));
        c.expect("}");
    }
    if (binary)
        env.lifts[id] = make_lift2(id, std::move(g2), hf_set(d0), hf_set(d1), hf_set(cod));
    else
        env.lifts[id] = make_lift(id, std::move(g1), hf_set(d0), hf_set(cod));
}

}  // namespace

bool apply_declaration(const std::string& line, Env& env) {
    Cursor c(line);
    if (c.accept_word("name")) {
        std::string id = c.ident();
        c.expect("=");
        env.names[id] = parse_name_at(c, env);
    } else if (c.accept_word("lift") || c.starts_with_word("lift2")) {
        bool binary = c.accept_word("lift2");
        std::string id = c.ident();
        c.expect("=");
        parse_lift_graph(c, id, binary, env);
    } else if (c.accept_word("universe")) {
        env.universe = name_list(c, env, '\0');
    } else if (c.accept_word("term")) {
        std::string id = c.ident();
        c.expect("=");
        env.terms[id] = expand_terms(parse_term_at(c, InstructionRegistry::global()), env);
    } else {
        return false;
    }
    if (!c.at_end()) c.fail("trailing input");
    return true;
}

}  // namespace krivine

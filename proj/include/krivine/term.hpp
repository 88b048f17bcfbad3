#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace krivine {

struct Term;
struct Stack;
using TermPtr = std::shared_ptr<const Term>;
using StackPtr = std::shared_ptr<const Stack>;

enum class TermKind { Var, Lam, App, CallCC, Cont, Instr };

// Immutable lambda_c term node.
struct Term {
    TermKind kind;
    std::string name;                 // variable, binder or instruction symbol
    TermPtr left;                     // Lam body, App function
    TermPtr right;                    // App argument
    StackPtr saved;                   // Cont payload
    std::size_t size = 1;
    std::vector<std::string> free;    // sorted free variables
};

// Stack bottom (head == nullptr) or push of a closed term.
struct Stack {
    std::string bottom;
    TermPtr head;
    StackPtr tail;
    std::size_t size = 1;
    std::size_t depth = 0;

    bool is_bottom() const { return !head; }
};

struct Process {
    TermPtr head;
    StackPtr stack;
};

struct SyntaxError : std::runtime_error {
    std::size_t pos;
    SyntaxError(const std::string& msg, std::size_t p)
        : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

struct OpenTermError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VocabularyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Registered instruction symbols. q, chi and d are always present.
class InstructionRegistry {
public:
    InstructionRegistry();
    static InstructionRegistry& global();
    void declare(const std::string& symbol);
    bool known(const std::string& symbol) const;
    std::vector<std::string> symbols() const;

private:
    mutable std::mutex mu_;
    std::set<std::string> symbols_;
};

TermPtr var(const std::string& name);
TermPtr lam(const std::string& binder, TermPtr body);
TermPtr lam(const std::vector<std::string>& binders, TermPtr body);
TermPtr app(TermPtr fn, TermPtr arg);
TermPtr apps(const std::vector<TermPtr>& parts);
TermPtr callcc();
TermPtr cont(StackPtr saved);
TermPtr instr(const std::string& symbol);

StackPtr bottom(const std::string& symbol);
// Throws OpenTermError when head has free variables.
StackPtr push(TermPtr head, StackPtr tail);
// Same without the closedness check; used for user input with free constants.
StackPtr push_unchecked(TermPtr head, StackPtr tail);
StackPtr push_all(const std::vector<TermPtr>& heads, StackPtr tail);
std::vector<TermPtr> stack_items(const StackPtr& s);
const std::string& stack_bottom(const StackPtr& s);

Process make_process(TermPtr head, StackPtr stack);

std::set<std::string> free_vars(const TermPtr& t);
bool is_closed(const TermPtr& t);
// Throws OpenTermError for open terms.
bool is_realizer(const TermPtr& t);
// Replaces free occurrences of u by a closed term.
TermPtr substitute(const TermPtr& t, const std::string& u, const TermPtr& s);

bool alpha_eq(const TermPtr& t, const TermPtr& s);
bool alpha_eq(const StackPtr& a, const StackPtr& b);
bool alpha_eq(const Process& a, const Process& b);

// Nameless rendering; equal strings iff alpha-equivalent.
std::string canonical(const TermPtr& t);
std::string canonical(const StackPtr& s);
std::string canonical(const Process& p);

TermPtr church(unsigned n);
TermPtr identity();
// Index n when t is alpha-equivalent to church(n).
std::optional<unsigned> church_index(const TermPtr& t);

std::string print(const TermPtr& t);
std::string print(const StackPtr& s);
std::string print(const Process& p);

TermPtr parse_term(const std::string& text, const InstructionRegistry& reg = InstructionRegistry::global());
StackPtr parse_stack(const std::string& text, const InstructionRegistry& reg = InstructionRegistry::global());
Process parse_process(const std::string& text, const InstructionRegistry& reg = InstructionRegistry::global());

// Visits every stack bottom symbol, including those inside continuations.
void collect_bottoms(const TermPtr& t, std::set<std::string>& out);
void collect_bottoms(const StackPtr& s, std::set<std::string>& out);
void collect_instructions(const TermPtr& t, std::set<std::string>& out);
void collect_instructions(const StackPtr& s, std::set<std::string>& out);

std::size_t process_size(const Process& p);

}  // namespace krivine

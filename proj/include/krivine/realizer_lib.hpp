#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "krivine/algebra.hpp"
#include "krivine/names.hpp"
#include "krivine/realize.hpp"
#include "krivine/syntax.hpp"

namespace krivine {

// Value lists for the metavariables of catalog schemas.
//   $a $b $c $d   corpus names          $m $n $o   small names
//   $p $q $r      closed propositions   $P(v)      predicate applied to v
//   $alpha $beta  hat ordinals, beta < alpha      $i $j   naturals for reish names
struct Corpus {
    Env env;  // standard terms plus CHI, the lift "neg" and the universe
    std::map<std::string, std::vector<std::string>> domains;

    // Names of rank <= 2, hats up to 3.
    static Corpus standard();
};

using Binding = std::map<std::string, std::string>;

struct CatalogInstance {
    std::string binding;  // "a=^0, p=bot"
    TermPtr term;
    FormulaPtr formula;
};

struct CatalogEntry {
    std::string key;
    std::string term;                 // term template
    std::vector<std::string> claims;  // formula schemas
    std::string anchor;
    bool forcing_only = false;
    std::map<std::string, std::vector<std::string>> domains;  // per-entry overrides
    std::function<bool(const Binding&)> filter;

    // Throws std::logic_error when an instance term is open or not a realizer.
    std::vector<CatalogInstance> instantiate(const Corpus& corpus) const;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_entry(const std::string& key);

// Replaces $name and $P(arg) placeholders.
std::string fill_template(const std::string& text, const Binding& b, const Corpus& corpus);

struct CatalogReport {
    struct Row {
        std::string key;
        std::string anchor;
        std::string binding;
        TermPtr term;
        FormulaPtr formula;
        Verdict verdict;
    };
    std::vector<Row> rows;
    std::vector<std::string> skipped;  // entries not run in this algebra

    std::size_t count(Verdict::Kind k) const;
    std::size_t refuted() const { return count(Verdict::Kind::refuted); }
};

// Runs every instance; the d-algebra report also carries the gamma and d(2) rows.
CatalogReport verify_catalog(const Algebra& alg, const EngineOptions& opt = {},
                             const Corpus& corpus = Corpus::standard(), unsigned threads = 0);

// Comparator of Church numerals built from X, Y, A, B.
TermPtr theta_pure();
TermPtr chi_pure();

struct ChiReport {
    struct Row {
        unsigned n = 0, m = 0;
        char expected = '?';  // 't', 's' or 'r'
        char pure = '?';      // '?' when the run ended elsewhere, '!' on budget exhaustion
        char hook = '?';
        std::size_t steps = 0;
    };
    std::vector<Row> rows;

    std::size_t failures() const;  // pure branch wrong
    std::size_t disagreements() const;  // pure and hook differ
};

ChiReport verify_chi_pure(unsigned n_max, std::size_t budget = 100000);

// Y = A A with A = \u.\v.v((u u) v).
TermPtr turing_y();
// r' = \u.\v.cc(\k.(r (k u)) (k v)).
TermPtr fork_term(const TermPtr& r);

struct TraceReport {
    std::size_t trials = 0;
    std::vector<std::string> failures;
};

// Y * t.s.pi passes through t * (Y t).s.pi for a fresh marker t and random s, pi.
TraceReport y_trace_check(unsigned trials, std::uint64_t seed, std::size_t budget = 1000);
// r' * t.s.pi passes through r * (k[pi] t).(k[pi] s).pi for a fresh marker r and random t, s, pi.
TraceReport fork_trace_check(unsigned trials, std::uint64_t seed, std::size_t budget = 1000);

struct ProofError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HilbertProof;
using ProofPtr = std::shared_ptr<const HilbertProof>;

// Axioms K, S, C (classical), inst, dist; rules mp and gen; hyp and deduce are
// discharged by expand_deductions.
struct HilbertProof {
    enum class Kind { axiom, mp, gen, hyp, deduce } kind = Kind::axiom;
    std::string schema;               // axiom
    std::vector<FormulaPtr> formulas; // axiom arguments; hyp and deduce formula in [0]
    std::string var;                  // inst, dist, gen
    NameRef inst;                     // inst: a name of the universe or a variable
    std::vector<NamePtr> universe;    // inst, dist, gen
    ProofPtr major, minor;            // mp; gen and deduce use major
};

ProofPtr ax_k(FormulaPtr phi, FormulaPtr psi);
ProofPtr ax_s(FormulaPtr phi, FormulaPtr psi, FormulaPtr theta);
ProofPtr ax_classical(FormulaPtr phi, FormulaPtr psi);
ProofPtr ax_inst(std::string var, FormulaPtr phi, NameRef n, std::vector<NamePtr> universe);
ProofPtr ax_dist(std::string var, FormulaPtr phi, FormulaPtr psi, std::vector<NamePtr> universe);
ProofPtr mp(ProofPtr major, ProofPtr minor);
ProofPtr gen(std::string var, ProofPtr sub, std::vector<NamePtr> universe);
ProofPtr hyp(FormulaPtr phi);
ProofPtr deduce(FormulaPtr phi, ProofPtr sub);

// Throws ProofError on mismatched premises, side conditions, or a hyp outside deduce.
FormulaPtr conclusion(const ProofPtr& p);
// Bracket abstraction: deduce(phi, p) becomes a proof of phi -> concl(p) from axioms and rules.
ProofPtr expand_deductions(const ProofPtr& p);
TermPtr extract_realizer(const ProofPtr& p);

// Declarations (name/lift/universe/term lines), "(define id proof)" forms and one proof.
// Proof syntax: (ax K "phi" "psi") (ax S ..) (ax C ..) (ax inst x "phi" n) (ax dist x "phi" "psi")
// (mp major minor) (gen x p) (hyp "phi") (deduce "phi" p); ';' starts a comment.
struct ProofFile {
    Env env;
    ProofPtr proof;
};

ProofFile parse_proof_file(const std::string& text, Env env = Env::standard());

FormulaPtr rename_var(const FormulaPtr& f, const std::string& from, const std::string& to);

}  // namespace krivine

#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "krivine/algebra.hpp"
#include "krivine/names.hpp"
#include "krivine/realize.hpp"

namespace krivine {

enum class ComponentTag { only_p0, only_p1, neither, both };

std::string to_string(ComponentTag t);
ComponentTag component_tag(const TermPtr& t);
ComponentTag component_tag(const StackPtr& s);
ComponentTag component_tag(const Process& p);

// Outcome of forward evaluation with cycle detection.
struct Evaluation {
    enum class End { normal_form, cycle, exhausted } end = End::normal_form;
    Process last;
    std::size_t steps = 0;
};

// A revisited state (up to alpha) proves divergence.
Evaluation evaluate(const Process& p, std::size_t budget, const Hooks& hooks = {});

// The algebra with one instruction @d and two stack bottoms p0, p1.
class DAlgebra : public Algebra {
public:
    explicit DAlgebra(std::size_t budget = 100000) : budget_(budget) {}

    std::string name() const override { return "dalg"; }
    PoleVerdict pole_contains(const Process& p) const override;
    std::vector<std::string> bottoms() const override { return {"p0", "p1"}; }
    // k[#0 . w[p0]] @d and k[#1 . w[p1]] @d: every process they head reduces into pole_00 or pole_11,
    // or carries both bottoms.
    std::vector<TermPtr> universal_realizers() const override;

    // Membership in pole^i_j; throws VocabularyError when p is outside Lambda^i * Pi^i.
    PoleVerdict pole_ij(const Process& p, int i, int j) const;
    std::size_t budget() const { return budget_; }
    std::size_t memo_size() const;

private:
    std::size_t budget_;
    mutable std::mutex mu_;
    mutable std::map<std::string, PoleVerdict> memo_;
};

// Xi sends p0 to p1; defined on Lambda^0 * Pi^0. xi_inverse sends p1 back to p0.
TermPtr xi(const TermPtr& t);
StackPtr xi(const StackPtr& s);
Process xi(const Process& p);
Process xi_inverse(const Process& p);

NamePtr gamma0();
NamePtr gamma1();

struct GammaReport {
    struct Row {
        std::string claim;
        TermPtr term;
        FormulaPtr formula;
        Verdict verdict;
    };
    std::vector<Row> rows;

    std::size_t refuted() const;
};

// d(0) ||- ^0 eps! gamma0, d(1) ||- ^1 eps! gamma0 and the gamma1 mirror, I ||- not forall x^2 (x eps! gamma0),
// and the d(2) claim instances for m, n in {0,1} over realizers of bottom.
GammaReport verify_gamma_claims(const DAlgebra& alg, const EngineOptions& opt = {});

}  // namespace krivine

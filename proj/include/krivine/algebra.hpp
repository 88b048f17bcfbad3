#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "krivine/machine.hpp"
#include "krivine/term.hpp"

namespace krivine {

enum class PoleVerdict { in, out, unknown };

std::string to_string(PoleVerdict v);

class ForcingAlgebra;

// Pole membership plus the vocabulary an algebra accepts.
class Algebra {
public:
    virtual ~Algebra() = default;

    virtual std::string name() const = 0;
    virtual PoleVerdict pole_contains(const Process& p) const = 0;
    virtual bool is_realizer(const TermPtr& t) const { return krivine::is_realizer(t); }
    // Stack bottom symbols, in canonical order.
    virtual std::vector<std::string> bottoms() const = 0;
    // Terms t with t * pi in the pole for every stack pi; they realize every formula.
    virtual std::vector<TermPtr> universal_realizers() const = 0;
    virtual Hooks hooks() const { return {}; }
    virtual const ForcingAlgebra* as_forcing() const { return nullptr; }

    // Throws VocabularyError on a foreign bottom or instruction.
    void check_vocabulary(const Process& p) const;
    std::vector<StackPtr> bottom_stacks() const;
};

struct CoherenceReport {
    struct Row {
        TermPtr realizer;
        StackPtr escape;  // null when every sampled stack stayed in the pole
    };
    std::vector<Row> rows;

    std::size_t flagged() const;
};

CoherenceReport coherence_sample(const Algebra& alg, const std::vector<TermPtr>& realizers,
                                 const std::vector<StackPtr>& stacks);

}  // namespace krivine

#include "krivine/algebra.hpp"

#include <algorithm>
#include <set>

namespace krivine {

std::string to_string(PoleVerdict v) {
    switch (v) {
        case PoleVerdict::in: return "in";
        case PoleVerdict::out: return "out";
        case PoleVerdict::unknown: return "unknown";
    }
    return "unknown";
}

void Algebra::check_vocabulary(const Process& p) const {
    std::set<std::string> seen;
    collect_bottoms(p.head, seen);
    collect_bottoms(p.stack, seen);
    auto known = bottoms();
    for (const auto& b : seen)
        if (std::find(known.begin(), known.end(), b) == known.end())
            throw VocabularyError("stack bottom w[" + b + "] is foreign to the " + name() + " algebra");
}

std::vector<StackPtr> Algebra::bottom_stacks() const {
    std::vector<StackPtr> out;
    for (const auto& b : bottoms()) out.push_back(bottom(b));
    return out;
}

std::size_t CoherenceReport::flagged() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const Row& r) { return !r.escape; }));
}

CoherenceReport coherence_sample(const Algebra& alg, const std::vector<TermPtr>& realizers,
                                 const std::vector<StackPtr>& stacks) {
    CoherenceReport report;
    for (const auto& t : realizers) {
        CoherenceReport::Row row{t, nullptr};
        for (const auto& s : stacks)
            if (alg.pole_contains(Process{t, s}) == PoleVerdict::out) {
                row.escape = s;
                break;
            }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace krivine

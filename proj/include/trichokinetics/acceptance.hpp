#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tricho::acceptance {

/// Verdict for one acceptance criterion.
struct CriterionResult {
    int id{0};
    std::string name;
    bool passed{false};
    std::string detail;  ///< worst observed margin vs the pinned threshold
};

/**
 * @brief Run the full acceptance suite.
 *
 * Nine criteria covering reference-data reproduction, conservation and
 * closure identities, qualitative invariants, the conjugated-system
 * equivalence and the integrator order. Tolerances are pinned in the
 * implementation. When @p progress is non-null, one
 * "[PASS]/[FAIL] <id>. <name> (<detail>)" line is streamed per criterion
 * as it finishes.
 */
std::vector<CriterionResult> run_all(std::ostream* progress = nullptr);

/// True when every criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

} // namespace tricho::acceptance

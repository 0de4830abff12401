#pragma once

#include <string>
#include <vector>

#include "polyembed/certify/claim.hpp"
#include "polyembed/certify/obstruction.hpp"
#include "polyembed/certify/rules.hpp"

namespace polyembed {

struct Theorem1Plan {
    bool feasible = false;
    ObstructionVerdict obstruction;
    /// Violated hypotheses, both sides stated; empty when feasible.
    std::string rejection;
    /// Normalized steps: (2n-3) two-factor reshapings, (n-2) three-factor
    /// reshapings, then the inclusion of the final polydisk in P'. Steps with
    /// lambda = 1 are kept.
    std::vector<EmbeddingClaim> steps;
    /// P ↪ C P' as the composition of the steps.
    EmbeddingClaim theorem;
    ConstantLedger ledger;
    double constant = 0.0;
    /// Polydisks after the three phases (radii sorted).
    std::vector<double> after_equalize;
    std::vector<double> after_transfer;
    std::vector<double> after_distribute;
};

/// Plan P ↪ C(n) P' for polydisks with finite radii. Infeasible inputs (R1 >
/// R1' or prod R > prod R') return feasible = false with the obstruction;
/// throws DimensionMismatch for unequal lengths.
Theorem1Plan plan_theorem1(const std::vector<double>& R, const std::vector<double>& Rp, const RuleOptions& opt = {});

}  // namespace polyembed

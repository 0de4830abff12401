#pragma once

#include <vector>

#include "polyembed/certify/claim.hpp"

namespace polyembed {

/// Constant of the two-factor reshaping (appendix construction).
inline constexpr double kProp1Constant = 3.0;

struct RuleOptions {
    /// Attach explicit maps (appendix chain, main-lemma map, strip lift) as
    /// ExplicitMap evidence where one exists.
    bool attach_evidence = false;
};

/// P ↪ 3 P' for P = B^2(R1) x B^2(R2), R1' = lambda R1, R2' = R2 / lambda.
/// Throws HypothesisViolation unless 1 <= lambda <= sqrt(R2 / R1).
EmbeddingClaim prop1_step(const std::vector<double>& R, double lambda, const RuleOptions& opt = {});

/// The same reshaping acting on factors a < b of a sorted n-factor polydisk
/// Q (R_a <= R_b), identity on the others: Q ↪ 3 Q'.
EmbeddingClaim prop1_step_on(const std::vector<double>& Q, int a, int b, double lambda, const RuleOptions& opt = {});

/// P ↪ C P' for P = (R1, R2, R3), P' = (R1, R2 / lambda, lambda R3), proved
/// by composing Prop1 on factors 2-3, the ball inclusion, the scaled main
/// lemma, Moser's equivalence and the scaled strip lemma. C is the ledger
/// product. Throws HypothesisViolation unless 1 <= lambda <= R2 / R1 and
/// R1 <= R2 <= R3.
EmbeddingClaim prop2_step(const std::vector<double>& R, double lambda, const RuleOptions& opt = {});

/// The sub-claims behind prop2_step, in order, ending in
/// B^2(2 R1') x B^2(10 R2') x B^2(F) with F <= 18 R3'.
std::vector<EmbeddingClaim> prop2_chain(const std::vector<double>& R, double lambda, const RuleOptions& opt = {});

/// prop2_step on factors (i0, a, b) of a sorted n-factor polydisk Q, the
/// others fixed; Q ↪ C Q'.
EmbeddingClaim prop2_step_on(const std::vector<double>& Q, int i0, int a, int b, double lambda,
                             const RuleOptions& opt = {});

/// Ledger of prop2_step (independent of the radii).
ConstantLedger prop2_ledger();

}  // namespace polyembed

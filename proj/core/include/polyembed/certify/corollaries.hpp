#pragma once

#include <string>

#include "polyembed/certify/claim.hpp"
#include "polyembed/certify/rules.hpp"

namespace polyembed {

enum class Corollary2Verdict { Contradiction, Consistent };

const char* to_string(Corollary2Verdict v);

/// Outcome of assuming Sigma(eps) x B^2(W) ↪ B^2(R_cyl) x R^2, where
/// Sigma(eps) has area eps^2.
struct Corollary2Result {
    Corollary2Verdict verdict = Corollary2Verdict::Consistent;
    /// The assumed embedding.
    EmbeddingClaim hypothesis;
    /// B^6(W/eps) ↪ B^2(R_cyl/eps) x R^4, built from the rescaled hypothesis
    /// and the main lemma; non-squeezing then forces W <= R_cyl.
    EmbeddingClaim deduction;
    /// W: the largest fiber radius the obstruction allows.
    double lower_bound = 0.0;
    /// sqrt(2) W: the cylinder radius the improved strip construction reaches.
    double constructive_radius = 0.0;
    std::string explanation;
};

/// Throws std::invalid_argument unless eps, W, R_cyl > 0.
Corollary2Result corollary2_deduce(double eps, double W, double R_cyl);

/// Strip width for an immersion B^4(R) -> B^2(1) x R^2 whose double points
/// have volume below eps: the strip model has double-point area 4 w^2 and the
/// fiber is B^2(10 R^2).
struct Corollary1Budget {
    double R = 0.0;
    double epsilon = 0.0;
    double w = 0.0;
    double fiber_radius = 0.0;
    /// 4 w^2 * pi (10 R^2)^2.
    double double_volume = 0.0;
};

Corollary1Budget corollary1_budget(double R, double eps);

/// B^2(delta) x B^2(1) x B^2(1) ↪ B^2(2 delta) x B^2(10 delta) x R^2 as the
/// three-factor reshaping with lambda = 1/delta followed by an inclusion.
/// Throws std::invalid_argument unless 0 < delta <= 1.
EmbeddingClaim catalyst_claim(double delta, const RuleOptions& opt = {});

/// B^2(2 delta) x B^2(10 delta) x R^2.
ShapeDescriptor catalyst_target(double delta);

}  // namespace polyembed

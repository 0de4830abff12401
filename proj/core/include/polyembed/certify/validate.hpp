#pragma once

#include <cstdint>
#include <vector>

#include "polyembed/certify/claim.hpp"
#include "polyembed/verify/report.hpp"

namespace polyembed {

struct ValidationOptions {
    /// Run the verify checks on ExplicitMap evidence.
    bool check_evidence = true;
    std::size_t evidence_samples = 2000;
    std::uint64_t seed = 1;
};

/// Checks linkage between consecutive claims, rule parameters (lambda
/// ranges, Moser areas, scaled-lemma hypotheses), ledger arithmetic and, for
/// claims carrying evidence, the map's symplecticity and containment. Fails
/// with metric `offending_claim` set to the index of the first bad claim and
/// one note per problem. The empty chain passes.
VerificationReport validate_chain(const std::vector<EmbeddingClaim>& claims, const ValidationOptions& opt = {});

/// validate_chain of the single claim.
VerificationReport validate_claim(const EmbeddingClaim& claim, const ValidationOptions& opt = {});

}  // namespace polyembed

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polyembed/certify/claim.hpp"

namespace polyembed {

/// Human-readable certificate: one `begin claim` ... `end` block per claim,
/// sub-claims nested inside their parent's block, one `key: value` line per
/// field, `param k = v` and `ledger: label = c` lines. Lines starting with
/// '#' are comments (the header lines are written that way).
///
///   begin claim
///     label: Prop1 lambda=2
///     step: prop1
///     rule: cited-result
///     citation: Traynor-Prop1
///     source: disk(1) x disk(4)
///     target: disk(6) x disk(6)
///     reshaped: disk(2) x disk(2)
///     scale: 3
///     param a = 0
///     ledger: Prop1 = 3
///   end
std::string write_certificate(const std::vector<EmbeddingClaim>& claims,
                              const std::vector<std::string>& header = {});

/// Inverse of write_certificate; throws ParseError with the line number.
std::vector<EmbeddingClaim> parse_certificate(std::string_view text);

}  // namespace polyembed

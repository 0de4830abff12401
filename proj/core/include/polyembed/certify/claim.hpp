#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "polyembed/shape.hpp"

namespace polyembed {

/// Ordered (label, constant) entries; the achieved constant is their product.
class ConstantLedger {
public:
    void add(std::string label, double constant);
    void append(const ConstantLedger& other);

    const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }
    double product() const;
    bool empty() const { return entries_.empty(); }

private:
    std::vector<std::pair<std::string, double>> entries_;
};

enum class Rule { ExplicitMap, Inclusion, Scaling, Composition, MoserEquivalence, CitedResult };

enum class Citation { None, TraynorProp1, MainLemma, Lemma31, NonSqueezingAxiom, Hypothesis };

const char* to_string(Rule r);
const char* to_string(Citation c);
Rule parse_rule(const std::string& s);
Citation parse_citation(const std::string& s);

/// A claim "source embeds symplectically in target" with its justification.
///
/// Reshaping steps (Prop1, Prop2) are recorded in normalized form: `reshaped`
/// is the reshaped shape P' and target = scale * P'. A chain may link claim
/// k to claim k+1 either by inclusion (target_k ⊂ source_{k+1}) or by
/// scaling (target_k = scale_k * source_{k+1}); in the latter case every
/// later shape is understood as multiplied by scale_k.
struct EmbeddingClaim {
    std::string label;
    /// Named rule instance the validator checks parameters against: "prop1",
    /// "prop2", "prop2-factors", "main-lemma", "lemma3.1", "moser", ... or
    /// empty for plain inclusions, scalings and compositions.
    std::string step;
    ShapeDescriptor source;
    ShapeDescriptor target;
    Rule rule = Rule::Inclusion;
    Citation citation = Citation::None;
    std::optional<ShapeDescriptor> reshaped;
    double scale = 1.0;
    /// Rule parameters (lambda, factor indices, areas, ...).
    std::map<std::string, double> params;
    /// Sub-claims of a Composition or the premise of a Scaling.
    std::vector<EmbeddingClaim> parts;
    /// Map descriptor of ExplicitMap evidence, and the shape it is checked on.
    std::optional<nlohmann::json> evidence;
    std::optional<ShapeDescriptor> evidence_domain;
    std::optional<ShapeDescriptor> evidence_target;
    ConstantLedger ledger;

    double param(const std::string& key) const;
};

/// Composition of `parts` from parts.front().source to `target`.
EmbeddingClaim compose_claims(std::string label, std::vector<EmbeddingClaim> parts, const ShapeDescriptor& target);

/// The claim source ⊂ target.
EmbeddingClaim inclusion_claim(std::string label, const ShapeDescriptor& source, const ShapeDescriptor& target);

/// From premise A ↪ B, the claim C*A ↪ C*B (conformal rescaling).
EmbeddingClaim scaling_claim(std::string label, const EmbeddingClaim& premise, double C);

}  // namespace polyembed

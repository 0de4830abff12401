#include "polyembed/certify/claim.hpp"

#include <array>
#include <stdexcept>

#include "polyembed/errors.hpp"

namespace polyembed {

namespace {

constexpr std::array<std::pair<Rule, const char*>, 6> kRuleNames{{
    {Rule::ExplicitMap, "explicit-map"},
    {Rule::Inclusion, "inclusion"},
    {Rule::Scaling, "scaling"},
    {Rule::Composition, "composition"},
    {Rule::MoserEquivalence, "moser-equivalence"},
    {Rule::CitedResult, "cited-result"},
}};

constexpr std::array<std::pair<Citation, const char*>, 6> kCitationNames{{
    {Citation::None, "none"},
    {Citation::TraynorProp1, "Traynor-Prop1"},
    {Citation::MainLemma, "MainLemma"},
    {Citation::Lemma31, "Lemma3.1"},
    {Citation::NonSqueezingAxiom, "NonSqueezingAxiom"},
    {Citation::Hypothesis, "Hypothesis"},
}};

}  // namespace

void ConstantLedger::add(std::string label, double constant)
{
    if (!(constant > 0)) throw std::invalid_argument("ledger constants must be positive");
    entries_.emplace_back(std::move(label), constant);
}

void ConstantLedger::append(const ConstantLedger& other)
{
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

double ConstantLedger::product() const
{
    double p = 1.0;
    for (const auto& [label, c] : entries_) p *= c;
    return p;
}

const char* to_string(Rule r)
{
    for (const auto& [k, name] : kRuleNames)
        if (k == r) return name;
    return "?";
}

const char* to_string(Citation c)
{
    for (const auto& [k, name] : kCitationNames)
        if (k == c) return name;
    return "?";
}

Rule parse_rule(const std::string& s)
{
    for (const auto& [k, name] : kRuleNames)
        if (s == name) return k;
    throw ParseError("unknown rule '" + s + "'");
}

Citation parse_citation(const std::string& s)
{
    for (const auto& [k, name] : kCitationNames)
        if (s == name) return k;
    throw ParseError("unknown citation '" + s + "'");
}

double EmbeddingClaim::param(const std::string& key) const
{
    const auto it = params.find(key);
    if (it == params.end()) throw std::out_of_range("claim '" + label + "' has no parameter '" + key + "'");
    return it->second;
}

EmbeddingClaim compose_claims(std::string label, std::vector<EmbeddingClaim> parts, const ShapeDescriptor& target)
{
    if (parts.empty()) throw std::invalid_argument("a composition needs at least one claim");
    EmbeddingClaim c;
    c.label = std::move(label);
    c.source = parts.front().source;
    c.target = target;
    c.rule = Rule::Composition;
    for (const auto& p : parts) c.ledger.append(p.ledger);
    c.parts = std::move(parts);
    return c;
}

EmbeddingClaim inclusion_claim(std::string label, const ShapeDescriptor& source, const ShapeDescriptor& target)
{
    EmbeddingClaim c;
    c.label = std::move(label);
    c.source = source;
    c.target = target;
    c.rule = Rule::Inclusion;
    return c;
}

EmbeddingClaim scaling_claim(std::string label, const EmbeddingClaim& premise, double C)
{
    EmbeddingClaim c;
    c.label = std::move(label);
    c.source = scale_shape(premise.source, C);
    c.target = scale_shape(premise.target, C);
    c.rule = Rule::Scaling;
    c.params["C"] = C;
    c.parts = {premise};
    return c;
}

}  // namespace polyembed

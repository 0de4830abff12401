#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "polyembed/certify/certificate_io.hpp"
#include "polyembed/certify/corollaries.hpp"
#include "polyembed/certify/obstruction.hpp"
#include "polyembed/certify/planner.hpp"
#include "polyembed/certify/rules.hpp"
#include "polyembed/certify/validate.hpp"
#include "polyembed/errors.hpp"
#include "polyembed/shape_literal.hpp"

using namespace polyembed;

namespace {

ValidationOptions no_evidence()
{
    ValidationOptions o;
    o.check_evidence = false;
    return o;
}

double log_volume(const ShapeDescriptor& s)
{
    const auto radii = s.polydisk_radii();
    double v = 0;
    for (double r : radii.value()) v += 2 * std::log(r);
    return v;
}

}  // namespace

TEST(Ledger, ProductAndValidation)
{
    ConstantLedger l;
    EXPECT_TRUE(l.empty());
    EXPECT_EQ(l.product(), 1.0);
    l.add("a", 3);
    l.add("b", 0.5);
    EXPECT_DOUBLE_EQ(l.product(), 1.5);
    EXPECT_THROW(l.add("c", 0), std::invalid_argument);
    ConstantLedger m;
    m.add("d", 2);
    l.append(m);
    EXPECT_EQ(l.entries().size(), 3u);
    EXPECT_DOUBLE_EQ(l.product(), 3.0);
}

TEST(Rules, NamesRoundTrip)
{
    for (auto r : {Rule::ExplicitMap, Rule::Inclusion, Rule::Scaling, Rule::Composition, Rule::MoserEquivalence,
                   Rule::CitedResult})
        EXPECT_EQ(parse_rule(to_string(r)), r);
    for (auto c : {Citation::None, Citation::TraynorProp1, Citation::MainLemma, Citation::Lemma31,
                   Citation::NonSqueezingAxiom, Citation::Hypothesis})
        EXPECT_EQ(parse_citation(to_string(c)), c);
    EXPECT_THROW(parse_rule("magic"), ParseError);
}

TEST(Prop1, ReshapesWithinRange)
{
    const auto c = prop1_step({1, 4}, 2);
    EXPECT_TRUE(approx_equal(*c.reshaped, ShapeDescriptor::polydisk({2, 2})));
    EXPECT_TRUE(approx_equal(c.target, ShapeDescriptor::polydisk({6, 6})));
    EXPECT_DOUBLE_EQ(c.ledger.product(), kProp1Constant);
    EXPECT_TRUE(validate_claim(c, no_evidence()).passed());
    EXPECT_THROW(prop1_step({1, 4}, 2.01), HypothesisViolation);
    EXPECT_THROW(prop1_step({1, 4}, 0.99), HypothesisViolation);
}

TEST(Prop1, RandomLambdasValidate)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const double r1 = 0.1 + u(rng), r2 = r1 * (1 + 10 * u(rng));
        const double lambda = 1 + (std::sqrt(r2 / r1) - 1) * u(rng);
        const auto c = prop1_step({r1, r2}, lambda);
        ASSERT_TRUE(validate_claim(c, no_evidence()).passed());
        // symplectic embeddings cannot lose volume
        EXPECT_GE(log_volume(c.target), log_volume(c.source));
    }
}

TEST(Prop2, LedgerIsEighteen)
{
    // 3 (two-factor step) * sqrt 2 (polydisk in ball) * 3 sqrt 2 (main lemma)
    EXPECT_NEAR(prop2_ledger().product(), 3 * std::sqrt(2.0) * 3 * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(prop2_ledger().product(), 18.0, 1e-12);
}

TEST(Prop2, StepAndChainValidate)
{
    const auto c = prop2_step({1, 2, 3}, 2);
    EXPECT_TRUE(approx_equal(*c.reshaped, ShapeDescriptor::polydisk({1, 1, 6})));
    EXPECT_TRUE(validate_claim(c, no_evidence()).passed());
    const auto chain = prop2_chain({0.5, 3, 4}, 1.5);
    EXPECT_TRUE(validate_chain(chain, no_evidence()).passed());
    EXPECT_THROW(prop2_step({1, 2, 3}, 2.5), HypothesisViolation);
    EXPECT_THROW(prop2_step({2, 1, 3}, 1), std::invalid_argument);
}

TEST(Planner, ConstantHasClosedForm)
{
    // n-2 + n-1 two-factor steps and n-2 three-factor steps
    for (int n = 2; n <= 6; ++n) {
        std::vector<double> R(static_cast<std::size_t>(n)), Rp(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            R[static_cast<std::size_t>(i)] = 1 + i;
            Rp[static_cast<std::size_t>(i)] = 2 + 0.5 * i;
        }
        if (std::log(Rp[0]) * n > 0) Rp.back() *= 10;
        const auto plan = plan_theorem1(R, Rp);
        ASSERT_TRUE(plan.feasible) << plan.rejection;
        const double want = std::pow(3.0, 2 * n - 3) * std::pow(18.0, n - 2);
        EXPECT_NEAR(plan.constant, want, 1e-12 * want) << "n = " << n;
        EXPECT_TRUE(validate_chain(plan.steps, no_evidence()).passed());
        EXPECT_TRUE(validate_chain({plan.theorem}, no_evidence()).passed());
    }
}

TEST(Planner, RejectionIsSharp)
{
    const std::vector<double> R{1, 2, 3};
    EXPECT_TRUE(plan_theorem1(R, {1, 2, 3}).feasible);
    EXPECT_TRUE(plan_theorem1(R, {1, 1, 6}).feasible);
    const auto squeeze = plan_theorem1(R, {1 - 1e-9, 3, 3});
    EXPECT_FALSE(squeeze.feasible);
    EXPECT_NE(squeeze.rejection.find("non-squeezing"), std::string::npos);
    EXPECT_EQ(squeeze.rejection.find("volume"), std::string::npos);
    const auto vol = plan_theorem1(R, {1, 2, 3 * (1 - 1e-9)});
    EXPECT_FALSE(vol.feasible);
    EXPECT_NE(vol.rejection.find("volume"), std::string::npos);
}

TEST(Planner, InputErrors)
{
    EXPECT_THROW(plan_theorem1({1, 2}, {1, 2, 3}), DimensionMismatch);
    EXPECT_THROW(plan_theorem1({1}, {2}), std::invalid_argument);
    EXPECT_THROW(plan_theorem1({1, INFINITY}, {2, 3}), std::invalid_argument);
}

TEST(Obstruction, PartialProductsAndSlack)
{
    const auto v = obstruction_check(std::vector<double>{3, 1, 2}, std::vector<double>{2, 2, 2});
    EXPECT_EQ(v.source_partial_products, (std::vector<double>{1, 2, 6}));
    EXPECT_TRUE(v.ok());
    EXPECT_DOUBLE_EQ(v.volume_ratio(), 8.0 / 6.0);
    // one ulp of rounding is not an obstruction
    EXPECT_TRUE(obstruction_check(std::vector<double>{std::nextafter(1.0, 2.0), 1}, std::vector<double>{1, 1}).ok());
    EXPECT_FALSE(obstruction_check(std::vector<double>{1.001, 1.5}, std::vector<double>{1, 2}).nonsqueeze_ok);
}

TEST(Validate, DetectsTampering)
{
    const auto plan = plan_theorem1({1, 2, 3}, {2, 2, 3});
    ASSERT_TRUE(plan.feasible);
    auto steps = plan.steps;
    steps[0].params["lambda"] = 1e3;
    auto r = validate_chain(steps, no_evidence());
    EXPECT_EQ(r.verdict, Verdict::Fail);
    EXPECT_EQ(r.metrics.at("offending_claim"), 0.0);

    steps = plan.steps;
    steps[1].ledger.add("free lunch", 0.5);
    r = validate_chain(steps, no_evidence());
    EXPECT_EQ(r.verdict, Verdict::Fail);
    EXPECT_EQ(r.metrics.at("offending_claim"), 1.0);

    steps = plan.steps;
    steps.back().target = ShapeDescriptor::polydisk({0.1, 0.1, 0.1});
    EXPECT_EQ(validate_chain(steps, no_evidence()).verdict, Verdict::Fail);

    EXPECT_TRUE(validate_chain({}, no_evidence()).passed());
}

TEST(Validate, EvidenceIsChecked)
{
    RuleOptions ro;
    ro.attach_evidence = true;
    ValidationOptions vo;
    vo.evidence_samples = 500;
    const auto c = prop1_step({1, 4}, 2, ro);
    ASSERT_TRUE(c.evidence.has_value());
    const auto r = validate_claim(c, vo);
    EXPECT_TRUE(r.passed());
    EXPECT_GE(r.metrics.at("evidence_checked"), 1.0);
}

TEST(Certificate, RoundTripsText)
{
    RuleOptions ro;
    ro.attach_evidence = true;
    const auto plan = plan_theorem1({0.5, 2, 3, 7}, {1, 2, 3, 7}, ro);
    ASSERT_TRUE(plan.feasible);
    const std::string text = write_certificate(plan.steps, {"header line"});
    const auto back = parse_certificate(text);
    EXPECT_EQ(write_certificate(back, {"header line"}), text);
    EXPECT_TRUE(validate_chain(back, no_evidence()).passed());
}

TEST(Certificate, ParseErrorsCarryLineNumbers)
{
    try {
        parse_certificate("# x\nbegin claim\n  label: a\n  rule: teleport\nend\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_certificate("begin claim\n  label: a\n"), ParseError);
    EXPECT_THROW(parse_certificate("label: a\n"), ParseError);
}

TEST(Corollary2, VerdictAndDeduction)
{
    const auto yes = corollary2_deduce(0.1, 1.0, 0.9);
    EXPECT_EQ(yes.verdict, Corollary2Verdict::Contradiction);
    EXPECT_TRUE(validate_claim(yes.deduction, no_evidence()).passed());
    EXPECT_EQ(corollary2_deduce(0.1, 1.0, 1.0).verdict, Corollary2Verdict::Consistent);
    EXPECT_NEAR(yes.constructive_radius, std::sqrt(2.0), 1e-15);
    EXPECT_STREQ(to_string(Corollary2Verdict::Contradiction), "CONTRADICTION");
    EXPECT_THROW(corollary2_deduce(0, 1, 1), std::invalid_argument);
}

TEST(Corollary1, BudgetMeetsEpsilon)
{
    for (double R : {0.5, 1.0, 3.0})
        for (double eps : {1.0, 1e-3}) {
            const auto b = corollary1_budget(R, eps);
            EXPECT_LT(b.double_volume, eps);
            EXPECT_LE(b.w, 0.1);
            EXPECT_NEAR(b.double_volume, 4 * b.w * b.w * M_PI * std::pow(10 * R * R, 2), 1e-12 * b.double_volume);
        }
}

TEST(Catalyst, ChainAndForgottenObstruction)
{
    const auto c = catalyst_claim(0.01);
    EXPECT_TRUE(approx_equal(c.target, catalyst_target(0.01)));
    EXPECT_TRUE(validate_claim(c, no_evidence()).passed());
    const auto v = obstruction_check(c.source, c.target);
    EXPECT_TRUE(v.nonsqueeze_ok);
    EXPECT_GT(v.source_partial_products[1], v.target_partial_products[1]);
    EXPECT_THROW(catalyst_claim(1.5), std::invalid_argument);
}

#include "polyembed/certify/rules.hpp"

#include <algorithm>
#include <cmath>

#include "polyembed/errors.hpp"
#include "polyembed/maps/descriptor.hpp"
#include "polyembed/maps/main_lemma.hpp"
#include "polyembed/maps/strip.hpp"
#include "polyembed/shape_literal.hpp"

namespace polyembed {

namespace {

constexpr double kRel = 1e-12;

bool in_range(double v, double lo, double hi)
{
    return v >= lo * (1 - kRel) && v <= hi * (1 + kRel);
}

std::string range_text(double lo, double hi)
{
    return "[" + format_double(lo) + ", " + format_double(hi) + "]";
}

void require_sorted(const std::vector<double>& R, const char* what)
{
    for (double r : R)
        if (!(r > 0) || !std::isfinite(r)) throw std::invalid_argument(std::string(what) + ": radii must be positive");
    for (std::size_t i = 1; i < R.size(); ++i)
        if (R[i] < R[i - 1] * (1 - kRel))
            throw std::invalid_argument(std::string(what) + ": radii must be sorted ascending");
}

ShapeDescriptor disks(const std::vector<double>& r)
{
    std::vector<ShapeFactor> f;
    for (double v : r) f.emplace_back(Disk2{v});
    return ShapeDescriptor(std::move(f));
}

void attach(EmbeddingClaim& c, const MapPtr& m, const ShapeDescriptor& dom, const ShapeDescriptor& tgt)
{
    c.rule = Rule::CitedResult;
    c.evidence = to_descriptor(*m);
    c.evidence_domain = dom;
    c.evidence_target = tgt;
}

}  // namespace

ConstantLedger prop2_ledger()
{
    ConstantLedger l;
    l.add("Prop1 on factors 2-3", kProp1Constant);
    l.add("polydisk in ball", std::sqrt(2.0));
    // the main lemma's fiber radius is quadratic in the ball radius 3*sqrt(2)*g
    l.add("MainLemma (fiber 10 s R^2)", 3.0 * std::sqrt(2.0));
    l.add("Moser equivalence", 1.0);
    l.add("Lemma3.1 (factors 2 and 10 absorbed)", 1.0);
    return l;
}

EmbeddingClaim prop1_step_on(const std::vector<double>& Q, int a, int b, double lambda, const RuleOptions& opt)
{
    require_sorted(Q, "prop1");
    const int n = static_cast<int>(Q.size());
    if (a < 0 || b >= n || a >= b) throw std::invalid_argument("prop1: factor indices must satisfy 0 <= a < b < n");
    const double hi = std::sqrt(Q[b] / Q[a]);
    if (!in_range(lambda, 1.0, hi))
        throw HypothesisViolation("prop1: lambda = " + format_double(lambda) + " outside " + range_text(1.0, hi));

    std::vector<double> r = Q;
    r[a] = lambda * Q[a];
    r[b] = Q[b] / lambda;

    EmbeddingClaim c;
    c.label = "Prop1 lambda=" + format_double(lambda);
    c.step = "prop1";
    c.rule = Rule::CitedResult;
    c.citation = Citation::TraynorProp1;
    c.source = ShapeDescriptor::polydisk(Q);
    c.reshaped = ShapeDescriptor::polydisk(r);
    c.scale = kProp1Constant;
    c.target = scale_shape(*c.reshaped, kProp1Constant);
    c.params = {{"lambda", lambda}, {"a", a}, {"b", b}};
    c.ledger.add("Prop1", kProp1Constant);
    if (opt.attach_evidence) {
        const double r1p = kProp1Constant * lambda * Q[a];
        const double r2p = kProp1Constant * Q[b] / lambda;
        const auto chain = build_appendix_chain_for_radii(Q[a], Q[b], r1p, r2p);
        attach(c, chain.map, ShapeDescriptor::polydisk({Q[a], Q[b]}), ShapeDescriptor::polydisk({r1p, r2p}));
    }
    return c;
}

EmbeddingClaim prop1_step(const std::vector<double>& R, double lambda, const RuleOptions& opt)
{
    if (R.size() != 2) throw DimensionMismatch("prop1 needs a two-factor polydisk");
    std::vector<double> s = R;
    std::sort(s.begin(), s.end());
    return prop1_step_on(s, 0, 1, lambda, opt);
}

std::vector<EmbeddingClaim> prop2_chain(const std::vector<double>& R, double lambda, const RuleOptions& opt)
{
    if (R.size() != 3) throw DimensionMismatch("prop2 needs a three-factor polydisk");
    require_sorted(R, "prop2");
    const double hi = R[1] / R[0];
    if (!in_range(lambda, 1.0, hi))
        throw HypothesisViolation("prop2: lambda = " + format_double(lambda) + " outside " + range_text(1.0, hi));

    const double R1p = R[0];
    const double R2p = R[1] / lambda;
    const double mu = std::sqrt(R[2] / R[1]);
    const ConstantLedger led = prop2_ledger();
    std::vector<EmbeddingClaim> out;

    // Prop1 on factors 2-3 up to the geometric mean, identity on factor 1
    EmbeddingClaim p1;
    p1.label = "Prop1 on factors 2-3";
    p1.step = "prop1";
    p1.rule = Rule::CitedResult;
    p1.citation = Citation::TraynorProp1;
    p1.source = disks(R);
    const std::vector<double> eq{R[0], mu * R[1], R[2] / mu};
    p1.reshaped = disks(eq);
    p1.target = disks({R[0], kProp1Constant * eq[1], kProp1Constant * eq[2]});
    p1.params = {{"lambda", mu}, {"a", 1}, {"b", 2}, {"local", 1}};
    p1.ledger.add(led.entries()[0].first, led.entries()[0].second);
    if (opt.attach_evidence) {
        const auto chain = build_appendix_chain_for_radii(R[1], R[2], kProp1Constant * eq[1], kProp1Constant * eq[2]);
        attach(p1, chain.map, ShapeDescriptor::polydisk({R[1], R[2]}),
               ShapeDescriptor::polydisk({kProp1Constant * eq[1], kProp1Constant * eq[2]}));
    }
    out.push_back(p1);

    // B^2(r) x B^2(r') ⊂ B^4(sqrt(r^2 + r'^2))
    const double rb = std::hypot(kProp1Constant * eq[1], kProp1Constant * eq[2]);
    EmbeddingClaim ball = inclusion_claim("polydisk in ball", p1.target,
                                          ShapeDescriptor({Disk2{R[0]}, Ball{2, rb}}));
    ball.ledger.add(led.entries()[1].first, led.entries()[1].second);
    out.push_back(ball);

    // main lemma rescaled by s so that the surface has area s^2
    const double s = 10.0 * R2p;
    const double Rm = rb / s;
    const double F = 10.0 * s * Rm * Rm;
    EmbeddingClaim ml;
    ml.label = "MainLemma scaled by " + format_double(s);
    ml.step = "main-lemma";
    ml.rule = Rule::CitedResult;
    ml.citation = Citation::MainLemma;
    ml.source = ball.target;
    ml.target = ShapeDescriptor({Disk2{R[0]}, Surface{s * s}, Disk2{F}});
    ml.params = {{"s", s}, {"R", Rm}, {"factor", 1}};
    ml.ledger.add(led.entries()[2].first, led.entries()[2].second);
    if (opt.attach_evidence) {
        const auto m = build_main_lemma_map(Rm);
        attach(ml, m.map, ShapeDescriptor::ball(2, Rm), m.map->target());
    }
    out.push_back(ml);

    // lattice-quotient realization of the surface to the strip-immersion one
    EmbeddingClaim mo;
    mo.label = "Moser: lattice quotient to strip surface";
    mo.step = "moser";
    mo.rule = Rule::MoserEquivalence;
    mo.source = ml.target;
    mo.target = ml.target;
    mo.params = {{"area_from", s * s}, {"area_to", s * s}, {"factor", 1}};
    mo.ledger.add(led.entries()[3].first, led.entries()[3].second);
    out.push_back(mo);

    // strip lemma rescaled by t = s: B^2(W t) x Sigma(t^2) into B^2(2 W t) x B^2(t)
    const double W = R1p / s;
    EmbeddingClaim lm;
    lm.label = "Lemma3.1 scaled by " + format_double(s);
    lm.step = "lemma3.1";
    lm.rule = Rule::CitedResult;
    lm.citation = Citation::Lemma31;
    lm.source = mo.target;
    lm.target = ShapeDescriptor({Disk2{2.0 * W * s}, Disk2{s}, Disk2{F}});
    lm.params = {{"t", s}, {"W", W}, {"factor", 0}};
    lm.ledger.add(led.entries()[4].first, led.entries()[4].second);
    if (opt.attach_evidence) {
        const double w = std::min(W, 0.1);
        const auto m = strip_lift(w, 2.0 * w);
        attach(lm, m, m->domain(), m->target());
    }
    out.push_back(lm);
    return out;
}

EmbeddingClaim prop2_step(const std::vector<double>& R, double lambda, const RuleOptions& opt)
{
    auto parts = prop2_chain(R, lambda, opt);
    const ConstantLedger led = prop2_ledger();
    const double C = led.product();
    const auto reshaped = ShapeDescriptor::polydisk({R[0], R[1] / lambda, lambda * R[2]});
    EmbeddingClaim c = compose_claims("Prop2 lambda=" + format_double(lambda), std::move(parts),
                                      scale_shape(reshaped, C));
    c.source = ShapeDescriptor::polydisk(R);
    c.step = "prop2";
    c.reshaped = reshaped;
    c.scale = C;
    c.params = {{"lambda", lambda}};
    return c;
}

EmbeddingClaim prop2_step_on(const std::vector<double>& Q, int i0, int a, int b, double lambda,
                             const RuleOptions& opt)
{
    require_sorted(Q, "prop2");
    const int n = static_cast<int>(Q.size());
    if (i0 < 0 || a < 0 || b < 0 || i0 >= n || a >= n || b >= n || i0 == a || i0 == b || a == b)
        throw std::invalid_argument("prop2: factor indices must be distinct and in range");
    EmbeddingClaim inner = prop2_step({Q[i0], Q[a], Q[b]}, lambda, opt);

    std::vector<double> r = Q;
    r[a] = Q[a] / lambda;
    r[b] = lambda * Q[b];
    EmbeddingClaim c;
    c.label = "Prop2 on factors " + std::to_string(i0) + "," + std::to_string(a) + "," + std::to_string(b);
    c.step = "prop2-factors";
    c.rule = Rule::Composition;
    c.source = ShapeDescriptor::polydisk(Q);
    c.reshaped = ShapeDescriptor::polydisk(r);
    c.scale = inner.scale;
    c.target = scale_shape(*c.reshaped, c.scale);
    c.params = {{"lambda", lambda}, {"i0", i0}, {"a", a}, {"b", b}};
    c.ledger = inner.ledger;
    c.parts = {std::move(inner)};
    return c;
}

}  // namespace polyembed

#include "polyembed/certify/corollaries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polyembed/shape_literal.hpp"

namespace polyembed {

const char* to_string(Corollary2Verdict v)
{
    return v == Corollary2Verdict::Contradiction ? "CONTRADICTION" : "CONSISTENT";
}

Corollary2Result corollary2_deduce(double eps, double W, double R_cyl)
{
    if (!(eps > 0) || !(W > 0) || !(R_cyl > 0))
        throw std::invalid_argument("corollary 2 needs positive eps, W and cylinder radius");
    Corollary2Result out;

    EmbeddingClaim h;
    h.label = "assumed embedding";
    h.rule = Rule::CitedResult;
    h.citation = Citation::Hypothesis;
    h.source = ShapeDescriptor({Surface{eps * eps}, Disk2{W}});
    h.target = ShapeDescriptor({Disk2{R_cyl}, FullPlane{}});
    out.hypothesis = h;

    // everything below lives in the picture rescaled by 1/eps
    const double a = W / eps;
    const double b = R_cyl / eps;
    const double Rm = std::max(a, 1.0 / 3.0);
    std::vector<EmbeddingClaim> parts;
    parts.push_back(inclusion_claim("ball in disk times ball", ShapeDescriptor::ball(3, a),
                                    ShapeDescriptor({Disk2{a}, Ball{2, Rm}})));

    EmbeddingClaim ml;
    ml.label = "MainLemma on the 4-ball";
    ml.step = "main-lemma";
    ml.rule = Rule::CitedResult;
    ml.citation = Citation::MainLemma;
    ml.source = parts.back().target;
    ml.target = ShapeDescriptor({Disk2{a}, Surface{1.0}, Disk2{10.0 * Rm * Rm}});
    ml.params = {{"s", 1.0}, {"R", Rm}, {"factor", 1}};
    parts.push_back(ml);

    EmbeddingClaim pm;
    pm.label = "reorder factors";
    pm.step = "permute";
    pm.rule = Rule::ExplicitMap;
    pm.source = ml.target;
    pm.target = ShapeDescriptor({Surface{1.0}, Disk2{a}, Disk2{10.0 * Rm * Rm}});
    parts.push_back(pm);

    parts.push_back(inclusion_claim("fiber in the plane", pm.target,
                                    ShapeDescriptor({Surface{1.0}, Disk2{a}, FullPlane{}})));

    EmbeddingClaim tm;
    tm.label = "rescaled assumption times identity";
    tm.step = "times";
    tm.rule = Rule::Composition;
    tm.parts = {scaling_claim("assumption rescaled by 1/eps", h, 1.0 / eps)};
    tm.source = ShapeDescriptor({Surface{1.0}, Disk2{a}, FullPlane{}});
    tm.target = ShapeDescriptor({Disk2{b}, FullPlane{}, FullPlane{}});
    parts.push_back(tm);

    out.deduction = compose_claims("B^6 into the cylinder", std::move(parts), tm.target);
    out.deduction.citation = Citation::NonSqueezingAxiom;

    out.lower_bound = W;
    out.constructive_radius = std::sqrt(2.0) * W;
    out.verdict = W > R_cyl ? Corollary2Verdict::Contradiction : Corollary2Verdict::Consistent;
    if (out.verdict == Corollary2Verdict::Contradiction)
        out.explanation = "non-squeezing applied to B^6(" + format_double(a) + ") ↪ B^2(" + format_double(b) +
                          ") x R^4 needs W <= R_cyl, but W = " + format_double(W) + " > " + format_double(R_cyl);
    else
        out.explanation = "W = " + format_double(W) + " <= R_cyl = " + format_double(R_cyl) +
                          "; the strip construction reaches radius " + format_double(out.constructive_radius);
    return out;
}

Corollary1Budget corollary1_budget(double R, double eps)
{
    if (!(R > 0) || !(eps > 0)) throw std::invalid_argument("corollary 1 needs positive R and eps");
    Corollary1Budget b;
    b.R = R;
    b.epsilon = eps;
    b.fiber_radius = 10.0 * R * R;
    const double fiber_area = std::numbers::pi * b.fiber_radius * b.fiber_radius;
    // half of the largest admissible width keeps the volume at eps / 4
    b.w = std::min(0.1, 0.5 * std::sqrt(eps / (4.0 * fiber_area)));
    b.double_volume = 4.0 * b.w * b.w * fiber_area;
    return b;
}

ShapeDescriptor catalyst_target(double delta)
{
    return ShapeDescriptor({Disk2{2.0 * delta}, Disk2{10.0 * delta}, FullPlane{}});
}

EmbeddingClaim catalyst_claim(double delta, const RuleOptions& opt)
{
    if (!(delta > 0) || delta > 1) throw std::invalid_argument("catalyst needs 0 < delta <= 1");
    auto parts = prop2_chain({delta, 1.0, 1.0}, 1.0 / delta, opt);
    const ShapeDescriptor last = parts.back().target;
    parts.push_back(inclusion_claim("third factor in the plane", last, catalyst_target(delta)));
    EmbeddingClaim c = compose_claims("catalyst delta=" + format_double(delta), std::move(parts), catalyst_target(delta));
    c.source = ShapeDescriptor::polydisk({delta, 1.0, 1.0});
    return c;
}

}  // namespace polyembed

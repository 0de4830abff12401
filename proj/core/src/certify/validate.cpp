#include "polyembed/certify/validate.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "polyembed/maps/descriptor.hpp"
#include "polyembed/shape_literal.hpp"
#include "polyembed/verify/checks.hpp"

namespace polyembed {

namespace {

constexpr double kRel = 1e-12;

bool close(double a, double b)
{
    return std::abs(a - b) <= kRel * std::max({1.0, std::abs(a), std::abs(b)});
}

std::optional<std::vector<double>> disk_radii(const ShapeDescriptor& s)
{
    std::vector<double> r;
    for (const auto& f : s.factors()) {
        const auto* d = std::get_if<Disk2>(&f);
        if (d == nullptr) return std::nullopt;
        r.push_back(d->radius);
    }
    return r;
}

ShapeDescriptor disks(const std::vector<double>& r)
{
    std::vector<ShapeFactor> f;
    for (double v : r) f.emplace_back(Disk2{v});
    return ShapeDescriptor(std::move(f));
}

ShapeDescriptor replace_factor(const ShapeDescriptor& s, std::size_t k, const std::vector<ShapeFactor>& with)
{
    std::vector<ShapeFactor> f;
    for (std::size_t i = 0; i < s.factors().size(); ++i) {
        if (i == k)
            f.insert(f.end(), with.begin(), with.end());
        else
            f.push_back(s.factors()[i]);
    }
    return ShapeDescriptor(std::move(f));
}

ShapeDescriptor slice(const ShapeDescriptor& s, std::size_t from, std::size_t to)
{
    return ShapeDescriptor(std::vector<ShapeFactor>(s.factors().begin() + static_cast<std::ptrdiff_t>(from),
                                                    s.factors().begin() + static_cast<std::ptrdiff_t>(to)));
}

class Validator {
public:
    explicit Validator(const ValidationOptions& opt) : opt_(opt) {}

    // Validates a linked list of claims; returns the accumulated scale of
    // scaling links, or nullopt when a link is broken.
    std::optional<double> list(const std::vector<EmbeddingClaim>& cs, const std::string& prefix)
    {
        double acc = 1.0;
        bool linked = true;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            const std::string path = prefix + std::to_string(k);
            claim(cs[k], path);
            if (k + 1 == cs.size()) break;
            const auto& a = cs[k];
            const auto& b = cs[k + 1];
            if (shape_within(a.target, b.source)) continue;
            if (a.scale != 1.0 && approx_equal(a.target, scale_shape(b.source, a.scale), kRel)) {
                acc *= a.scale;
                continue;
            }
            fail(path, a.label,
                 "target " + to_literal(a.target) + " does not link to the source " + to_literal(b.source) +
                     " of the next claim");
            linked = false;
        }
        if (!linked) return std::nullopt;
        return acc;
    }

    void claim(const EmbeddingClaim& c, const std::string& path)
    {
        ++claims_;
        if (c.source.dimension() != c.target.dimension()) {
            fail(path, c.label, "source and target dimensions differ");
            return;
        }
        if (c.step == "prop1")
            prop1(c, path);
        else if (c.step == "prop2")
            prop2(c, path);
        else if (c.step == "prop2-factors")
            prop2_factors(c, path);
        else if (c.step == "main-lemma")
            main_lemma(c, path);
        else if (c.step == "moser" || (c.step.empty() && c.rule == Rule::MoserEquivalence))
            moser(c, path);
        else if (c.step == "lemma3.1")
            lemma31(c, path);
        else if (c.step == "permute")
            permute(c, path);
        else if (c.step == "times")
            times(c, path);
        else if (!c.step.empty())
            fail(path, c.label, "unknown step '" + c.step + "'");
        else
            by_rule(c, path);
        if (c.evidence && opt_.check_evidence) evidence(c, path);
    }

    const std::vector<std::string>& problems() const { return problems_; }
    std::size_t claims() const { return claims_; }
    std::size_t evidence_checked() const { return evidence_; }
    double evidence_worst_residual() const { return worst_residual_; }

private:
    void fail(const std::string& path, const std::string& label, const std::string& msg)
    {
        problems_.push_back("claim " + path + " (" + label + "): " + msg);
    }

    template <class T>
    std::optional<T> need(const EmbeddingClaim& c, const std::string& path, const std::string& key)
    {
        const auto it = c.params.find(key);
        if (it == c.params.end()) {
            fail(path, c.label, "missing parameter '" + key + "'");
            return std::nullopt;
        }
        return static_cast<T>(it->second);
    }

    void lambda_range(const EmbeddingClaim& c, const std::string& path, double lambda, double hi)
    {
        if (!(lambda >= 1.0 - kRel && lambda <= hi * (1 + kRel)))
            fail(path, c.label,
                 "lambda = " + format_double(lambda) + " outside [1, " + format_double(hi) + "]");
    }

    void expect(const EmbeddingClaim& c, const std::string& path, const char* what, const ShapeDescriptor& got,
                const ShapeDescriptor& want)
    {
        if (!approx_equal(got, want, kRel))
            fail(path, c.label, std::string(what) + " " + to_literal(got) + " differs from " + to_literal(want));
    }

    void ledger_is(const EmbeddingClaim& c, const std::string& path, double want)
    {
        if (!close(c.ledger.product(), want))
            fail(path, c.label,
                 "ledger product " + format_double(c.ledger.product()) + " differs from " + format_double(want));
    }

    void prop1(const EmbeddingClaim& c, const std::string& path)
    {
        const auto s = disk_radii(c.source);
        const auto a = need<int>(c, path, "a");
        const auto b = need<int>(c, path, "b");
        const auto lambda = need<double>(c, path, "lambda");
        if (!s || !a || !b || !lambda || !c.reshaped) {
            fail(path, c.label, "two-factor reshaping needs a product of disks and a reshaped shape");
            return;
        }
        const auto n = static_cast<int>(s->size());
        if (*a < 0 || *b >= n || *a >= *b) {
            fail(path, c.label, "factor indices out of range");
            return;
        }
        const double ra = (*s)[static_cast<std::size_t>(*a)], rb = (*s)[static_cast<std::size_t>(*b)];
        if (ra > rb * (1 + kRel)) fail(path, c.label, "factor a is larger than factor b");
        lambda_range(c, path, *lambda, std::sqrt(rb / ra));
        std::vector<double> e = *s;
        e[static_cast<std::size_t>(*a)] = *lambda * ra;
        e[static_cast<std::size_t>(*b)] = rb / *lambda;
        const bool local = c.params.count("local") && c.params.at("local") != 0.0;
        if (local) {
            expect(c, path, "reshaped", *c.reshaped, disks(e));
            std::vector<double> t = e;
            t[static_cast<std::size_t>(*a)] *= 3.0;
            t[static_cast<std::size_t>(*b)] *= 3.0;
            expect(c, path, "target", c.target, disks(t));
        } else {
            expect(c, path, "reshaped", *c.reshaped, ShapeDescriptor::polydisk(e));
            if (!close(c.scale, 3.0)) fail(path, c.label, "two-factor reshaping constant must be 3");
            expect(c, path, "target", c.target, scale_shape(*c.reshaped, 3.0));
        }
        ledger_is(c, path, 3.0);
    }

    void composition(const EmbeddingClaim& c, const std::string& path)
    {
        if (c.parts.empty()) {
            fail(path, c.label, "composition without parts");
            return;
        }
        if (!shape_within(c.source, c.parts.front().source))
            fail(path, c.label, "source is not inside the source of the first part");
        const auto acc = list(c.parts, path + ".");
        if (!acc) return;
        const ShapeDescriptor reached = scale_shape(c.parts.back().target, *acc);
        if (!shape_within(reached, c.target))
            fail(path, c.label,
                 "target " + to_literal(c.target) + " does not contain the chain's end " + to_literal(reached));
        double p = 1.0;
        for (const auto& part : c.parts) p *= part.ledger.product();
        ledger_is(c, path, p);
    }

    void prop2(const EmbeddingClaim& c, const std::string& path)
    {
        const auto s = disk_radii(c.source);
        const auto lambda = need<double>(c, path, "lambda");
        if (!s || s->size() != 3 || !lambda || !c.reshaped) {
            fail(path, c.label, "three-factor reshaping needs three disks and a reshaped shape");
            return;
        }
        const auto& r = *s;
        if (r[0] > r[1] * (1 + kRel) || r[1] > r[2] * (1 + kRel)) fail(path, c.label, "radii are not sorted");
        lambda_range(c, path, *lambda, r[1] / r[0]);
        expect(c, path, "reshaped", *c.reshaped, ShapeDescriptor::polydisk({r[0], r[1] / *lambda, *lambda * r[2]}));
        if (!close(c.scale, c.ledger.product()))
            fail(path, c.label, "constant " + format_double(c.scale) + " is not the ledger product");
        expect(c, path, "target", c.target, scale_shape(*c.reshaped, c.scale));
        composition(c, path);
    }

    void prop2_factors(const EmbeddingClaim& c, const std::string& path)
    {
        const auto Q = disk_radii(c.source);
        const auto i0 = need<int>(c, path, "i0");
        const auto a = need<int>(c, path, "a");
        const auto b = need<int>(c, path, "b");
        const auto lambda = need<double>(c, path, "lambda");
        if (!Q || !i0 || !a || !b || !lambda || !c.reshaped || c.parts.size() != 1 || c.parts[0].step != "prop2") {
            fail(path, c.label, "factor-wise three-factor reshaping is malformed");
            return;
        }
        const auto n = static_cast<int>(Q->size());
        for (int idx : {*i0, *a, *b})
            if (idx < 0 || idx >= n) {
                fail(path, c.label, "factor index out of range");
                return;
            }
        const auto at = [&](int i) { return (*Q)[static_cast<std::size_t>(i)]; };
        const auto& inner = c.parts[0];
        expect(c, path, "inner source", inner.source, ShapeDescriptor::polydisk({at(*i0), at(*a), at(*b)}));
        if (!close(inner.param("lambda"), *lambda)) fail(path, c.label, "inner lambda differs");
        std::vector<double> e = *Q;
        e[static_cast<std::size_t>(*a)] = at(*a) / *lambda;
        e[static_cast<std::size_t>(*b)] = *lambda * at(*b);
        expect(c, path, "reshaped", *c.reshaped, ShapeDescriptor::polydisk(e));
        if (!close(c.scale, inner.scale)) fail(path, c.label, "constant differs from the three-factor step");
        expect(c, path, "target", c.target, scale_shape(*c.reshaped, c.scale));
        ledger_is(c, path, inner.ledger.product());
        claim(inner, path + ".0");
    }

    void main_lemma(const EmbeddingClaim& c, const std::string& path)
    {
        const auto s = need<double>(c, path, "s");
        const auto R = need<double>(c, path, "R");
        const auto k = need<std::size_t>(c, path, "factor");
        if (!s || !R || !k) return;
        if (*R < (1.0 / 3.0) * (1 - kRel)) fail(path, c.label, "R = " + format_double(*R) + " below 1/3");
        if (*k >= c.source.factors().size()) {
            fail(path, c.label, "factor index out of range");
            return;
        }
        expect(c, path, "ball factor", ShapeDescriptor({c.source.factors()[*k]}),
               ShapeDescriptor::ball(2, *s * *R));
        expect(c, path, "target", c.target,
               replace_factor(c.source, *k, {Surface{*s * *s}, Disk2{10.0 * *s * *R * *R}}));
    }

    void moser(const EmbeddingClaim& c, const std::string& path)
    {
        const auto from = need<double>(c, path, "area_from");
        const auto to = need<double>(c, path, "area_to");
        const auto k = need<std::size_t>(c, path, "factor");
        if (!from || !to || !k) return;
        if (!close(*from, *to))
            fail(path, c.label, "Moser equivalence needs equal areas, got " + format_double(*from) + " and " +
                                    format_double(*to));
        if (*k >= c.source.factors().size()) {
            fail(path, c.label, "factor index out of range");
            return;
        }
        expect(c, path, "surface factor", ShapeDescriptor({c.source.factors()[*k]}), ShapeDescriptor({Surface{*from}}));
        expect(c, path, "target", c.target, replace_factor(c.source, *k, {Surface{*to}}));
    }

    void lemma31(const EmbeddingClaim& c, const std::string& path)
    {
        const auto t = need<double>(c, path, "t");
        const auto W = need<double>(c, path, "W");
        const auto k = need<std::size_t>(c, path, "factor");
        if (!t || !W || !k) return;
        if (*W > 0.1 * (1 + kRel)) fail(path, c.label, "W = " + format_double(*W) + " exceeds 1/10");
        if (*k + 1 >= c.source.factors().size()) {
            fail(path, c.label, "factor index out of range");
            return;
        }
        expect(c, path, "source pair", slice(c.source, *k, *k + 2),
               ShapeDescriptor({Disk2{*W * *t}, Surface{*t * *t}}));
        const ShapeDescriptor want =
            replace_factor(replace_factor(c.source, *k + 1, {Disk2{*t}}), *k, {Disk2{2.0 * *W * *t}});
        expect(c, path, "target", c.target, want);
    }

    void permute(const EmbeddingClaim& c, const std::string& path)
    {
        const auto& fs = c.source.factors();
        const auto& ft = c.target.factors();
        std::vector<bool> used(ft.size(), false);
        bool ok = fs.size() == ft.size();
        for (std::size_t i = 0; ok && i < fs.size(); ++i) {
            bool found = false;
            for (std::size_t j = 0; j < ft.size() && !found; ++j) {
                if (!used[j] && approx_equal(ShapeDescriptor({fs[i]}), ShapeDescriptor({ft[j]}), kRel))
                    used[j] = found = true;
            }
            ok = found;
        }
        if (!ok) fail(path, c.label, "target is not a permutation of the source factors");
    }

    void times(const EmbeddingClaim& c, const std::string& path)
    {
        if (c.parts.size() != 1) {
            fail(path, c.label, "product with identity needs one premise");
            return;
        }
        const auto& p = c.parts[0];
        const std::size_t ms = p.source.factors().size(), mt = p.target.factors().size();
        if (c.source.factors().size() < ms || c.target.factors().size() < mt) {
            fail(path, c.label, "premise has more factors than the claim");
            return;
        }
        expect(c, path, "premise source", slice(c.source, 0, ms), p.source);
        expect(c, path, "premise target", slice(c.target, 0, mt), p.target);
        expect(c, path, "identity factors", slice(c.target, mt, c.target.factors().size()),
               slice(c.source, ms, c.source.factors().size()));
        claim(p, path + ".0");
    }

    void by_rule(const EmbeddingClaim& c, const std::string& path)
    {
        switch (c.rule) {
        case Rule::Inclusion:
            if (!shape_within(c.source, c.target))
                fail(path, c.label, "inclusion " + to_literal(c.source) + " ⊂ " + to_literal(c.target) + " fails");
            ledger_is(c, path, c.ledger.empty() ? 1.0 : c.ledger.product());
            break;
        case Rule::Scaling: {
            const auto C = need<double>(c, path, "C");
            if (!C || c.parts.size() != 1) {
                fail(path, c.label, "scaling needs a constant and one premise");
                return;
            }
            expect(c, path, "source", c.source, scale_shape(c.parts[0].source, *C));
            expect(c, path, "target", c.target, scale_shape(c.parts[0].target, *C));
            claim(c.parts[0], path + ".0");
            break;
        }
        case Rule::Composition: composition(c, path); break;
        case Rule::ExplicitMap:
            if (!c.evidence) fail(path, c.label, "explicit map claim without a map");
            break;
        case Rule::CitedResult:
            if (c.citation == Citation::None) fail(path, c.label, "cited result without a citation");
            break;
        case Rule::MoserEquivalence: moser(c, path); break;
        }
    }

    void evidence(const EmbeddingClaim& c, const std::string& path)
    {
        ++evidence_;
        MapPtr m;
        try {
            m = map_from_descriptor(*c.evidence);
        } catch (const std::exception& e) {
            fail(path, c.label, std::string("evidence does not load: ") + e.what());
            return;
        }
        const ShapeDescriptor dom = c.evidence_domain ? *c.evidence_domain : m->domain();
        const ShapeDescriptor tgt = c.evidence_target ? *c.evidence_target : m->target();
        SampleSpec spec;
        spec.count = opt_.evidence_samples;
        spec.seed = opt_.seed;
        // differentials of the disk-to-box stages blow up at the rim; the
        // symplectic identity is checked a little inside
        const auto sym = check_symplectic(*m, scale_shape(dom, 0.95), spec);
        worst_residual_ = std::max(worst_residual_, sym.margin);
        if (!sym.passed())
            fail(path, c.label, "evidence map is not symplectic: residual " + format_double(sym.margin));
        const auto con = check_containment(*m, dom, tgt, spec);
        if (!con.passed())
            fail(path, c.label, "evidence map leaves " + to_literal(tgt) + ": slack " + format_double(con.margin));
    }

    const ValidationOptions& opt_;
    std::vector<std::string> problems_;
    std::size_t claims_ = 0;
    std::size_t evidence_ = 0;
    double worst_residual_ = 0.0;
};

}  // namespace

VerificationReport validate_chain(const std::vector<EmbeddingClaim>& claims, const ValidationOptions& opt)
{
    Stopwatch sw;
    VerificationReport r;
    r.check = "chain";
    Validator v(opt);
    v.list(claims, "");
    r.samples = v.claims();
    r.margin = static_cast<double>(v.problems().size());
    r.metrics["claims"] = static_cast<double>(v.claims());
    r.metrics["evidence_checked"] = static_cast<double>(v.evidence_checked());
    if (v.evidence_checked() > 0) r.metrics["evidence_symplectic_residual"] = v.evidence_worst_residual();
    r.notes = v.problems();
    if (!r.notes.empty()) {
        r.verdict = Verdict::Fail;
        const std::string& first = r.notes.front();
        // "claim <top>[.<sub>...] (...)"
        r.metrics["offending_claim"] = std::stod(first.substr(6, first.find_first_of(". ", 6) - 6));
    }
    r.wall_time = sw.seconds();
    return r;
}

VerificationReport validate_claim(const EmbeddingClaim& claim, const ValidationOptions& opt)
{
    return validate_chain({claim}, opt);
}

}  // namespace polyembed

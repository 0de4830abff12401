#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "polyembed/maps/linear.hpp"
#include "polyembed/maps/map_node.hpp"
#include "polyembed/maps/strip.hpp"
#include "polyembed/sampling.hpp"
#include "polyembed/shape_literal.hpp"
#include "polyembed/verify/checks.hpp"
#include "polyembed/verify/collision_index.hpp"
#include "polyembed/verify/double_points.hpp"
#include "polyembed/verify/phi_checks.hpp"
#include "polyembed/verify/report.hpp"

using namespace polyembed;

namespace {

// (x, y) -> (|x|, y): two-to-one, area preserving up to sign
class FoldNode : public MapNode {
public:
    FoldNode() : MapNode(ShapeDescriptor::polydisk({1}), ShapeDescriptor::polydisk({1})) {}
    MapKind kind() const override { return MapKind::Linear; }
    Vec eval(const Vec& p) const override
    {
        Vec q = p;
        q[0] = std::abs(p[0]);
        return q;
    }
    nlohmann::json parameters() const override { return nlohmann::json::object(); }
};

SampleSpec spec_of(std::size_t n, std::uint64_t seed = 1)
{
    SampleSpec s;
    s.count = n;
    s.seed = seed;
    return s;
}

Mat diag(std::initializer_list<double> v)
{
    Vec d(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) d[i++] = x;
    return d.asDiagonal();
}

}  // namespace

TEST(CheckSymplectic, PassesOnSymplecticAndFailsOtherwise)
{
    const auto disk = ShapeDescriptor::polydisk({1});
    const auto good = check_symplectic(*make_linear(diag({2, 0.5})), disk, spec_of(1000));
    EXPECT_TRUE(good.passed());
    EXPECT_LE(good.margin, 1e-15);
    const auto bad = check_symplectic(*make_linear(diag({2, 1})), disk, spec_of(1000));
    EXPECT_EQ(bad.verdict, Verdict::Fail);
    EXPECT_NEAR(bad.margin, 1.0, 1e-12);
    EXPECT_FALSE(bad.witnesses.empty());
}

TEST(CheckInjective, FindsTheFold)
{
    const FoldNode fold;
    std::vector<Vec> pts;
    for (double x : {0.3, -0.3, 0.5}) {
        Vec p(2);
        p << x, 0.1;
        pts.push_back(p);
    }
    const auto r = check_injective_points(fold, pts);
    EXPECT_EQ(r.verdict, Verdict::Fail);
    EXPECT_EQ(r.witnesses.size(), 2u);
    EXPECT_TRUE(check_injective(*make_identity(ShapeDescriptor::polydisk({1})), ShapeDescriptor::polydisk({1}),
                                spec_of(5000))
                    .passed());
}

TEST(CheckInjective, LatticeMarginOfAQuotient)
{
    const auto q = make_torus_quotient(1);
    InjectivityOptions opt;
    opt.lattice_period = 1.0;
    opt.min_lattice_margin = 0.1;
    // a disk of radius 1 wraps onto itself; one of radius 0.3 does not
    const auto wraps = check_injective(*q, ShapeDescriptor::polydisk({1}), spec_of(4000), opt);
    EXPECT_EQ(wraps.verdict, Verdict::Fail);
    const auto fits = check_injective(*q, ShapeDescriptor::polydisk({0.3}), spec_of(4000), opt);
    EXPECT_TRUE(fits.passed());
    // 1 - 2 * 0.3 = 0.4 exceeds the search radius, so the margin is the radius
    EXPECT_NEAR(fits.margin, 0.25, 1e-12);
    EXPECT_EQ(fits.metrics.at("lattice_margin_is_lower_bound"), 1.0);
}

TEST(CheckInjective, LatticeMarginMatchesBruteForce)
{
    // random points of a thin 4d slab; margin against an all-pairs oracle
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec> pts;
    for (int i = 0; i < 400; ++i) {
        Vec p(4);
        p << 3 * u(rng), 0.2 * u(rng), 2 * u(rng), 0.2 * u(rng);
        pts.push_back(p);
    }
    double oracle = INFINITY;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            for (int kx = -3; kx <= 3; ++kx)
                for (int ky = -3; ky <= 3; ++ky) {
                    if (kx == 0 && ky == 0) continue;
                    Vec d = pts[i] - pts[j];
                    d[0] -= kx;
                    d[2] -= ky;
                    oracle = std::min(oracle, d.norm());
                }
    InjectivityOptions opt;
    opt.lattice_period = 1.0;
    const auto r = check_injective_points(*make_identity(ShapeDescriptor::plane(2)), pts, opt);
    ASSERT_LT(oracle, 0.25);
    EXPECT_NEAR(r.margin, oracle, 1e-14);
}

TEST(CheckContainment, ReportsEscapes)
{
    const auto m = make_linear(diag({2, 0.5}));
    const auto in = check_containment(*m, ShapeDescriptor::polydisk({1}), parse_shape("box(-2:2,-1:1)"), spec_of(2000));
    EXPECT_TRUE(in.passed());
    EXPECT_GT(in.margin, 0);
    const auto out = check_containment(*m, ShapeDescriptor::polydisk({1}), ShapeDescriptor::polydisk({1}), spec_of(2000));
    EXPECT_EQ(out.verdict, Verdict::Fail);
    EXPECT_LT(out.margin, 0);
}

TEST(CheckVolume, DistinguishesScaling)
{
    const auto ball = ShapeDescriptor::ball(2, 1);
    const auto L = build_polterovich_linear(1.0);
    EXPECT_TRUE(check_volume_preserved(*L.map, ball, spec_of(20000)).passed());
    EXPECT_EQ(check_volume_preserved(*make_linear(diag({1.1, 1.1, 1.1, 1.1})), ball, spec_of(20000)).verdict,
              Verdict::Fail);
}

TEST(CheckExpanding, SmallestSingularValue)
{
    const auto disk = ShapeDescriptor::polydisk({1});
    const auto id = check_expanding(*make_identity(disk), disk, spec_of(100));
    EXPECT_TRUE(id.passed());
    EXPECT_NEAR(id.margin, 1.0, 1e-15);
    const auto shrink = check_expanding(*make_linear(diag({2, 0.5})), disk, spec_of(100));
    EXPECT_EQ(shrink.verdict, Verdict::Fail);
    EXPECT_NEAR(shrink.margin, 0.5, 1e-15);
}

TEST(CollisionIndex, NeighboursMatchBruteForceWithWrap)
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<Vec> pts;
    for (int i = 0; i < 600; ++i) {
        Vec p(4);
        p << u(rng), 0.3 * u(rng), u(rng), 0.3 * u(rng);
        pts.push_back(p);
    }
    const double r = 0.2;
    CollisionIndex idx(4, r, 1.0);
    idx.insert(pts);
    for (std::size_t i = 0; i < pts.size(); i += 7) {
        std::size_t brute = 0, found = 0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            Vec d = pts[i] - pts[j];
            d[0] -= std::round(d[0]);
            d[2] -= std::round(d[2]);
            brute += d.norm() < r;
        }
        idx.for_each_neighbor(i, r, [&](std::size_t, const Vec& d, const Vec2&) {
            ++found;
            EXPECT_LT(d.norm(), r);
        });
        EXPECT_EQ(found, brute) << "point " << i;
    }
}

TEST(DoublePoints, LiftRemovesThem)
{
    const StripImmersionModel model(0.1);
    const auto fiber = ShapeDescriptor::polydisk({0.1});
    const auto flat = estimate_double_point_volume(model, fiber, spec_of(20000), 1.0);
    EXPECT_TRUE(flat.passed());
    const auto lifted = estimate_double_point_volume(model, fiber, spec_of(20000), 1.0, 0.2);
    EXPECT_TRUE(lifted.passed());
    EXPECT_EQ(lifted.margin, 0.0);
}

TEST(PhiChecks, AllPropertiesHoldAtModestSampleCounts)
{
    PhiCheckOptions opt;
    opt.grid = 20000;
    opt.property1_samples = 20000;
    opt.property2_disks = 20;
    opt.property2_pairs = 200;
    PhiMeasurements m;
    const auto r = check_phi_properties(PeriodicDiffeo1D(1.0), opt, &m);
    EXPECT_TRUE(r.passed()) << to_key_value(r);
    EXPECT_EQ(m.lattice_hits, 0u);
    EXPECT_GE(m.min_deriv, 0.9);
}

TEST(Report, CombineAndSerialise)
{
    VerificationReport a, b;
    a.check = "a";
    b.check = "b";
    b.verdict = Verdict::Inconclusive;
    EXPECT_EQ(combine({a, b}), Verdict::Inconclusive);
    b.verdict = Verdict::Fail;
    EXPECT_EQ(combine({a, b}), Verdict::Fail);
    a.metrics["x"] = 1.5;
    const auto j = to_json(a);
    EXPECT_EQ(j.at("check"), "a");
    EXPECT_NE(to_key_value(a).find("x=1.5"), std::string::npos);
}

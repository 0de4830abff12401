#include <gtest/gtest.h>

#include <Eigen/SVD>

#include <cmath>
#include <numbers>

#include "polyembed/errors.hpp"
#include "polyembed/maps/bump.hpp"
#include "polyembed/maps/cotangent_lift.hpp"
#include "polyembed/maps/descriptor.hpp"
#include "polyembed/maps/disk_rectangle.hpp"
#include "polyembed/maps/linear.hpp"
#include "polyembed/maps/main_lemma.hpp"
#include "polyembed/maps/map_node.hpp"
#include "polyembed/maps/periodic_diffeo.hpp"
#include "polyembed/maps/snake.hpp"
#include "polyembed/maps/strip.hpp"
#include "polyembed/sampling.hpp"
#include "polyembed/shape_literal.hpp"
#include "polyembed/symplectic.hpp"

using namespace polyembed;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Vec> points(const ShapeDescriptor& s, std::size_t n, std::uint64_t seed = 3)
{
    SampleSpec spec;
    spec.count = n;
    spec.seed = seed;
    return sample(s, spec);
}

// composite Simpson rule
template <class F>
double simpson(F f, double a, double b, int n)
{
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
}

}  // namespace

// ---------------------------------------------------------------- Phi

class PhiTest : public ::testing::TestWithParam<double> {};

TEST_P(PhiTest, SpikeShapeAndNormalisation)
{
    const PeriodicDiffeo1D phi(GetParam());
    EXPECT_NEAR(phi.deriv(0.0), 100 * GetParam(), 1e-9 * 100 * GetParam());
    EXPECT_GE(phi.base(), 0.9);
    // dPhi integrates to one over a period, spike resolved separately
    const double d = phi.delta();
    const double total = simpson([&](double x) { return phi.deriv(x); }, -d, d, 20000) +
                         simpson([&](double x) { return phi.deriv(x); }, d, 1 - d, 2000);
    EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST_P(PhiTest, FixesIntegersAndCommutesWithTranslation)
{
    const PeriodicDiffeo1D phi(GetParam());
    for (int m = -5; m <= 5; ++m) EXPECT_NEAR(phi.value(m), m, 1e-12);
    for (double x : {0.1234, -2.71, 0.5 + 1e-7})
        EXPECT_NEAR(phi.value(x + 1) - phi.value(x), 1.0, 1e-12);
    EXPECT_LE(phi.displacement_bound(), 1e-4);
}

TEST_P(PhiTest, InverseRoundTripsThroughTheSpike)
{
    const PeriodicDiffeo1D phi(GetParam());
    for (double x : {0.0, 0.3, -0.49, 2.0 + 0.5 * phi.delta(), -1.0 - 0.99 * phi.delta()})
        EXPECT_NEAR(phi.inverse(phi.value(x)), x, 1e-10);
}

TEST_P(PhiTest, PsiIsAreaPreservingWithItsInverse)
{
    const auto psi = make_phi_shear(PeriodicDiffeo1D(GetParam()));
    for (const auto& p : points(ShapeDescriptor::polydisk({GetParam()}), 500)) {
        EXPECT_NEAR(psi->jacobian(p).determinant(), 1.0, 1e-12);
        EXPECT_LT((*psi->inverse(psi->eval(p)) - p).norm(), 1e-9 * (1 + p.norm()));
    }
}

INSTANTIATE_TEST_SUITE_P(Radii, PhiTest, ::testing::Values(1.0, 10.0, 100.0));

// ---------------------------------------------------------------- bump

TEST(Bump, PlateauSupportAndSlope)
{
    const BumpFunction b;
    EXPECT_EQ(b.value(0.0), 1.0);
    EXPECT_EQ(b.value(1.0 / 6.0), 1.0);
    EXPECT_EQ(b.value(1.0 / 3.0), 0.0);
    EXPECT_EQ(b.value(-0.4), 0.0);
    double slope = 0;
    for (int i = 0; i <= 100000; ++i) slope = std::max(slope, std::abs(b.deriv(-0.5 + i * 1e-5)));
    EXPECT_NEAR(slope, 7.0, 1e-12);
    // the ramp down from 1 to 0 integrates the derivative exactly
    EXPECT_NEAR(simpson([&](double x) { return b.deriv(x); }, 1.0 / 6.0, 1.0 / 3.0, 42000), -1.0, 1e-9);
    for (double x : {0.2, 0.3, -0.25}) EXPECT_NEAR(b.deriv(x), (b.value(x + 1e-7) - b.value(x - 1e-7)) / 2e-7, 1e-6);
}

// ---------------------------------------------------------------- linear

class LinearTest : public ::testing::TestWithParam<double> {};

TEST_P(LinearTest, SymplecticAndShaped)
{
    const double R = GetParam();
    const auto L = build_polterovich_linear(R);
    EXPECT_LE(linear_symplectic_residual(L.matrix), 1e-12);
    EXPECT_NEAR(L.cos_theta, 1 / (9 * R * R), 1e-15);
    EXPECT_NEAR(L.section_radius, 1.0 / 3.0, 1e-12);
    EXPECT_LT(L.projection_radius, 10 * R * R);
    EXPECT_LE(L.projection_radius, std::sqrt(72.0) * R * R + 1e-9);
    for (const auto& p : points(L.map->domain(), 2000)) ASSERT_TRUE(contains(L.map->target(), L.map->eval(p)));
}

INSTANTIATE_TEST_SUITE_P(Radii, LinearTest, ::testing::Values(1.0 / 3.0, 0.5, 1.0, 2.0, 5.0));

TEST(Linear, RejectsSmallRadius) { EXPECT_THROW(build_polterovich_linear(0.3), HypothesisViolation); }

TEST(Linear, SymplecticCompletionIsSymplectic)
{
    Vec a(4), b(4);
    a << 1, 0.3, 0, 0.2;
    b << 0, 0.1, 1, 0;
    b /= form_eval(a, b);
    EXPECT_LE(symplectic_residual(symplectic_completion(a, b)), 1e-12);
}

// ---------------------------------------------------------------- main lemma

TEST(MainLemma, ChainRuleMatchesFiniteDifferences)
{
    const auto ml = build_main_lemma_map(1.0);
    for (const auto& p : points(ml.lifted->domain(), 200)) {
        const Mat J = ml.lifted->jacobian(p);
        const Mat F = finite_difference_jacobian(*ml.lifted, p, 1e-7);
        // Phi is flat away from its spikes, where the samples land
        EXPECT_LE((J - F).cwiseAbs().maxCoeff(), 1e-5 * std::max(1.0, J.cwiseAbs().maxCoeff()));
        EXPECT_LE(symplectic_residual(J), 1e-10);
    }
}

TEST(MainLemma, ImageLiesInSurfaceTimesDisk)
{
    for (double R : {1.0 / 3.0, 1.5}) {
        const auto ml = build_main_lemma_map(R);
        EXPECT_TRUE(approx_equal(ml.map->target(), parse_shape("sigma(1) x disk(" + format_double(10 * R * R) + ")")));
        for (const auto& p : points(ml.map->domain(), 3000)) ASSERT_TRUE(contains(ml.map->target(), ml.map->eval(p)));
    }
    EXPECT_THROW(build_main_lemma_map(0.2), HypothesisViolation);
}

TEST(TorusQuotient, ReducesFirstPairOnly)
{
    Vec p(4);
    p << 2.25, 7.0, -0.5, 9.0;
    const Vec q = torus_quotient(p);
    EXPECT_DOUBLE_EQ(q[0], 0.25);
    EXPECT_DOUBLE_EQ(q[2], 0.5);
    EXPECT_EQ(q[1], 7.0);
    EXPECT_EQ(q[3], 9.0);
}

// ---------------------------------------------------------------- strip lift

TEST(StripLift, MatchesClosedFormFlow)
{
    const double w = 0.1, t = 0.2;
    const auto m = strip_lift(w, t);
    const BumpFunction beta;
    for (const auto& p : points(m->domain(), 1000)) {
        const Vec q = m->eval(p);
        EXPECT_EQ(q[0], p[0]);
        EXPECT_EQ(q[1], p[1]);
        EXPECT_NEAR(q[2], p[2] + t * beta.deriv(p[0]) * p[1], 1e-15);
        EXPECT_NEAR(q[3], p[3] + t * beta.value(p[0]), 1e-15);
        EXPECT_LE(symplectic_residual(m->jacobian(p)), 1e-14);
    }
}

TEST(StripLift, HypothesesAreEnforced)
{
    EXPECT_THROW(strip_lift(0.2, 0.1), HypothesisViolation);
    EXPECT_THROW(strip_lift(0.05, 0.11), HypothesisViolation);
    EXPECT_THROW(strip_lift(0.0, 0.0), HypothesisViolation);
}

TEST(StripModel, OverlapAreaAndPreimages)
{
    const StripImmersionModel m(0.1);
    EXPECT_NEAR(m.overlap_area(), 0.04, 1e-15);
    EXPECT_EQ(m.preimage_count(0.0, 0.0), 2);
    EXPECT_EQ(m.preimage_count(0.3, 0.0), 1);
    EXPECT_EQ(m.preimage_count(0.3, 0.3), 0);
    EXPECT_EQ(StripImmersionModel(0.1, true).overlap_area(), 0.0);
}

// ---------------------------------------------------------------- snake

TEST(Snake, ExpandingWithOrthogonalColumns)
{
    const auto s = snake_embedding(1, 40, 2, 20);
    for (const auto& p : points(s->domain(), 3000)) {
        const Mat J = s->jacobian(p);
        EXPECT_NEAR(J.col(0).dot(J.col(1)), 0.0, 1e-9);
        const Eigen::JacobiSVD<Mat> svd(J);
        EXPECT_GE(svd.singularValues().minCoeff(), 1 - 1e-9);
        EXPECT_TRUE(contains(parse_shape("rect(10,100)"), s->eval(p)));
    }
}

TEST(Snake, PreconditionsNameTheFailedInequality)
{
    EXPECT_THROW(snake_embedding(2, 40, 1, 20), HypothesisViolation);   // L1 > L1'
    EXPECT_THROW(snake_embedding(1, 40, 2, 10), HypothesisViolation);   // L1 L2 > L1' L2'
    EXPECT_THROW(snake_embedding(3, 1, 3, 3), HypothesisViolation);     // L1 > L2
}

TEST(CotangentLift, SymplecticAndFiberContracting)
{
    const auto lift = cotangent_lift(snake_embedding(1, 40, 2, 20));
    for (const auto& p : points(lift->domain(), 300)) {
        EXPECT_LE(symplectic_residual(lift->jacobian(p)), 1e-6);
        const Vec q = lift->eval(p);
        EXPECT_LE(std::hypot(q[2], q[3]), std::hypot(p[2], p[3]) * (1 + 1e-12));
        EXPECT_TRUE(contains(lift->target(), q));
    }
}

TEST(AppendixChain, FaceAreasMatchRadii)
{
    const auto c = build_appendix_chain(1, 40, 2, 20);
    EXPECT_NEAR(kPi * c.source_radii[0] * c.source_radii[0], std::sqrt(2.0) * 1, 1e-12);
    EXPECT_NEAR(kPi * c.source_radii[1] * c.source_radii[1], std::sqrt(2.0) * 40, 1e-12);
    EXPECT_NEAR(kPi * c.target_radii[0] * c.target_radii[0], 10 * 2, 1e-12);
    EXPECT_NEAR(kPi * c.target_radii[1] * c.target_radii[1], 10 * 20, 1e-12);
    for (const auto& p : points(c.map->domain(), 200)) ASSERT_TRUE(contains(c.map->target(), c.map->eval(p)));
}

// ---------------------------------------------------------------- disk <-> rectangle

TEST(DiskRectangle, AreaPreservingBijection)
{
    const auto f = disk_rectangle_map(2.0, 3.0, Vec2(1, -1));
    const auto g = rectangle_disk_map(2.0, 3.0, Vec2(1, -1));
    for (const auto& p : points(f->domain(), 2000)) {
        const Vec q = f->eval(p);
        ASSERT_TRUE(contains(f->target(), q));
        EXPECT_NEAR(f->jacobian(p).determinant(), 1.0, 1e-9);
        EXPECT_LT((g->eval(q) - p).norm(), 1e-9);
    }
    EXPECT_NEAR(volume(f->target()), 4 * kPi, 1e-12);
}

TEST(DiskRectangle, FlagsEvaluationNearTheBoundary)
{
    const DiskRectangleNode n(1.0, std::sqrt(kPi), Vec2::Zero(), false);
    EXPECT_TRUE(n.forward(Vec2(1 - 1e-8, 0)).degraded);
    EXPECT_FALSE(n.forward(Vec2(0.2, 0.1)).degraded);
}

// ---------------------------------------------------------------- descriptors and composition

TEST(Descriptor, ReplayReproducesEvaluationExactly)
{
    const std::vector<MapPtr> maps{build_main_lemma_map(1.0).map, strip_lift(0.1, 0.2),
                                   cotangent_lift(snake_embedding(1, 4, 1, 4)), disk_rectangle_map(1.5)};
    for (const auto& m : maps) {
        const auto replay = map_from_descriptor(nlohmann::json::parse(to_descriptor(*m).dump()));
        EXPECT_EQ(replay->kind(), m->kind());
        for (const auto& p : points(m->domain(), 50)) EXPECT_EQ(replay->eval(p), m->eval(p));
    }
}

TEST(Descriptor, MalformedInputIsAParseError)
{
    EXPECT_THROW(map_from_descriptor(nlohmann::json::parse(R"({"kind":"warp"})")), ParseError);
    EXPECT_THROW(map_from_descriptor(nlohmann::json::parse("[1,2]")), ParseError);
}

TEST(Compose, RejectsMismatchedShapes)
{
    // strip lift expects a 4-dimensional domain around the strip
    EXPECT_THROW(compose({strip_lift(0.1, 0.2), make_identity(ShapeDescriptor::polydisk({5, 5}))}),
                 ShapeChainError);
    EXPECT_THROW(make_inclusion(ShapeDescriptor::polydisk({2}), ShapeDescriptor::polydisk({1})), ShapeChainError);
}

#include "polyembed/maps/main_lemma.hpp"

#include <cmath>
#include <numbers>

#include "polyembed/errors.hpp"
#include "polyembed/maps/cotangent_lift.hpp"
#include "polyembed/maps/disk_rectangle.hpp"
#include "polyembed/maps/snake.hpp"
#include "polyembed/shape_literal.hpp"

namespace polyembed {

MainLemmaMap build_main_lemma_map(double R)
{
    if (!(R >= 1.0 / 3.0))
        throw HypothesisViolation("R below 1/3: the main lemma needs R >= 1/3 (got " + format_double(R) + ")");
    PolterovichLinear linear = build_polterovich_linear(R);
    PeriodicDiffeo1D phi(linear.rho);
    MapPtr shear = product_with_identity(make_phi_shear(phi), ShapeDescriptor::plane(1));
    MapPtr lifted = compose({shear, linear.map});
    MapPtr map = compose({make_torus_quotient(2), shear, linear.map},
                         ShapeDescriptor({Surface{1.0}, Disk2{10.0 * R * R}}));
    return MainLemmaMap{R, std::move(linear), phi, std::move(shear), std::move(lifted), std::move(map)};
}

AppendixChain build_appendix_chain(double L1, double L2, double L1p, double L2p)
{
    constexpr double a = std::numbers::sqrt2 / 2.0;
    constexpr double pi = std::numbers::pi;
    AppendixChain c{L1, L2, L1p, L2p, {}, {}, nullptr, nullptr, nullptr};
    c.snake = snake_embedding(L1, L2, L1p, L2p);
    c.lift = cotangent_lift(c.snake, a);

    const double r1 = std::sqrt(2.0 * a * L1 / pi), r2 = std::sqrt(2.0 * a * L2 / pi);
    const double q1 = std::sqrt(10.0 * L1p / pi), q2 = std::sqrt(10.0 * L2p / pi);
    c.source_radii = {r1, r2};
    c.target_radii = {q1, q2};

    // pair k carries (x_k, p_k); its box face is (0, L_k) x (-a, a)
    const MapPtr in0 = disk_rectangle_map(r1, L1 / (2.0 * a), Vec2(0.5 * L1, 0.0));
    const MapPtr in1 = disk_rectangle_map(r2, L2 / (2.0 * a), Vec2(0.5 * L2, 0.0));
    const MapPtr out0 = rectangle_disk_map(q1, 5.0 * L1p / 2.0, Vec2(2.5 * L1p, 0.0));
    const MapPtr out1 = rectangle_disk_map(q2, 5.0 * L2p / 2.0, Vec2(2.5 * L2p, 0.0));

    c.map = compose({
        product_with_identity(ShapeDescriptor({Disk2{q1}}), out1, ShapeDescriptor{}),
        product_with_identity(out0, out1->domain()),
        c.lift,
        product_with_identity(in0->target(), in1, ShapeDescriptor{}),
        product_with_identity(in0, ShapeDescriptor({Disk2{r2}})),
    });
    return c;
}

AppendixChain build_appendix_chain_for_radii(double r1, double r2, double r1p, double r2p)
{
    constexpr double pi = std::numbers::pi;
    const double L1 = pi * r1 * r1 / std::numbers::sqrt2, L2 = pi * r2 * r2 / std::numbers::sqrt2;
    const double L1p = pi * r1p * r1p / 10.0, L2p = pi * r2p * r2p / 10.0;
    return build_appendix_chain(L1, L2, L1p, L2p);
}

}  // namespace polyembed

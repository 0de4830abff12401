#pragma once

#include "polyembed/maps/map_node.hpp"

namespace polyembed {

/// (x, p) -> (I(x), dI(x)^{-T} p) on R^4 = T^*R^2, coordinates
/// (x1, x2, p1, p2). Its differential involves second derivatives of I and
/// is taken by finite differences.
class CotangentLiftNode : public MapNode {
public:
    CotangentLiftNode(MapPtr base, double fiber_half_side);

    MapKind kind() const override { return MapKind::CotangentLift; }
    Vec eval(const Vec& p) const override;
    JacobianMode jacobian_mode() const override { return JacobianMode::FiniteDifference; }
    double fd_step(const Vec& p) const override;
    nlohmann::json parameters() const override { return {{"fiber_half_side", fiber_half_side_}}; }
    std::vector<MapPtr> children() const override { return {base_}; }

    const MapNode& base() const { return *base_; }

private:
    MapPtr base_;
    double fiber_half_side_;
};

/// Requires a planar base. When the base domain and target are rectangles the
/// lift's domain is X x (-a, a)^2 and its target I(X)'s box x (-1, 1)^2,
/// which holds for expanding I whenever a <= 2^{-1/2}.
/// Throws SingularDifferential when dI is singular at an evaluation point.
MapPtr cotangent_lift(MapPtr base, double fiber_half_side = 0.70710678118654752);

}  // namespace polyembed

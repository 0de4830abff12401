#include "polyembed/maps/cotangent_lift.hpp"

#include <cmath>

#include "polyembed/errors.hpp"

namespace polyembed {

namespace {

ShapeDescriptor lift_shape(const ShapeDescriptor& base, double half_side)
{
    if (base.factors().size() == 1) {
        if (const auto* r = std::get_if<Rectangle>(&base.factors().front()); r && r->sides.size() == 2)
            return ShapeDescriptor::box({r->lower[0], r->lower[1], -half_side, -half_side},
                                        {r->sides[0], r->sides[1], 2.0 * half_side, 2.0 * half_side});
    }
    return ShapeDescriptor::plane(2);
}

}  // namespace

CotangentLiftNode::CotangentLiftNode(MapPtr base, double fiber_half_side)
    : MapNode(lift_shape(base->domain(), fiber_half_side), lift_shape(base->target(), 1.0)),
      base_(std::move(base)),
      fiber_half_side_(fiber_half_side)
{
}

Vec CotangentLiftNode::eval(const Vec& p) const
{
    check_dimension(p);
    const Vec x = p.head(2);
    const Mat D = base_->jacobian(x);
    const double det = D.determinant();
    if (!(std::abs(det) > 1e-300) || !std::isfinite(det))
        throw SingularDifferential("base differential is singular at the evaluation point");
    Vec q(4);
    q.head(2) = base_->eval(x);
    q.tail(2) = D.transpose().partialPivLu().solve(p.tail(2));
    return q;
}

double CotangentLiftNode::fd_step(const Vec& p) const { return base_->fd_step(p.head(2)); }

MapPtr cotangent_lift(MapPtr base, double fiber_half_side)
{
    if (base->dimension() != 2) throw DimensionMismatch("cotangent lift needs a planar base map");
    if (!(fiber_half_side > 0)) throw std::invalid_argument("fiber half-side must be positive");
    return std::make_shared<CotangentLiftNode>(std::move(base), fiber_half_side);
}

}  // namespace polyembed

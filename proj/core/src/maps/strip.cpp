#include "polyembed/maps/strip.hpp"

#include <cmath>

#include "polyembed/errors.hpp"
#include "polyembed/shape_literal.hpp"

namespace polyembed {

namespace {

ShapeDescriptor lift_domain(double w)
{
    return ShapeDescriptor({Rectangle{{-0.5, -w}, {1.0, 2.0 * w}}, Disk2{w}});
}

}  // namespace

StripLiftNode::StripLiftNode(double w, double t)
    : MapNode(lift_domain(w), strip_separation_region(w)), w_(w), t_(t)
{
}

Vec strip_flow(const Vec& p, double t)
{
    if (p.size() != 4) throw DimensionMismatch("strip lift acts on R^4");
    const BumpFunction beta;
    Vec q = p;
    q[2] += t * beta.deriv(p[0]) * p[1];
    q[3] += t * beta.value(p[0]);
    return q;
}

Vec StripLiftNode::eval(const Vec& p) const
{
    check_dimension(p);
    return strip_flow(p, t_);
}

Mat StripLiftNode::jacobian(const Vec& p) const
{
    check_dimension(p);
    const double b1 = beta_.deriv(p[0]);
    Mat D = Mat::Identity(4, 4);
    D(2, 0) = t_ * beta_.second(p[0]) * p[1];
    D(2, 1) = t_ * b1;
    D(3, 0) = t_ * b1;
    return D;
}

std::optional<Vec> StripLiftNode::inverse(const Vec& q) const
{
    return strip_flow(q, -t_);
}

MapPtr strip_lift(double w, double t)
{
    if (!(w > 0 && w <= 0.1))
        throw HypothesisViolation("strip half-width must satisfy 0 < w <= 1/10 (got " + format_double(w) + ")");
    if (!(t >= 0 && t <= 2.0 * w))
        throw HypothesisViolation("flow time must satisfy 0 <= t <= 2w (got " + format_double(t) + ")");
    return std::make_shared<StripLiftNode>(w, t);
}

ShapeDescriptor strip_separation_region(double w)
{
    if (!(w > 0 && w <= 0.1))
        throw HypothesisViolation("strip half-width must satisfy 0 < w <= 1/10 (got " + format_double(w) + ")");
    return ShapeDescriptor({Disk2{1.0}, TranslatedDisk2{0.0, w, 2.0 * w}});
}

StripImmersionModel::StripImmersionModel(double half_width, bool remove_overlap)
    : w(half_width), overlap_removed(remove_overlap)
{
    if (!(w > 0 && w <= 0.1))
        throw HypothesisViolation("strip half-width must satisfy 0 < w <= 1/10 (got " + format_double(w) + ")");
}

bool StripImmersionModel::in_unit_square(double x, double y) const
{
    return std::abs(x) < 0.5 && std::abs(y) < 0.5;
}

bool StripImmersionModel::in_horizontal(double x, double y) const
{
    return std::abs(x) < 0.5 && std::abs(y) < w;
}

bool StripImmersionModel::in_vertical(double x, double y) const
{
    return std::abs(x) < w && std::abs(y) < 0.5;
}

bool StripImmersionModel::in_overlap(double x, double y) const
{
    return in_horizontal(x, y) && in_vertical(x, y);
}

bool StripImmersionModel::in_connector(double x, double y) const
{
    return !in_unit_square(x, y) && x * x + y * y < 1.0;
}

int StripImmersionModel::preimage_count(double x, double y) const
{
    if (in_overlap(x, y)) return overlap_removed ? 1 : 2;
    if (in_horizontal(x, y) || in_vertical(x, y)) return 1;
    return 0;
}

ShapeDescriptor StripImmersionModel::horizontal_strip() const
{
    return ShapeDescriptor({Rectangle{{-0.5, -w}, {1.0, 2.0 * w}}});
}

ShapeDescriptor StripImmersionModel::vertical_strip() const
{
    return ShapeDescriptor({Rectangle{{-w, -0.5}, {2.0 * w, 1.0}}});
}

}  // namespace polyembed

#include "polyembed/maps/disk_rectangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polyembed {

namespace {

constexpr double kBoundaryBand = 1e-6;

ShapeDescriptor disk_shape(double R) { return ShapeDescriptor({Disk2{R}}); }

ShapeDescriptor rect_shape(double W, double H, const Vec2& c)
{
    return ShapeDescriptor::box({c.x() - 0.5 * W, c.y() - 0.5 * H}, {W, H});
}

}  // namespace

DiskRectangleNode::DiskRectangleNode(double R, double width, Vec2 center, bool reverse)
    : MapNode(reverse ? rect_shape(width, std::numbers::pi * R * R / width, center) : disk_shape(R),
              reverse ? disk_shape(R) : rect_shape(width, std::numbers::pi * R * R / width, center)),
      R_(R),
      W_(width),
      H_(std::numbers::pi * R * R / width),
      center_(center),
      reverse_(reverse)
{
}

double DiskRectangleNode::area_left(double x) const
{
    const double s = std::clamp(x / R_, -1.0, 1.0);
    return R_ * R_ * (std::asin(s) + s * std::sqrt(1.0 - s * s)) + 0.5 * std::numbers::pi * R_ * R_;
}

DiskRectangleNode::Result DiskRectangleNode::forward(const Vec2& p) const
{
    const double half = std::sqrt(std::max(0.0, R_ * R_ - p.x() * p.x()));
    Result r;
    r.point = {center_.x() - 0.5 * W_ + area_left(p.x()) / H_, center_.y() + p.y() * H_ / (2.0 * half)};
    r.degraded = R_ - p.norm() < kBoundaryBand;
    return r;
}

DiskRectangleNode::Result DiskRectangleNode::backward(const Vec2& q) const
{
    const double target = (q.x() - center_.x() + 0.5 * W_) * H_;
    double lo = -R_, hi = R_;
    double x = std::clamp(R_ * (2.0 * target / (std::numbers::pi * R_ * R_) - 1.0), lo, hi);
    for (int it = 0; it < 200; ++it) {
        const double f = area_left(x) - target;
        if (f == 0.0) break;
        if (f > 0) hi = x;
        else lo = x;
        const double slope = 2.0 * std::sqrt(std::max(0.0, R_ * R_ - x * x));
        double next = slope > 0 ? x - f / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x || hi - lo <= 4e-16 * R_) break;
        x = next;
    }
    const double half = std::sqrt(std::max(0.0, R_ * R_ - x * x));
    Result r;
    r.point = {x, (q.y() - center_.y()) * 2.0 * half / H_};
    const double du = std::min(std::abs(q.x() - center_.x() + 0.5 * W_), std::abs(center_.x() + 0.5 * W_ - q.x()));
    const double dv = std::min(std::abs(q.y() - center_.y() + 0.5 * H_), std::abs(center_.y() + 0.5 * H_ - q.y()));
    r.degraded = std::min(du, dv) < kBoundaryBand || R_ - r.point.norm() < kBoundaryBand;
    return r;
}

Mat2 DiskRectangleNode::forward_jacobian(const Vec2& p) const
{
    const double x = p.x();
    const double h2 = R_ * R_ - x * x;
    const double half = std::sqrt(h2);
    Mat2 J;
    J << 2.0 * half / H_, 0.0, p.y() * H_ * x / (2.0 * h2 * half), H_ / (2.0 * half);
    return J;
}

Vec DiskRectangleNode::eval(const Vec& p) const
{
    check_dimension(p);
    const Vec2 a(p[0], p[1]);
    return Vec(reverse_ ? backward(a).point : forward(a).point);
}

Mat DiskRectangleNode::jacobian(const Vec& p) const
{
    check_dimension(p);
    const Vec2 a(p[0], p[1]);
    if (!reverse_) return Mat(forward_jacobian(a));
    return Mat(forward_jacobian(backward(a).point).inverse());
}

std::optional<Vec> DiskRectangleNode::inverse(const Vec& q) const
{
    const Vec2 a(q[0], q[1]);
    return Vec(reverse_ ? forward(a).point : backward(a).point);
}

nlohmann::json DiskRectangleNode::parameters() const
{
    return {{"R", R_}, {"width", W_}, {"center", {center_.x(), center_.y()}}, {"reverse", reverse_}};
}

MapPtr disk_rectangle_map(double R, double aspect, Vec2 center)
{
    if (!(R > 0) || !(aspect > 0)) throw std::invalid_argument("disk radius and aspect ratio must be positive");
    return std::make_shared<DiskRectangleNode>(R, std::sqrt(std::numbers::pi * R * R * aspect), center, false);
}

MapPtr rectangle_disk_map(double R, double aspect, Vec2 center)
{
    if (!(R > 0) || !(aspect > 0)) throw std::invalid_argument("disk radius and aspect ratio must be positive");
    return std::make_shared<DiskRectangleNode>(R, std::sqrt(std::numbers::pi * R * R * aspect), center, true);
}

}  // namespace polyembed

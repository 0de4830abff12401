#pragma once

#include "polyembed/maps/map_node.hpp"

namespace polyembed {

/// Area-preserving triangular map from the disk B^2(R) onto the open
/// rectangle of the same area with the given width, centred at `center`:
///   u = c_x - W/2 + A(x) / H,   v = c_y + y H / (2 sqrt(R^2 - x^2)),
/// where A(x) is the disk's area to the left of x. With `reverse` set the
/// node is the inverse map, from the rectangle onto the disk.
class DiskRectangleNode : public MapNode {
public:
    struct Result {
        Vec2 point;
        /// Evaluated within 1e-6 of the boundary, where the fiber scaling is
        /// ill-conditioned.
        bool degraded;
    };

    DiskRectangleNode(double R, double width, Vec2 center, bool reverse);

    MapKind kind() const override { return MapKind::DiskRectangle; }
    Vec eval(const Vec& p) const override;
    Mat jacobian(const Vec& p) const override;
    std::optional<Vec> inverse(const Vec& q) const override;
    bool has_inverse() const override { return true; }
    nlohmann::json parameters() const override;

    Result forward(const Vec2& p) const;
    Result backward(const Vec2& q) const;
    Mat2 forward_jacobian(const Vec2& p) const;

    double radius() const { return R_; }
    double width() const { return W_; }
    double height() const { return H_; }
    bool reversed() const { return reverse_; }

private:
    double area_left(double x) const;

    double R_;
    double W_;
    double H_;
    Vec2 center_;
    bool reverse_;
};

/// Disk of radius R onto the square (aspect 1) or a rectangle of the given
/// width/height ratio, centred at `center`.
MapPtr disk_rectangle_map(double R, double aspect = 1.0, Vec2 center = Vec2::Zero());
/// Inverse of disk_rectangle_map with the same parameters.
MapPtr rectangle_disk_map(double R, double aspect = 1.0, Vec2 center = Vec2::Zero());

}  // namespace polyembed

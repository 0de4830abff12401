#pragma once

#include "polyembed/maps/bump.hpp"
#include "polyembed/maps/map_node.hpp"

namespace polyembed {

/// Time-t flow of H = -beta(x1) x2 on R^4 in closed form:
///   y1 -> y1 + t beta'(x1) x2,   y2 -> y2 + t beta(x1),   x1, x2 fixed.
/// It is the gradient shear of f = t beta(x1) x2, hence exactly symplectic.
class StripLiftNode : public MapNode {
public:
    StripLiftNode(double w, double t);

    MapKind kind() const override { return MapKind::StripLift; }
    Vec eval(const Vec& p) const override;
    Mat jacobian(const Vec& p) const override;
    std::optional<Vec> inverse(const Vec& q) const override;
    bool has_inverse() const override { return true; }
    nlohmann::json parameters() const override { return {{"w", w_}, {"t", t_}}; }

    double half_width() const { return w_; }
    double time() const { return t_; }

private:
    double w_;
    double t_;
    BumpFunction beta_;
};

/// Requires 0 < w <= 1/10 and 0 <= t <= 2w (HypothesisViolation otherwise).
/// Domain S x B^2(w) with S = (-1/2, 1/2) x (-w, w); target is the
/// separation region.
MapPtr strip_lift(double w, double t);

/// Flow without the hypothesis checks, on R^4 (for composition tests).
Vec strip_flow(const Vec& p, double t);

/// Disk2(1) x TranslatedDisk2((0, w), 2w).
ShapeDescriptor strip_separation_region(double w);

/// The immersed surface of the lemma, known only on the unit square: the
/// horizontal strip S, the vertical strip S', and the connector region
/// (outside the open unit square, inside the unit disk) as a predicate.
struct StripImmersionModel {
    double w;
    /// Variant in which the two strips are made disjoint.
    bool overlap_removed = false;

    explicit StripImmersionModel(double half_width, bool remove_overlap = false);

    bool in_horizontal(double x, double y) const;
    bool in_vertical(double x, double y) const;
    bool in_overlap(double x, double y) const;
    bool in_unit_square(double x, double y) const;
    bool in_connector(double x, double y) const;
    /// Number of preimages of a point of the unit square.
    int preimage_count(double x, double y) const;

    double overlap_area() const { return overlap_removed ? 0.0 : 4.0 * w * w; }
    /// S as an open planar box.
    ShapeDescriptor horizontal_strip() const;
    ShapeDescriptor vertical_strip() const;
};

}  // namespace polyembed

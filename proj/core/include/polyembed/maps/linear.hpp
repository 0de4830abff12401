#pragma once

#include "polyembed/maps/map_node.hpp"

namespace polyembed {

/// p -> M p + offset.
class LinearNode : public MapNode {
public:
    LinearNode(Mat matrix, Vec offset, ShapeDescriptor domain, ShapeDescriptor target);

    MapKind kind() const override { return MapKind::Linear; }
    Vec eval(const Vec& p) const override;
    Mat jacobian(const Vec& /*p*/) const override { return matrix_; }
    std::optional<Vec> inverse(const Vec& q) const override;
    bool has_inverse() const override { return true; }
    nlohmann::json parameters() const override;

    const Mat& matrix() const { return matrix_; }
    const Vec& offset() const { return offset_; }

private:
    Mat matrix_;
    Vec offset_;
    Mat inverse_;
};

/// Linear map with zero offset on plane(n) -> plane(n) unless shapes are given.
MapPtr make_linear(Mat matrix, std::optional<ShapeDescriptor> domain = std::nullopt,
                   std::optional<ShapeDescriptor> target = std::nullopt, std::optional<Vec> offset = std::nullopt);

/// max |M^T J M - J|.
double linear_symplectic_residual(const Mat& M);

/// Completes (a, b) with omega(a, b) = 1 to a symplectic basis of R^4 by
/// projecting the seeds e_x2, e_y2 onto the omega-complement of span(a, b)
/// (falling back to e_x1, e_y1 when those are degenerate). Returns the
/// matrix whose columns are (a, w1, b, w2) in coordinate order (x1, x2, y1, y2).
Mat symplectic_completion(const Vec& a, const Vec& b);

/// Linear symplectomorphism carrying B^4(R) to an ellipsoid whose slices
/// parallel to the x1-y1 plane are round disks of radius at most 1/3 and
/// whose projection to the x2-y2 plane is a round disk.
struct PolterovichLinear {
    double radius;             // R
    double cos_theta;          // 1 / (9 R^2): the plane V is span{e_x1, cos e_y1 + sin e_x2}
    Mat matrix;                // 4 x 4
    double section_radius;     // R / (3R) scaling of the central slice = 1/3
    double projection_radius;  // S, radius of the (x2, y2) projection
    double x1y1_extent;        // exact radius of the (x1, y1) projection: R * ||rows x1, y1||_2
    MapPtr map;                // domain ball4(R), target disk(rho) x disk(10 R^2)
    double rho;                // x1y1_extent rounded up to one decimal
};

/// Throws HypothesisViolation for R < 1/3.
PolterovichLinear build_polterovich_linear(double R);

}  // namespace polyembed

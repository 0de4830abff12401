#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polyembed/linalg.hpp"

namespace polyembed {

/// Open planar disk of radius R centred at the origin.
struct Disk2 {
    double radius;
};

/// Open ball of dimension 2k (k conjugate pairs).
struct Ball {
    int pairs;
    double radius;
};

/// Open box prod_i (lower_i, lower_i + side_i). An even number of sides; a
/// box with 2k sides occupies k conjugate pairs with local order
/// (x_a..x_{a+k-1}, y_a..y_{a+k-1}).
struct Rectangle {
    std::vector<double> lower;
    std::vector<double> sides;
};

/// Genus-one surface with one boundary component carrying area `area`. For
/// membership it is realized as the lattice quotient: the square
/// [0, sqrt(area))^2 with the lattice class of the origin removed.
struct Surface {
    double area;
};

/// An R^2 factor.
struct FullPlane {};

/// Open planar disk of radius r centred at (cx, cy).
struct TranslatedDisk2 {
    double cx;
    double cy;
    double radius;
};

using ShapeFactor = std::variant<Disk2, Ball, Rectangle, Surface, FullPlane, TranslatedDisk2>;

/// Number of conjugate pairs a factor occupies.
int factor_pairs(const ShapeFactor& f);

/// An ordered product of factors. Factor k occupies the conjugate pairs
/// following those of factors 0..k-1; all factors are open sets.
class ShapeDescriptor {
public:
    ShapeDescriptor() = default;
    explicit ShapeDescriptor(std::vector<ShapeFactor> factors);

    /// B^2(R_1) x ... x B^2(R_n) with radii sorted ascending.
    static ShapeDescriptor polydisk(std::vector<double> radii);
    static ShapeDescriptor ball(int pairs, double radius);
    /// B^2(R) x R^2.
    static ShapeDescriptor cylinder(double radius);
    static ShapeDescriptor plane(int pairs);
    static ShapeDescriptor rectangle(std::vector<double> sides);
    static ShapeDescriptor box(std::vector<double> lower, std::vector<double> sides);

    const std::vector<ShapeFactor>& factors() const { return factors_; }
    int pairs() const { return pairs_; }
    int dimension() const { return 2 * pairs_; }

    bool bounded() const;
    /// True when every factor is a Disk2.
    bool is_polydisk() const;
    /// Radii of a product of Disk2/FullPlane factors, sorted ascending, with
    /// +infinity for FullPlane. Empty when another factor kind is present.
    std::optional<std::vector<double>> polydisk_radii() const;

    /// Product with another shape (this shape's pairs first).
    ShapeDescriptor times(const ShapeDescriptor& other) const;

private:
    std::vector<ShapeFactor> factors_;
    int pairs_ = 0;
};

/// Exact volume; throws UnboundedShape for FullPlane factors.
double volume(const ShapeDescriptor& shape);
double factor_volume(const ShapeFactor& f);

/// Strict membership; throws DimensionMismatch when p has the wrong length.
bool contains(const ShapeDescriptor& shape, const Vec& p);
bool factor_contains(const ShapeFactor& f, const Vec& local);

ShapeDescriptor scale_shape(const ShapeDescriptor& shape, double C);

/// Conservative inclusion test a ⊂ b: true only when the inclusion follows
/// from factor-wise comparisons (disks, balls, boxes, products of disks in
/// balls and vice versa, anything in a full plane).
bool shape_within(const ShapeDescriptor& a, const ShapeDescriptor& b);

/// Same factor kinds with parameters equal to relative tolerance tol.
bool approx_equal(const ShapeDescriptor& a, const ShapeDescriptor& b, double tol = 1e-12);

/// Axis-aligned bounds (lower, upper) in global coordinates. FullPlane
/// factors use the supplied radius; without one they throw UnboundedShape.
std::pair<Vec, Vec> bounding_box(const ShapeDescriptor& shape,
                                 std::optional<double> plane_radius = std::nullopt);

/// Largest distance between two points of the bounding box.
double domain_diameter(const ShapeDescriptor& shape, std::optional<double> plane_radius = std::nullopt);

/// Gather the local coordinates of pairs [first, first + count) of p.
Vec gather_pairs(const Vec& p, int first, int count);
/// Inverse of gather_pairs.
void scatter_pairs(Vec& p, int first, const Vec& local);

}  // namespace polyembed

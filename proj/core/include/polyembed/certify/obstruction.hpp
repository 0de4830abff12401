#pragma once

#include <string>
#include <vector>

#include "polyembed/shape.hpp"

namespace polyembed {

/// The two necessary conditions for P ↪ P' between polydisks (R^2 factors
/// count as infinite radii).
struct ObstructionVerdict {
    bool nonsqueeze_ok = true;
    bool volume_ok = true;
    double source_min_radius = 0.0;
    double target_min_radius = 0.0;
    double source_product = 0.0;
    double target_product = 0.0;
    /// Products of the k smallest radii, k = 1..n.
    std::vector<double> source_partial_products;
    std::vector<double> target_partial_products;
    /// One line per violated inequality, both sides stated.
    std::vector<std::string> violations;

    bool ok() const { return nonsqueeze_ok && volume_ok; }
    /// R'_1 - R_1.
    double nonsqueeze_margin() const { return target_min_radius - source_min_radius; }
    /// prod R'_i / prod R_i.
    double volume_ratio() const { return target_product / source_product; }
};

/// Throws DimensionMismatch for unequal dimensions and std::invalid_argument
/// when either shape is not a product of disks and planes. Both inequalities
/// allow a relative slack of 1e-12 for rounding.
ObstructionVerdict obstruction_check(const ShapeDescriptor& P, const ShapeDescriptor& Pp);
ObstructionVerdict obstruction_check(const std::vector<double>& R, const std::vector<double>& Rp);

}  // namespace polyembed

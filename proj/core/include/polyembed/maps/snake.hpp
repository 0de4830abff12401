#pragma once

#include <vector>

#include "polyembed/maps/map_node.hpp"

namespace polyembed {

/// Planar curve turning by pi to the left with curvature that ramps up
/// (C^2 smootherstep), stays constant, and ramps down; it starts at the origin heading
/// +x and ends at (0, gap) heading -x.
class UTurn {
public:
    explicit UTurn(double gap);

    double length() const { return length_; }
    double gap() const { return gap_; }
    double angle(double s) const;
    double curvature(double s) const;
    Vec2 point(double s) const;
    /// Largest x reached by the curve offset by `width` to its right.
    double extent(double width) const;

private:
    Vec2 ramp_point(double s) const;

    double gap_;
    double ramp_;       // arc length of each ramp
    double kappa0_;     // curvature of the middle section
    double length_;
    Vec2 ramp_end_;
};

/// Expanding embedding of the rectangle (0, L1) x (0, L2) into
/// (0, 5 L1') x (0, 5 L2'). The rectangle is read as a strip of width L1
/// (first coordinate u) and length L2 (second coordinate v) and laid out as
/// horizontal rows joined by U-turns. Rows are rotations; in a turn the
/// differential has orthogonal columns of lengths 1 + d kappa and 1.
class SnakeNode : public MapNode {
public:
    SnakeNode(double L1, double L2, double L1p, double L2p);

    MapKind kind() const override { return MapKind::Snake; }
    Vec eval(const Vec& p) const override;
    Mat jacobian(const Vec& p) const override;
    /// 1e-5 times the strip width, the scale on which the turns vary.
    double fd_step(const Vec& p) const override;
    nlohmann::json parameters() const override;

    int rows() const { return rows_; }
    double row_length() const { return row_length_; }
    double turn_margin() const { return margin_; }
    double pitch() const { return pitch_; }
    /// Total strip length the layout can absorb.
    double capacity() const;

private:
    struct Local {
        Vec2 point;
        Mat2 jac;
    };
    Local evaluate(double u, double v) const;

    double L1_, L2_, L1p_, L2p_;
    double pitch_;
    double margin_;
    double x0_;
    double row_length_;
    int rows_;
    UTurn turn_;
};

/// Checks L1 <= L2, L1' <= L2', L1 <= L1', L1 L2 <= L1' L2' and the row
/// capacity; HypothesisViolation names the failed inequality.
MapPtr snake_embedding(double L1, double L2, double L1p, double L2p);

}  // namespace polyembed

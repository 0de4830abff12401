#pragma once

namespace polyembed {

/// Even C^1 bump: 1 on [-1/6, 1/6], 0 outside (-1/3, 1/3), piecewise
/// quadratic in between. Its derivative is a trapezoid of height 7 whose
/// ramps have length 1/42, so max |beta'| = 7 exactly.
class BumpFunction {
public:
    static constexpr double kPlateau = 1.0 / 6.0;
    static constexpr double kSupport = 1.0 / 3.0;
    static constexpr double kSlope = 7.0;
    static constexpr double kRamp = 1.0 / 6.0 - 1.0 / 7.0;

    double value(double x) const;
    double deriv(double x) const;
    /// Piecewise constant (beta is only C^1).
    double second(double x) const;
};

}  // namespace polyembed

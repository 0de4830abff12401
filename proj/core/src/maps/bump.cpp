#include "polyembed/maps/bump.hpp"

#include <cmath>

namespace polyembed {

namespace {

constexpr double kWidth = BumpFunction::kSupport - BumpFunction::kPlateau;
constexpr double k = BumpFunction::kSlope;
constexpr double d = BumpFunction::kRamp;

}  // namespace

double BumpFunction::value(double x) const
{
    const double u = std::abs(x) - kPlateau;
    if (u <= 0) return 1.0;
    if (u >= kWidth) return 0.0;
    if (u < d) return 1.0 - k * u * u / (2.0 * d);
    if (u <= kWidth - d) return 1.0 - k * d / 2.0 - k * (u - d);
    const double r = kWidth - u;
    return k * r * r / (2.0 * d);
}

double BumpFunction::deriv(double x) const
{
    const double u = std::abs(x) - kPlateau;
    double g = 0.0;
    if (u <= 0 || u >= kWidth) g = 0.0;
    else if (u < d) g = -k * u / d;
    else if (u <= kWidth - d) g = -k;
    else g = -k * (kWidth - u) / d;
    return x < 0 ? -g : g;
}

double BumpFunction::second(double x) const
{
    const double u = std::abs(x) - kPlateau;
    if (u <= 0 || u >= kWidth) return 0.0;
    if (u < d) return -k / d;
    if (u <= kWidth - d) return 0.0;
    return k / d;
}

}  // namespace polyembed

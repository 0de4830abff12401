#include "polyembed/maps/periodic_diffeo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyembed {

namespace {

// Integral of the spike profile, B(s) = int_0^s (1 - u^2)^3 du; B(1) = 16/35.
double spike_integral(double s)
{
    s = std::clamp(s, -1.0, 1.0);
    const double s2 = s * s;
    return s * (1.0 + s2 * (-1.0 + s2 * (3.0 / 5.0 - s2 / 7.0)));
}

double nearest_integer(double x) { return std::floor(x + 0.5); }

}  // namespace

PeriodicDiffeo1D::PeriodicDiffeo1D(double rho) : PeriodicDiffeo1D(rho, default_delta(rho), 100.0 * rho) {}

PeriodicDiffeo1D::PeriodicDiffeo1D(double rho, double delta, double peak) : rho_(rho), delta_(delta), peak_(peak)
{
    if (!(rho > 0) || !(delta > 0) || !(delta < 0.5) || !(peak > 0))
        throw std::invalid_argument("periodic diffeomorphism needs rho > 0, 0 < delta < 1/2, peak > 0");
    const double c = 32.0 * delta / 35.0;
    base_ = (1.0 - peak * c) / (1.0 - c);
    if (!(base_ > 0)) throw std::invalid_argument("spike too large: flat level of dPhi would be non-positive");
}

double PeriodicDiffeo1D::default_delta(double rho) { return std::min(1e-6 / rho, 1e-4); }

double PeriodicDiffeo1D::local(double t) const
{
    return base_ * t + (peak_ - base_) * delta_ * spike_integral(t / delta_);
}

double PeriodicDiffeo1D::local_deriv(double t) const
{
    const double s = t / delta_;
    if (std::abs(s) >= 1.0) return base_;
    const double q = 1.0 - s * s;
    return base_ + (peak_ - base_) * q * q * q;
}

double PeriodicDiffeo1D::value(double x) const
{
    const double m = nearest_integer(x);
    return m + local(x - m);
}

double PeriodicDiffeo1D::deriv(double x) const { return local_deriv(x - nearest_integer(x)); }

double PeriodicDiffeo1D::second(double x) const
{
    const double s = (x - nearest_integer(x)) / delta_;
    if (std::abs(s) >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return (peak_ - base_) * (-6.0 * s * q * q) / delta_;
}

double PeriodicDiffeo1D::inverse(double X) const
{
    // Phi maps [m - 1/2, m + 1/2] onto itself
    const double m = nearest_integer(X);
    const double T = X - m;
    double lo = -0.5, hi = 0.5;
    double t = std::clamp(T, lo, hi);
    for (int it = 0; it < 200; ++it) {
        const double f = local(t) - T;
        if (f == 0.0) break;
        if (f > 0) hi = t;
        else lo = t;
        double next = t - f / local_deriv(t);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == t || hi - lo <= 4e-17) break;
        t = next;
    }
    return m + t;
}

double PeriodicDiffeo1D::fd_step(double x, double h) const
{
    const double d = std::abs(x - nearest_integer(x));
    const double fine = delta_ * 1e-3;
    if (d >= delta_ + h) return h;
    if (d <= delta_) return std::min(fine, h);
    return std::min(std::max(0.5 * (d - delta_), fine), h);
}

double PeriodicDiffeo1D::displacement_bound() const
{
    // |(base - 1) t + (peak - base) delta B(t/delta)| over t in [-1/2, 1/2]
    return std::abs(base_ - 1.0) * 0.5 + std::abs(peak_ - base_) * delta_ * (16.0 / 35.0);
}

Vec2 psi_eval(const PeriodicDiffeo1D& phi, const Vec2& p)
{
    return {phi.value(p[0]), 0.5 + p[1] / phi.deriv(p[0])};
}

Mat2 psi_jacobian(const PeriodicDiffeo1D& phi, const Vec2& p)
{
    const double d = phi.deriv(p[0]);
    Mat2 J;
    J << d, 0.0, -p[1] * phi.second(p[0]) / (d * d), 1.0 / d;
    return J;
}

PhiShearNode::PhiShearNode(PeriodicDiffeo1D phi)
    : MapNode(ShapeDescriptor::plane(1), ShapeDescriptor::plane(1)), phi_(phi)
{
}

Vec PhiShearNode::eval(const Vec& p) const
{
    check_dimension(p);
    const Vec2 q = psi_eval(phi_, Vec2(p[0], p[1]));
    return Vec(q);
}

Mat PhiShearNode::jacobian(const Vec& p) const
{
    check_dimension(p);
    return Mat(psi_jacobian(phi_, Vec2(p[0], p[1])));
}

std::optional<Vec> PhiShearNode::inverse(const Vec& q) const
{
    const double x = phi_.inverse(q[0]);
    Vec p(2);
    p << x, (q[1] - 0.5) * phi_.deriv(x);
    return p;
}

double PhiShearNode::fd_step(const Vec& p) const { return phi_.fd_step(p[0]); }

nlohmann::json PhiShearNode::parameters() const
{
    return {{"rho", phi_.rho()}, {"delta", phi_.delta()}, {"peak", phi_.peak()}};
}

MapPtr make_phi_shear(const PeriodicDiffeo1D& phi) { return std::make_shared<PhiShearNode>(phi); }

}  // namespace polyembed

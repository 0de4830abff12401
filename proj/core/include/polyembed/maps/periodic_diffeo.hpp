#pragma once

#include "polyembed/maps/map_node.hpp"

namespace polyembed {

/// Increasing diffeomorphism of R commuting with x -> x + 1 and fixing the
/// integers. Its derivative is a flat level `base` plus a spike of height
/// `peak` and half-width `delta` at each integer:
///   dPhi(m + t) = base + (peak - base) (1 - (t/delta)^2)^3   for |t| < delta,
/// with base chosen so that dPhi integrates to 1 over a period. The
/// derivative is C^2.
class PeriodicDiffeo1D {
public:
    /// The map used by the main lemma: peak 100 rho and the default width.
    explicit PeriodicDiffeo1D(double rho);
    /// Arbitrary spike; no invariant checks beyond positivity of dPhi.
    PeriodicDiffeo1D(double rho, double delta, double peak);

    /// min(1e-6 / rho, 1e-4).
    static double default_delta(double rho);

    double value(double x) const;
    double deriv(double x) const;
    double second(double x) const;
    /// Solves value(t) = X by bracketed Newton iteration.
    double inverse(double X) const;

    /// Central-difference step that resolves the spike near x.
    double fd_step(double x, double h = 1e-5) const;

    double rho() const { return rho_; }
    double delta() const { return delta_; }
    double peak() const { return peak_; }
    double base() const { return base_; }
    /// Closed-form bound on |value(x) - x|.
    double displacement_bound() const;

private:
    double local(double t) const;
    double local_deriv(double t) const;

    double rho_;
    double delta_;
    double peak_;
    double base_;
};

/// Psi(x, y) = (Phi(x), 1/2 + y / dPhi(x)) on R^2.
class PhiShearNode : public MapNode {
public:
    explicit PhiShearNode(PeriodicDiffeo1D phi);

    MapKind kind() const override { return MapKind::PhiShear; }
    Vec eval(const Vec& p) const override;
    Mat jacobian(const Vec& p) const override;
    std::optional<Vec> inverse(const Vec& q) const override;
    bool has_inverse() const override { return true; }
    double fd_step(const Vec& p) const override;
    nlohmann::json parameters() const override;

    const PeriodicDiffeo1D& phi() const { return phi_; }

private:
    PeriodicDiffeo1D phi_;
};

Vec2 psi_eval(const PeriodicDiffeo1D& phi, const Vec2& p);
Mat2 psi_jacobian(const PeriodicDiffeo1D& phi, const Vec2& p);

MapPtr make_phi_shear(const PeriodicDiffeo1D& phi);

}  // namespace polyembed

#pragma once

#include <optional>
#include <vector>

#include "polyembed/maps/map_node.hpp"
#include "polyembed/sampling.hpp"
#include "polyembed/verify/report.hpp"

namespace polyembed {

/// Default tolerances on max |D^T J D - J|.
inline constexpr double kAnalyticSymplecticTol = 1e-10;
inline constexpr double kFiniteDifferenceSymplecticTol = 1e-6;
inline constexpr double kExpandingTol = 1e-9;

/// margin = max residual over the samples; pass iff margin <= tol (default by
/// the map's Jacobian mode). Jacobian failures make the check inconclusive.
VerificationReport check_symplectic(const MapNode& m, const ShapeDescriptor& dom, const SampleSpec& spec,
                                    std::optional<double> tol = std::nullopt);

struct InjectivityOptions {
    /// Quotient lattice period * Z^2 on the first conjugate pair. When the
    /// map ends with a torus quotient, images are taken before it.
    std::optional<double> lattice_period;
    /// Neighbour search radius; 0 picks half the mean spacing of the image
    /// samples over their bounding box. Lattice translates are searched up to
    /// 0.25 * period, or this radius when smaller.
    double search_radius = 0.0;
    /// Images closer than this (relative to the image diameter) count as
    /// coinciding.
    double resolution = 1e-9;
    /// Lattice margin below which the check fails.
    double min_lattice_margin = 0.0;
};

/// Falsification test: fails when two samples with distinct preimages have
/// images coinciding (modulo the lattice) within resolution. margin is the
/// lattice margin with a lattice, otherwise the smallest image separation.
VerificationReport check_injective(const MapNode& m, const ShapeDescriptor& dom, const SampleSpec& spec,
                                   const InjectivityOptions& opt = {});
/// Same on explicit preimage points.
VerificationReport check_injective_points(const MapNode& m, const std::vector<Vec>& points,
                                          const InjectivityOptions& opt = {});

/// Every sampled image lies in target. margin is the smallest distance of an
/// image to the target's boundary (puncture included for surface factors).
VerificationReport check_containment(const MapNode& m, const ShapeDescriptor& dom, const ShapeDescriptor& target,
                                     const SampleSpec& spec);

/// Mean |det D| times vol(dom) against vol(dom) within 3 standard errors,
/// plus a rejection-sampling estimate of the image volume when m has an
/// inverse.
VerificationReport check_volume_preserved(const MapNode& m, const ShapeDescriptor& dom, const SampleSpec& spec);

/// margin = smallest singular value of D over the samples; pass iff
/// margin >= 1 - 1e-9.
VerificationReport check_expanding(const MapNode& m, const ShapeDescriptor& dom, const SampleSpec& spec);

/// Distance from p to the boundary of shape, negative outside.
double containment_slack(const ShapeDescriptor& shape, const Vec& p);

}  // namespace polyembed

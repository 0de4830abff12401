#pragma once

#include <cstdint>

#include "polyembed/maps/periodic_diffeo.hpp"
#include "polyembed/verify/report.hpp"

namespace polyembed {

struct PhiCheckOptions {
    std::size_t grid = 1'000'000;            // monotonicity/periodicity grid over one period
    std::size_t property1_samples = 1'000'000;
    std::size_t integer_fiber_samples = 20'000;
    std::size_t property2_disks = 1'000;
    std::size_t property2_pairs = 1'000;     // per disk
    std::uint64_t seed = 1;
};

/// Individual measurements; each bound is the one the construction promises.
struct PhiMeasurements {
    double min_deriv;            // >= 9/10
    double deriv_at_zero;        // = 100 rho
    double periodicity_error;    // max |Phi(x + 1) - Phi(x) - 1|
    double integer_error;        // max |Phi(m) - m|
    double displacement;         // max |Phi(x) - x| (grid and closed form)
    double inverse_error;        // max |Phi^{-1}(Phi(x)) - x|
    std::size_t lattice_hits;    // Property 1: images within 1e-12 of Z^2
    double lattice_distance;     // Property 1: smallest image distance to Z^2
    double integer_fiber_y_min;  // Property 1: second coordinate on fibers with Phi(x) in Z
    double integer_fiber_y_max;
    double max_dx;               // Property 2: |Phi(x) - Phi(x')| over pairs in a disk
    double max_dy_same_fiber;    // Property 2: |second coordinate difference| for x = x'
    double min_lattice_gap;      // Property 2: distance of differences to Z^2 \ {0}
    std::size_t near_lattice;    // Property 2: differences within 1e-3 of Z^2 \ {0}
};

/// Bundles the invariants of Phi with the two lattice properties of Psi:
/// Property 1 on the radius-rho disk and on the integer fibers, Property 2
/// on random radius-1/3 disks inside it.
VerificationReport check_phi_properties(const PeriodicDiffeo1D& phi, const PhiCheckOptions& opt = {},
                                        PhiMeasurements* out = nullptr);

}  // namespace polyembed

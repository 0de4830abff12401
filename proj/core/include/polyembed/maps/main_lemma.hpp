#pragma once

#include "polyembed/maps/linear.hpp"
#include "polyembed/maps/periodic_diffeo.hpp"

namespace polyembed {

/// Q ∘ Psi~ ∘ L from B^4(R) into Surface(1) x B^2(10 R^2), with its stages.
struct MainLemmaMap {
    double R;
    PolterovichLinear linear;
    PeriodicDiffeo1D phi;
    MapPtr shear;   // Psi x id
    MapPtr lifted;  // Psi~ ∘ L, before the lattice quotient
    MapPtr map;     // Q ∘ Psi~ ∘ L
};

/// Throws HypothesisViolation for R < 1/3.
MainLemmaMap build_main_lemma_map(double R);

/// Explicit chain behind the C = 3 form of the two-factor reshaping:
/// polydisk -> box X x (-a, a)^2 -> box 5X' x (-1, 1)^2 -> polydisk, with
/// a = 2^{-1/2}, the middle step the cotangent lift of the snake. The disk
/// radii match the box faces exactly: pi r_i^2 = sqrt(2) L_i and
/// pi r'_i^2 = 10 L'_i.
struct AppendixChain {
    double L1, L2, L1p, L2p;
    std::vector<double> source_radii;
    std::vector<double> target_radii;
    MapPtr snake;
    MapPtr lift;
    MapPtr map;
};

AppendixChain build_appendix_chain(double L1, double L2, double L1p, double L2p);

/// Chain for B^2(r1) x B^2(r2) into B^2(r1') x B^2(r2') choosing X, X' from
/// the radii; needs r1 <= r2, r1' <= r2' and the snake preconditions, which
/// hold when 3 r1 <= r1' and 9 r1 r2 <= r1' r2'.
AppendixChain build_appendix_chain_for_radii(double r1, double r2, double r1p, double r2p);

}  // namespace polyembed

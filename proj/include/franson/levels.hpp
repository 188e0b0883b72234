#pragma once

#include <utility>
#include <variant>

#include "franson/core.hpp"

namespace franson {

/// 1D harmonic oscillator, ground state index 0.
struct HarmonicOscillator {
  double mass = 1.0;
  double omega = 1.0;
};

/// Infinite square well of width L, ground state index 1.
struct InfiniteWell {
  double mass = 1.0;
  double width = 1.0;
};

/// Concrete solvable stand-in for the emitter Hamiltonian.
using ModelSystem = std::variant<HarmonicOscillator, InfiniteWell>;

/// Quantum numbers assigned to the cascade levels; n1 > n2 > n3 >= ground.
struct LevelMap {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;
};

/// Unperturbed energy and its first-order minimal-length correction, so that
/// the corrected level is e + beta * e_p.
struct LevelEnergies {
  double e = 0.0;
  double e_p = 0.0;
};

/// Lowest admissible quantum number for the system (0 for the oscillator,
/// 1 for the well).
int ground_index(const ModelSystem& sys);

/// Textbook spectrum: hbar*omega*(n + 1/2) for the oscillator,
/// n^2 pi^2 hbar^2 / (2 m L^2) for the well. Invalid n throws.
double unperturbed_energy(const ModelSystem& sys, int n,
                          const UnitSystem& units = {});

/// First-order correction E_{n,p} = <n|p^4|n>/m for the quadratic
/// deformation (H_p = p^4/m). Closed forms:
///   oscillator: (m hbar^2 omega^2 / 4)(6n^2 + 6n + 3)
///   well:       (n pi hbar / L)^4 / m
double perturbation_energy(const ModelSystem& sys, int n,
                           Deformation deformation = Deformation::QuadraticMomentum,
                           const UnitSystem& units = {});

/// Independent verification path for perturbation_energy. For the oscillator
/// the p^4 operator is assembled in a truncated number basis from ladder
/// matrix elements and its (n,n) diagonal taken; for the well, |p^2 psi_n|^2
/// is integrated by composite Simpson quadrature. Requires
/// basis_size >= n + 20.
double perturbation_energy_oracle(const ModelSystem& sys, int n,
                                  int basis_size,
                                  const UnitSystem& units = {});

/// (delta_e, delta_e_p) with delta_e = E(n1) - E(n3) > 0 and
/// delta_e_p = E_p(n1) - E_p(n3), the quantities driving the coincidence
/// phase. The intermediate level n2 only participates in validation.
std::pair<double, double> cascade_deltas(const ModelSystem& sys,
                                         const LevelMap& lm,
                                         Deformation deformation = Deformation::QuadraticMomentum,
                                         const UnitSystem& units = {});

}  // namespace franson

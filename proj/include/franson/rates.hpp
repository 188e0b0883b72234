#pragma once

#include <functional>
#include <string>
#include <vector>

#include "franson/core.hpp"

namespace franson {

/// Phase bookkeeping of the coincidence law:
///   phi1_prime = phi1 / 2
///   phi2_prime = -(phi2 + dE dT/hbar + beta dE_p dT/hbar) / 2
///   total      = dE dT/hbar + beta dE_p dT/hbar + phi1 + phi2
/// with cos^2(total/2) = cos^2(phi1_prime - phi2_prime).
struct PhaseDecomposition {
  double phi1_prime = 0.0;
  double phi2_prime = 0.0;
  double total = 0.0;
};

struct SpectrumPoint {
  double axis_value = 0.0;
  double rate = 0.0;
  double std_error = 0.0;  ///< zero for analytic spectra
};

/// Ordered (parameter, rate) samples of a coincidence spectrum.
struct Spectrum {
  std::string axis_name;
  std::vector<SpectrumPoint> points;
};

PhaseDecomposition total_phase(double delta_e, double delta_e_p, double beta,
                               double delta_t, double phi1, double phi2,
                               double hbar = 1.0);

/// Unmodified Franson law (R0/4) cos^2((dE dT/hbar + phi1 + phi2)/2).
/// An optional fringe-visibility factor V multiplies the oscillating part
/// (V = 1 is the ideal law and the default).
double rate_baseline(double r0, double phi1, double phi2, double delta_e,
                     double delta_t, double hbar = 1.0, double fringe_vis = 1.0);

/// Arms-removed rate with its first-order correction:
/// R0 = (sum |c_k|^2)^2, R'_1 = R'_2 = (sum |c_k|^2) Re(sum conj(c_k) c'_k),
/// returning R0 + 2 beta (R'_1 + R'_2), clamped at zero (with a stderr
/// diagnostic) when an adversarial correction drives it negative.
double r0_gup(const ModeCoefficients& modes, double beta);

/// Minimal-length coincidence law
/// (R0_gup/4) cos^2((dE dT/hbar + beta dE_p dT/hbar + phi1 + phi2)/2);
/// beta = 0 reproduces rate_baseline bit-for-bit.
double rate_gup(const ModeCoefficients& modes, double beta, double delta_e,
                double delta_e_p, double delta_t, double phi1, double phi2,
                double hbar = 1.0, double fringe_vis = 1.0);

/// The induced fringe translation: beta * delta_e_p * delta_t / hbar.
double fringe_shift(double beta, double delta_e_p, double delta_t,
                    double hbar = 1.0);

/// Optional linewidth damping exp(-delta_t * (1/tau1 + 1/tau3)); defaults
/// off in every rate call (fringe_vis = 1).
double damping_visibility(double delta_t, double tau1, double tau3);

/// Uniform sampling of rate_fn over [lo, hi) (or [lo, hi] with
/// include_endpoint); samples >= 2 and hi > lo required.
Spectrum scan_spectrum(const std::function<double(double)>& rate_fn,
                       const std::string& axis_name, double lo, double hi,
                       int samples, bool include_endpoint = false);

/// Fringe visibility (max - min)/(max + min); zero for an all-dark spectrum.
double visibility(const Spectrum& s);

}  // namespace franson

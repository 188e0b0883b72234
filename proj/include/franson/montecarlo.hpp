#pragma once

#include <cstdint>
#include <vector>

#include "franson/core.hpp"
#include "franson/rates.hpp"

namespace franson {

/// Which path each photon of a pair took (first letter: photon 1).
enum class PathPair : std::uint8_t { SS, SL, LS, LL };

/// One emitted pair after path choice, timing, and detection draws.
struct PairEvent {
  double t0 = 0.0;
  PathPair path = PathPair::SS;
  double t_a = 0.0;
  double t_b = 0.0;
  bool detected_a = false;
  bool detected_b = false;
  bool coincident = false;
};

/// Tallies of a pair-generation run. rate_estimate = n_coincident/n_pairs,
/// std_error the binomial error on that estimate. n_accidental counts the
/// cross-path (SL/LS) events that jittered inside the window and fired both
/// detectors; they are included in n_coincident.
struct CountRecord {
  std::uint64_t n_pairs = 0;
  std::uint64_t n_coincident = 0;
  std::uint64_t n_accidental = 0;
  std::uint64_t n_cross_rejected = 0;
  std::uint64_t n_singles = 0;
  double rate_estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
};

/// dE, dE_p, beta and hbar entering the interference phase.
struct PhaseParams {
  double delta_e = 0.0;
  double delta_e_p = 0.0;
  double beta = 0.0;
  double hbar = 1.0;
};

/// Parameter swept by mc_spectrum.
enum class McAxis { Phi1, Phi2, DeltaT, Beta };

/// Event-level simulation of n_pairs cascade emissions. Per pair the path
/// combination is drawn uniformly from {SS, SL, LS, LL}; SL/LS events carry
/// an arrival difference of +-delta_t plus the exponential (scale tau2)
/// emission delay of the second photon and are window-tested; SS/LL events
/// form the interfering channel and fire both detectors with probability
/// eta1*eta2*(R0_gup/R0)*cos^2(Phi/2)/2, which makes the expected
/// coincidence fraction (R0_gup/R0)*eta1*eta2*cos^2(Phi/2)/4 (exactly 1/4 at
/// beta=0, eta=1, Phi=0). Deterministic for a fixed seed, independent of
/// thread count (threads = 0 picks hardware concurrency).
CountRecord simulate_pairs(std::uint64_t n_pairs, const CascadeSpec& cascade,
                           const InterferometerConfig& ifc,
                           const PhaseParams& phase,
                           const ModeCoefficients& modes, std::uint64_t seed,
                           int threads = 0);

/// One simulate_pairs call per axis value, with the per-point stream derived
/// from (seed, axis-value bits) so results are independent of point order.
Spectrum mc_spectrum(McAxis axis, const std::vector<double>& values,
                     std::uint64_t n_pairs_per_point,
                     const CascadeSpec& cascade,
                     const InterferometerConfig& ifc,
                     const PhaseParams& phase, const ModeCoefficients& modes,
                     std::uint64_t seed, int threads = 0);

/// Fraction of the recorded coincidences that came from cross-path leakage
/// through the window.
double accidental_fraction(const CountRecord& record);

/// Probability that a cross-path event falls inside the window, averaged
/// over SL and LS: closed-form exponential tail masses of the tau2 delay.
/// This is the independent oracle for the accidental tallies.
double cross_window_pass_probability(double delta_t, double window,
                                     double tau2);

}  // namespace franson

#pragma once

#include <array>
#include <functional>

namespace franson {

/// Coincidence rate as a function of the two analyzer phases (phi1, phi2).
using RateFn = std::function<double(double, double)>;

/// A pair of analyzer settings.
struct PhasePair {
  double a = 0.0;
  double b = 0.0;
};

/// CHSH statistic with the settings (a, a', b, b') that produced it and the
/// four correlations E(a,b), E(a,b'), E(a',b), E(a',b').
struct ChshResult {
  double s_value = 0.0;
  std::array<double, 4> settings{};      // a, a_prime, b, b_prime
  std::array<double, 4> correlations{};  // E(a,b), E(a,b'), E(a',b), E(a',b')
};

/// Fringe-based correlation estimator
///   E(a,b) = [R(a,b) + R(a+pi,b+pi) - R(a+pi,b) - R(a,b+pi)] / (sum of four)
/// For the ideal cos^2 law this reduces to cos(a + b + theta) with
/// theta = dE dT/hbar + beta dE_p dT/hbar. All-dark settings (zero
/// denominator) throw.
double correlation(const RateFn& rate, const PhasePair& p);

/// S = E(a,b) + E(a,b') + E(a',b) - E(a',b'); reaches 2*sqrt(2) for the
/// ideal law at (0, pi/2, -pi/4, pi/4) with theta = 0.
ChshResult chsh(const RateFn& rate, double a, double a_prime, double b,
                double b_prime);

/// Coarse 4D grid search (resolution points per axis over [0, 2pi)) followed
/// by coordinate-descent refinement with golden-section line searches.
/// Ties on the grid break toward lexicographically lowest settings. At
/// least `refinement` sweeps run; sweeps continue until S stalls.
ChshResult max_chsh(const RateFn& rate, int resolution = 32,
                    int refinement = 3);

}  // namespace franson

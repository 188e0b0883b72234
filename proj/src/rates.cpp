#include "franson/rates.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace franson {

namespace {

void check_finite(std::initializer_list<double> vs, const char* what) {
  for (double v : vs) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) + ": non-finite input");
    }
  }
}

// Shared evaluation so baseline and beta = 0 paths round identically.
double quarter_rate(double r0, double phase, double fringe_vis) {
  if (fringe_vis == 1.0) {
    const double c = std::cos(phase / 2.0);
    return 0.25 * r0 * c * c;
  }
  // cos^2(x/2) = (1 + cos x)/2, damped fringes keep the mean level.
  return 0.25 * r0 * 0.5 * (1.0 + fringe_vis * std::cos(phase));
}

void check_modes(const ModeCoefficients& modes) {
  if (modes.c.empty() || modes.c.size() != modes.c_prime.size()) {
    throw std::invalid_argument(
        "mode coefficients: c and c_prime must share a nonzero length");
  }
  bool any = false;
  for (const auto& v : modes.c) {
    if (v != std::complex<double>(0.0, 0.0)) any = true;
  }
  if (!any) throw std::invalid_argument("mode coefficients: all c_k zero");
}

}  // namespace

PhaseDecomposition total_phase(double delta_e, double delta_e_p, double beta,
                               double delta_t, double phi1, double phi2,
                               double hbar) {
  check_finite({delta_e, delta_e_p, beta, delta_t, phi1, phi2, hbar},
               "total_phase");
  if (hbar <= 0.0) throw std::invalid_argument("total_phase: hbar must be > 0");
  if (delta_t <= 0.0)
    throw std::invalid_argument("total_phase: delta_t must be > 0");

  const double dephase = delta_e * delta_t / hbar + beta * (delta_e_p * delta_t / hbar);
  PhaseDecomposition out;
  out.phi1_prime = phi1 / 2.0;
  out.phi2_prime = -(phi2 + dephase) / 2.0;
  // group the analyzer phases so swapping phi1 <-> phi2 is exact
  out.total = dephase + (phi1 + phi2);
  return out;
}

double rate_baseline(double r0, double phi1, double phi2, double delta_e,
                     double delta_t, double hbar, double fringe_vis) {
  check_finite({r0, phi1, phi2, delta_e, delta_t, hbar}, "rate_baseline");
  if (r0 < 0.0) throw std::invalid_argument("rate_baseline: negative R0");
  // same grouping as total_phase so beta = 0 recovery is bit-exact
  const double phase = delta_e * delta_t / hbar + (phi1 + phi2);
  return quarter_rate(r0, phase, fringe_vis);
}

double r0_gup(const ModeCoefficients& modes, double beta) {
  check_modes(modes);
  double power = 0.0;    // sum |c_k|^2
  double overlap = 0.0;  // Re sum conj(c_k) c'_k
  for (std::size_t k = 0; k < modes.c.size(); ++k) {
    power += std::norm(modes.c[k]);
    overlap += (std::conj(modes.c[k]) * modes.c_prime[k]).real();
  }
  const double r0 = power * power;
  const double r_prime = power * overlap;  // R'_1 = R'_2
  const double value = r0 + 2.0 * beta * (r_prime + r_prime);
  if (value < 0.0) {
    std::cerr << "r0_gup: first-order correction drove R0_gup negative ("
              << value << "); clamping to 0 (outside perturbative regime)\n";
    return 0.0;
  }
  return value;
}

double rate_gup(const ModeCoefficients& modes, double beta, double delta_e,
                double delta_e_p, double delta_t, double phi1, double phi2,
                double hbar, double fringe_vis) {
  const double r0g = r0_gup(modes, beta);
  const double phase =
      total_phase(delta_e, delta_e_p, beta, delta_t, phi1, phi2, hbar).total;
  return quarter_rate(r0g, phase, fringe_vis);
}

double fringe_shift(double beta, double delta_e_p, double delta_t,
                    double hbar) {
  check_finite({beta, delta_e_p, delta_t, hbar}, "fringe_shift");
  return beta * delta_e_p * delta_t / hbar;
}

double damping_visibility(double delta_t, double tau1, double tau3) {
  if (tau1 <= 0.0 || tau3 <= 0.0) {
    throw std::invalid_argument("damping_visibility: lifetimes must be > 0");
  }
  return std::exp(-delta_t * (1.0 / tau1 + 1.0 / tau3));
}

Spectrum scan_spectrum(const std::function<double(double)>& rate_fn,
                       const std::string& axis_name, double lo, double hi,
                       int samples, bool include_endpoint) {
  check_finite({lo, hi}, "scan_spectrum");
  if (samples < 2) throw std::invalid_argument("scan_spectrum: samples < 2");
  if (!(hi > lo)) throw std::invalid_argument("scan_spectrum: empty range");

  Spectrum s;
  s.axis_name = axis_name;
  s.points.reserve(static_cast<std::size_t>(samples));
  const double denom = include_endpoint ? samples - 1 : samples;
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (hi - lo) * i / denom;
    s.points.push_back({x, rate_fn(x), 0.0});
  }
  return s;
}

double visibility(const Spectrum& s) {
  if (s.points.empty()) throw std::invalid_argument("visibility: empty spectrum");
  double mn = s.points.front().rate;
  double mx = mn;
  for (const auto& p : s.points) {
    mn = std::min(mn, p.rate);
    mx = std::max(mx, p.rate);
  }
  if (mn < 0.0) throw std::invalid_argument("visibility: negative rate");
  if (mx == 0.0) return 0.0;
  return (mx - mn) / (mx + mn);
}

}  // namespace franson

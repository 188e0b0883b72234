#include "franson/levels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace franson {

namespace {

void check_level(const ModelSystem& sys, int n) {
  if (n < ground_index(sys)) {
    throw std::domain_error("quantum number below ground state index");
  }
}

void check_deformation(Deformation d) {
  if (d != Deformation::QuadraticMomentum) {
    throw std::logic_error("deformation not implemented: only f(p) = p^2 is");
  }
}

// Diagonal of p^4/m in a truncated number basis. The chain
// <n|p^4|n> = sum_k |<k|p^2|n>|^2 is exact once the basis holds n+2 states,
// since p^2 couples n only to n, n+-2.
double oscillator_p4_diagonal(const HarmonicOscillator& ho, int n,
                              int basis_size, double hbar) {
  const int dim = basis_size;
  // p^2 = -(m hbar omega / 2) (a^dag - a)^2; assemble it densely.
  std::vector<double> p2(static_cast<std::size_t>(dim) * dim, 0.0);
  auto at = [&p2, dim](int r, int c) -> double& {
    return p2[static_cast<std::size_t>(r) * dim + c];
  };
  const double scale = ho.mass * hbar * ho.omega / 2.0;
  for (int r = 0; r < dim; ++r) {
    // (a^dag - a)^2 = a^dag a^dag - a^dag a - a a^dag + a a
    at(r, r) = scale * (2.0 * r + 1.0);  // -(-(2n+1)) after the overall minus
    if (r + 2 < dim) {
      const double v = -scale * std::sqrt(double(r + 1)) * std::sqrt(double(r + 2));
      at(r, r + 2) = v;
      at(r + 2, r) = v;
    }
  }
  double diag = 0.0;
  for (int k = 0; k < dim; ++k) diag += at(n, k) * at(k, n);
  return diag / ho.mass;
}

// Composite Simpson quadrature of |p^2 psi_n(x)|^2 / m over [0, L] with
// psi_n = sqrt(2/L) sin(n pi x / L).
double well_p4_quadrature(const InfiniteWell& well, int n, double hbar) {
  const double L = well.width;
  const double kn = n * std::numbers::pi / L;
  const int intervals = 1 << 14;  // even; plenty for sin^2 at 1e-12
  const double h = L / intervals;
  auto f = [&](double x) {
    const double p2psi = hbar * hbar * kn * kn *
                         std::sqrt(2.0 / L) * std::sin(kn * x);
    return p2psi * p2psi;
  };
  double sum = f(0.0) + f(L);
  for (int i = 1; i < intervals; ++i) {
    sum += f(i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
  }
  return sum * h / 3.0 / well.mass;
}

}  // namespace

int ground_index(const ModelSystem& sys) {
  return std::holds_alternative<InfiniteWell>(sys) ? 1 : 0;
}

double unperturbed_energy(const ModelSystem& sys, int n,
                          const UnitSystem& units) {
  check_level(sys, n);
  const double hbar = units.hbar;
  if (const auto* ho = std::get_if<HarmonicOscillator>(&sys)) {
    if (ho->mass <= 0.0 || ho->omega <= 0.0)
      throw std::invalid_argument("oscillator parameters must be positive");
    return hbar * ho->omega * (n + 0.5);
  }
  const auto& well = std::get<InfiniteWell>(sys);
  if (well.mass <= 0.0 || well.width <= 0.0)
    throw std::invalid_argument("well parameters must be positive");
  const double k = n * std::numbers::pi / well.width;
  return hbar * hbar * k * k / (2.0 * well.mass);
}

double perturbation_energy(const ModelSystem& sys, int n,
                           Deformation deformation, const UnitSystem& units) {
  check_level(sys, n);
  check_deformation(deformation);
  const double hbar = units.hbar;
  if (const auto* ho = std::get_if<HarmonicOscillator>(&sys)) {
    const double nn = static_cast<double>(n);
    return ho->mass * hbar * hbar * ho->omega * ho->omega / 4.0 *
           (6.0 * nn * nn + 6.0 * nn + 3.0);
  }
  const auto& well = std::get<InfiniteWell>(sys);
  const double knh = n * std::numbers::pi * hbar / well.width;
  return knh * knh * knh * knh / well.mass;
}

double perturbation_energy_oracle(const ModelSystem& sys, int n,
                                  int basis_size, const UnitSystem& units) {
  check_level(sys, n);
  if (basis_size < n + 20) {
    throw std::invalid_argument("oracle basis too small: need >= n + 20");
  }
  if (const auto* ho = std::get_if<HarmonicOscillator>(&sys)) {
    return oscillator_p4_diagonal(*ho, n, basis_size, units.hbar);
  }
  return well_p4_quadrature(std::get<InfiniteWell>(sys), n, units.hbar);
}

std::pair<double, double> cascade_deltas(const ModelSystem& sys,
                                         const LevelMap& lm,
                                         Deformation deformation,
                                         const UnitSystem& units) {
  if (!(lm.n1 > lm.n2 && lm.n2 > lm.n3 && lm.n3 >= ground_index(sys))) {
    throw std::invalid_argument(
        "level map must satisfy n1 > n2 > n3 >= ground index");
  }
  const double de =
      unperturbed_energy(sys, lm.n1, units) - unperturbed_energy(sys, lm.n3, units);
  const double dep = perturbation_energy(sys, lm.n1, deformation, units) -
                     perturbation_energy(sys, lm.n3, deformation, units);
  return {de, dep};
}

}  // namespace franson

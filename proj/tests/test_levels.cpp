#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "franson/levels.hpp"

using namespace franson;

TEST_CASE("textbook spectra") {
  CHECK(unperturbed_energy(HarmonicOscillator{1.0, 1.0}, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(unperturbed_energy(InfiniteWell{1.0, std::numbers::pi}, 1) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(unperturbed_energy(HarmonicOscillator{1.0, 2.0}, 3) ==
        doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("invalid quantum numbers are rejected") {
  CHECK_THROWS_AS(unperturbed_energy(InfiniteWell{1.0, 1.0}, 0),
                  std::domain_error);
  CHECK_THROWS_AS(unperturbed_energy(HarmonicOscillator{1.0, 1.0}, -1),
                  std::domain_error);
}

TEST_CASE("closed-form first-order corrections") {
  // Frozen from the finite-basis / quadrature oracles below.
  CHECK(perturbation_energy(HarmonicOscillator{1.0, 1.0}, 0) ==
        doctest::Approx(0.75).epsilon(1e-14));
  CHECK(perturbation_energy(HarmonicOscillator{1.0, 1.0}, 2) ==
        doctest::Approx(9.75).epsilon(1e-14));
  CHECK(perturbation_energy(InfiniteWell{1.0, std::numbers::pi}, 1) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("unsupported deformation tag") {
  CHECK_THROWS_AS(perturbation_energy(HarmonicOscillator{1.0, 1.0}, 0,
                                      Deformation::AbsoluteMomentum),
                  std::logic_error);
}

TEST_CASE("oracle values") {
  CHECK(perturbation_energy_oracle(HarmonicOscillator{1.0, 1.0}, 0, 50) ==
        doctest::Approx(0.75).epsilon(1e-12));
  CHECK(perturbation_energy_oracle(HarmonicOscillator{1.0, 1.0}, 1, 50) ==
        doctest::Approx(3.75).epsilon(1e-12));
  CHECK(perturbation_energy_oracle(InfiniteWell{1.0, std::numbers::pi}, 2, 50) ==
        doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("oracle refuses undersized bases") {
  CHECK_THROWS_AS(perturbation_energy_oracle(HarmonicOscillator{1.0, 1.0}, 5, 20),
                  std::invalid_argument);
}

TEST_CASE("closed form agrees with the oracle to 1e-10 relative") {
  const HarmonicOscillator ho{0.7, 1.3};
  for (int n = 0; n <= 20; ++n) {
    const double closed = perturbation_energy(ModelSystem{ho}, n);
    const double oracle = perturbation_energy_oracle(ModelSystem{ho}, n, 64);
    CHECK(std::abs(closed - oracle) / closed <= 1e-10);
  }
  const InfiniteWell well{1.4, 2.3};
  for (int n = 1; n <= 20; ++n) {
    const double closed = perturbation_energy(ModelSystem{well}, n);
    const double oracle = perturbation_energy_oracle(ModelSystem{well}, n, 64);
    CHECK(std::abs(closed - oracle) / closed <= 1e-10);
  }
}

TEST_CASE("oscillator correction increases in n; well scales as n^4") {
  const ModelSystem ho = HarmonicOscillator{1.0, 1.0};
  double prev = perturbation_energy(ho, 0);
  for (int n = 1; n <= 20; ++n) {
    const double cur = perturbation_energy(ho, n);
    CHECK(cur > prev);
    prev = cur;
  }
  const ModelSystem well = InfiniteWell{1.0, 1.0};
  const double base = perturbation_energy(well, 1);
  for (int n = 1; n <= 20; ++n) {
    const double nn = static_cast<double>(n);
    CHECK(perturbation_energy(well, n) ==
          doctest::Approx(base * nn * nn * nn * nn).epsilon(1e-12));
  }
}

TEST_CASE("scaling: omega^2 for the oscillator, L^-4 for the well") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double m = u(gen), w = u(gen), factor = u(gen);
    const double e1 = perturbation_energy(HarmonicOscillator{m, w}, 3);
    const double e2 = perturbation_energy(HarmonicOscillator{m, w * factor}, 3);
    CHECK(e2 / e1 == doctest::Approx(factor * factor).epsilon(1e-12));

    const double L = u(gen), lf = u(gen);
    const double w1 = perturbation_energy(InfiniteWell{m, L}, 2);
    const double w2 = perturbation_energy(InfiniteWell{m, L * lf}, 2);
    CHECK(w2 / w1 == doctest::Approx(1.0 / (lf * lf * lf * lf)).epsilon(1e-12));
  }
}

TEST_CASE("cascade deltas") {
  const auto [de_ho, dep_ho] =
      cascade_deltas(HarmonicOscillator{1.0, 1.0}, LevelMap{2, 1, 0});
  CHECK(de_ho == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(dep_ho == doctest::Approx(9.0).epsilon(1e-15));

  const auto [de_w, dep_w] =
      cascade_deltas(InfiniteWell{1.0, std::numbers::pi}, LevelMap{3, 2, 1});
  CHECK(de_w == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(dep_w == doctest::Approx(80.0).epsilon(1e-14));

  CHECK(de_ho > 0.0);
  CHECK(de_w > 0.0);
}

TEST_CASE("degenerate or misordered level maps are rejected") {
  CHECK_THROWS_AS(cascade_deltas(HarmonicOscillator{}, LevelMap{2, 1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cascade_deltas(HarmonicOscillator{}, LevelMap{2, 2, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cascade_deltas(InfiniteWell{}, LevelMap{3, 2, 0}),
                  std::invalid_argument);
}

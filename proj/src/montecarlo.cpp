#include "franson/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <thread>

#include "franson/rng.hpp"

namespace franson {

namespace {

constexpr std::uint64_t kBlockPairs = 1 << 16;

struct Tally {
  std::uint64_t coincident = 0;
  std::uint64_t accidental = 0;
  std::uint64_t cross_rejected = 0;
  std::uint64_t singles = 0;

  void operator+=(const Tally& o) {
    coincident += o.coincident;
    accidental += o.accidental;
    cross_rejected += o.cross_rejected;
    singles += o.singles;
  }
};

struct ChannelProbs {
  double p_coincident;  // joint detection, interfering channel
  double p_single;      // exactly one detector fires, given no coincidence
  double eta1, eta2;
};

// One block of pairs on its own derived stream.
Tally run_block(std::uint64_t seed, std::uint64_t block,
                std::uint64_t n_pairs, const ChannelProbs& ch, double delta_t,
                double window, double tau2) {
  SplitMix64 rng = SplitMix64::stream(seed, block);
  Tally t;
  for (std::uint64_t i = 0; i < n_pairs; ++i) {
    const unsigned path = static_cast<unsigned>(rng.next_u64() & 3u);
    if (path == 1 || path == 2) {
      // Cross-path (SL/LS): second photon delayed by the intermediate-state
      // lifetime; arrival difference is the delay shifted by +-delta_t.
      const double delay = rng.next_exponential(tau2);
      const double diff = (path == 1) ? delay + delta_t : delay - delta_t;
      if (std::abs(diff) > window) {
        ++t.cross_rejected;
        continue;
      }
      const bool fire_a = rng.next_double() < ch.eta1;
      const bool fire_b = rng.next_double() < ch.eta2;
      if (fire_a && fire_b) {
        ++t.coincident;
        ++t.accidental;
      } else if (fire_a != fire_b) {
        ++t.singles;
      }
    } else {
      // SS/LL merge into the interfering channel.
      if (rng.next_double() < ch.p_coincident) {
        ++t.coincident;
      } else if (rng.next_double() < ch.p_single) {
        ++t.singles;
      }
    }
  }
  return t;
}

}  // namespace

CountRecord simulate_pairs(std::uint64_t n_pairs, const CascadeSpec& cascade,
                           const InterferometerConfig& ifc,
                           const PhaseParams& phase,
                           const ModeCoefficients& modes, std::uint64_t seed,
                           int threads) {
  if (n_pairs == 0) throw std::invalid_argument("simulate_pairs: n_pairs = 0");
  if (cascade.tau2 <= 0.0)
    throw std::invalid_argument("simulate_pairs: tau2 must be > 0");

  const double r0 = r0_gup(modes, 0.0);
  const double r0g = r0_gup(modes, phase.beta);
  const double gain = r0g / r0;
  const double total = total_phase(phase.delta_e, phase.delta_e_p, phase.beta,
                                   ifc.delta_t, ifc.phi1, ifc.phi2, phase.hbar)
                           .total;
  const double c = std::cos(total / 2.0);

  ChannelProbs ch;
  ch.eta1 = ifc.eta1;
  ch.eta2 = ifc.eta2;
  ch.p_coincident = 0.5 * ifc.eta1 * ifc.eta2 * gain * c * c;
  if (ch.p_coincident > 1.0) {
    std::cerr << "simulate_pairs: channel coincidence probability clamped "
                 "(R0_gup/R0 too large for first order)\n";
    ch.p_coincident = 1.0;
  }
  ch.p_single = ifc.eta1 * (1.0 - ifc.eta2) + ifc.eta2 * (1.0 - ifc.eta1);

  const std::uint64_t n_blocks = (n_pairs + kBlockPairs - 1) / kBlockPairs;
  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(
      std::min<std::uint64_t>(n_threads, n_blocks));

  std::vector<Tally> partial(n_threads);
  auto worker = [&](unsigned tid) {
    Tally local;
    for (std::uint64_t b = tid; b < n_blocks; b += n_threads) {
      const std::uint64_t first = b * kBlockPairs;
      const std::uint64_t count = std::min(kBlockPairs, n_pairs - first);
      local += run_block(seed, b, count, ch, ifc.delta_t, ifc.window,
                         cascade.tau2);
    }
    partial[tid] = local;
  };

  if (n_threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned tid = 0; tid < n_threads; ++tid) pool.emplace_back(worker, tid);
    for (auto& th : pool) th.join();
  }

  Tally sum;
  for (const auto& p : partial) sum += p;

  CountRecord rec;
  rec.n_pairs = n_pairs;
  rec.n_coincident = sum.coincident;
  rec.n_accidental = sum.accidental;
  rec.n_cross_rejected = sum.cross_rejected;
  rec.n_singles = sum.singles;
  rec.seed = seed;
  const double p_hat =
      static_cast<double>(rec.n_coincident) / static_cast<double>(n_pairs);
  rec.rate_estimate = p_hat;
  rec.std_error =
      std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n_pairs));
  return rec;
}

Spectrum mc_spectrum(McAxis axis, const std::vector<double>& values,
                     std::uint64_t n_pairs_per_point,
                     const CascadeSpec& cascade,
                     const InterferometerConfig& ifc,
                     const PhaseParams& phase, const ModeCoefficients& modes,
                     std::uint64_t seed, int threads) {
  if (values.empty()) throw std::invalid_argument("mc_spectrum: empty axis");

  Spectrum s;
  switch (axis) {
    case McAxis::Phi1: s.axis_name = "phi1"; break;
    case McAxis::Phi2: s.axis_name = "phi2"; break;
    case McAxis::DeltaT: s.axis_name = "delta_t"; break;
    case McAxis::Beta: s.axis_name = "beta"; break;
  }
  s.points.reserve(values.size());

  for (double v : values) {
    if (!std::isfinite(v))
      throw std::invalid_argument("mc_spectrum: non-finite axis value");
    InterferometerConfig point_ifc = ifc;
    PhaseParams point_phase = phase;
    switch (axis) {
      case McAxis::Phi1: point_ifc.phi1 = v; break;
      case McAxis::Phi2: point_ifc.phi2 = v; break;
      case McAxis::DeltaT: point_ifc.delta_t = v; break;
      case McAxis::Beta: point_phase.beta = v; break;
    }
    // Sub-seed from the axis value itself, so point order cannot matter.
    const std::uint64_t sub_seed =
        mix64(seed ^ mix64(std::bit_cast<std::uint64_t>(v)));
    const CountRecord rec =
        simulate_pairs(n_pairs_per_point, cascade, point_ifc, point_phase,
                       modes, sub_seed, threads);
    s.points.push_back({v, rec.rate_estimate, rec.std_error});
  }
  return s;
}

double accidental_fraction(const CountRecord& record) {
  if (record.n_coincident == 0) return 0.0;
  return static_cast<double>(record.n_accidental) /
         static_cast<double>(record.n_coincident);
}

double cross_window_pass_probability(double delta_t, double window,
                                     double tau2) {
  if (tau2 <= 0.0 || delta_t <= 0.0 || window < 0.0) {
    throw std::invalid_argument("cross_window_pass_probability: bad inputs");
  }
  // SL: |delta_t + d| <= W  <=>  d <= W - delta_t
  const double p_sl =
      window > delta_t ? 1.0 - std::exp(-(window - delta_t) / tau2) : 0.0;
  // LS: |d - delta_t| <= W  <=>  max(0, delta_t - W) <= d <= delta_t + W
  const double lower = std::max(0.0, delta_t - window);
  const double p_ls =
      std::exp(-lower / tau2) - std::exp(-(delta_t + window) / tau2);
  return 0.5 * (p_sl + p_ls);
}

}  // namespace franson

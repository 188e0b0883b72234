#include "franson/chsh.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace franson {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double eval_s(const RateFn& rate, const std::array<double, 4>& x,
              std::array<double, 4>* corr = nullptr) {
  const double e_ab = correlation(rate, {x[0], x[2]});
  const double e_abp = correlation(rate, {x[0], x[3]});
  const double e_apb = correlation(rate, {x[1], x[2]});
  const double e_apbp = correlation(rate, {x[1], x[3]});
  if (corr) *corr = {e_ab, e_abp, e_apb, e_apbp};
  return e_ab + e_abp + e_apb - e_apbp;
}

// Golden-section maximization of S along coordinate `dim` in [lo, hi].
double golden_refine(const RateFn& rate, std::array<double, 4>& x, int dim,
                     double lo, double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  auto f = [&](double v) {
    std::array<double, 4> y = x;
    y[dim] = v;
    return eval_s(rate, y);
  };
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 90 && hi - lo > 1e-13; ++it) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  const double best = 0.5 * (lo + hi);
  x[dim] = best;
  return eval_s(rate, x);
}

}  // namespace

double correlation(const RateFn& rate, const PhasePair& p) {
  constexpr double pi = std::numbers::pi;
  const double r00 = rate(p.a, p.b);
  const double r11 = rate(p.a + pi, p.b + pi);
  const double r10 = rate(p.a + pi, p.b);
  const double r01 = rate(p.a, p.b + pi);
  if (r00 < 0.0 || r11 < 0.0 || r10 < 0.0 || r01 < 0.0) {
    throw std::invalid_argument("correlation: negative rate");
  }
  const double denom = r00 + r11 + r10 + r01;
  if (denom == 0.0) {
    throw std::domain_error("correlation: all four rates zero");
  }
  return (r00 + r11 - r10 - r01) / denom;
}

ChshResult chsh(const RateFn& rate, double a, double a_prime, double b,
                double b_prime) {
  ChshResult res;
  res.settings = {a, a_prime, b, b_prime};
  res.s_value = eval_s(rate, res.settings, &res.correlations);
  return res;
}

ChshResult max_chsh(const RateFn& rate, int resolution, int refinement) {
  if (resolution < 8) {
    throw std::invalid_argument("max_chsh: resolution must be >= 8 per axis");
  }
  if (refinement < 0) {
    throw std::invalid_argument("max_chsh: negative refinement");
  }

  const double step = kTwoPi / resolution;
  std::array<double, 4> best{};
  double best_s = -std::numeric_limits<double>::infinity();

  // Lexicographic iteration: the first strictly-better point wins, so equal
  // maxima resolve to the lowest settings.
  std::array<double, 4> x{};
  for (int ia = 0; ia < resolution; ++ia) {
    x[0] = ia * step;
    for (int iap = 0; iap < resolution; ++iap) {
      x[1] = iap * step;
      for (int ib = 0; ib < resolution; ++ib) {
        x[2] = ib * step;
        for (int ibp = 0; ibp < resolution; ++ibp) {
          x[3] = ibp * step;
          const double s = eval_s(rate, x);
          if (s > best_s) {
            best_s = s;
            best = x;
          }
        }
      }
    }
  }

  // Coordinate descent; bracket shrinks as the sweeps home in.
  double bracket = step;
  const int max_sweeps = std::max(refinement, 50);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double before = best_s;
    for (int dim = 0; dim < 4; ++dim) {
      best_s = golden_refine(rate, best, dim, best[dim] - bracket,
                             best[dim] + bracket);
    }
    bracket = std::max(bracket * 0.5, 1e-11);
    if (sweep + 1 >= refinement && best_s - before < 1e-13) break;
  }

  ChshResult res;
  res.settings = best;
  res.s_value = eval_s(rate, best, &res.correlations);
  return res;
}

}  // namespace franson

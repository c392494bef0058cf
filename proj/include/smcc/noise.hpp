#pragma once
// Impulsive observation-noise models: a two-component Gaussian mixture and
// the alpha-stable family, plus the estimators used to validate them.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <variant>

#include "smcc/error.hpp"
#include "smcc/random.hpp"

namespace smcc {

struct NoNoise {
  friend bool operator==(const NoNoise&, const NoNoise&) = default;
};

/// (1 - theta) N(mu1, var1) + theta N(mu2, var2).
struct MixedGaussianParams {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double var1 = 1e-4;
  double var2 = 20.0;
  double theta = 0.05;

  void validate() const {
    if (!(var1 > 0.0) || !(var2 > 0.0)) {
      throw InputError("mixture variances must be positive");
    }
    if (!(theta >= 0.0 && theta <= 1.0)) {
      throw InputError("mixture coefficient theta must lie in [0, 1]");
    }
    if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(var1) ||
        !std::isfinite(var2)) {
      throw InputError("mixture parameters must be finite");
    }
  }

  friend bool operator==(const MixedGaussianParams&,
                         const MixedGaussianParams&) = default;
};

/// Stable law with characteristic function
///   exp{ j delta t - gamma |t|^alpha [1 + j beta sgn(t) S(t, alpha)] },
///   S = tan(pi alpha / 2) for alpha != 1, (2/pi) log|t| for alpha = 1.
/// gamma is the dispersion, i.e. scale^alpha.
struct AlphaStableParams {
  double alpha = 1.2;
  double beta = 0.0;
  double gamma = 0.2;
  double delta = 0.0;

  void validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
      throw InputError("alpha must lie in (0, 2]");
    }
    if (!(beta >= -1.0 && beta <= 1.0)) {
      throw InputError("beta must lie in [-1, 1]");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
      throw InputError("gamma must be positive");
    }
    if (!std::isfinite(delta)) throw InputError("delta must be finite");
  }

  friend bool operator==(const AlphaStableParams&,
                         const AlphaStableParams&) = default;
};

using NoiseModel = std::variant<NoNoise, MixedGaussianParams, AlphaStableParams>;

inline void validate(const NoiseModel& model) {
  std::visit(
      [](const auto& m) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(m)>, NoNoise>) {
          m.validate();
        }
      },
      model);
}

/// Closed-form characteristic function of the stable law above.
inline std::complex<double> stable_char_fn(const AlphaStableParams& p,
                                           double t) {
  using namespace std::complex_literals;
  if (t == 0.0) return 1.0;
  const double at = std::abs(t);
  const double sgn = t > 0.0 ? 1.0 : -1.0;
  const double skew = p.alpha == 1.0
                          ? (2.0 / std::numbers::pi) * std::log(at)
                          : std::tan(std::numbers::pi * p.alpha / 2.0);
  const std::complex<double> expo =
      1i * p.delta * t -
      p.gamma * std::pow(at, p.alpha) * (1.0 + 1i * p.beta * sgn * skew);
  return std::exp(expo);
}

/// Chambers-Mallows-Stuck draw. The textbook transform targets
/// exp{-s^a |t|^a [1 - j b sgn(t) tan(pi a/2)] + j m t} for a != 1 and
/// exp{-s |t| [1 + j b (2/pi) sgn(t) log|t|] + j m t} for a = 1, so the
/// skewness sign flips only on the a != 1 branch.
inline double sample_stable(const AlphaStableParams& p, RandomStream& rng) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double v = std::numbers::pi * (rng.uniform_open() - 0.5);
  const double w = rng.exponential();
  const double a = p.alpha;

  if (a == 1.0) {
    const double b = p.beta;
    const double scale = p.gamma;
    const double x =
        (1.0 / half_pi) *
        ((half_pi + b * v) * std::tan(v) -
         b * std::log(half_pi * w * std::cos(v) / (half_pi + b * v)));
    return scale * x + (1.0 / half_pi) * b * scale * std::log(scale) + p.delta;
  }

  const double b = -p.beta;
  const double scale = std::pow(p.gamma, 1.0 / a);
  const double tan_term = b * std::tan(half_pi * a);
  const double shift = std::atan(tan_term) / a;
  const double stretch = std::pow(1.0 + tan_term * tan_term, 1.0 / (2.0 * a));
  const double x = stretch * std::sin(a * (v + shift)) /
                   std::pow(std::cos(v), 1.0 / a) *
                   std::pow(std::cos(v - a * (v + shift)) / w, (1.0 - a) / a);
  return scale * x + p.delta;
}

inline double sample_mixture(const MixedGaussianParams& p, RandomStream& rng) {
  if (rng.bernoulli(p.theta)) return rng.normal(p.mu2, std::sqrt(p.var2));
  return rng.normal(p.mu1, std::sqrt(p.var1));
}

/// One draw from the model; NoNoise always yields 0.
inline double sample(const NoiseModel& model, RandomStream& rng) {
  struct Visitor {
    RandomStream& rng;
    double operator()(const NoNoise&) const { return 0.0; }
    double operator()(const MixedGaussianParams& p) const {
      return sample_mixture(p, rng);
    }
    double operator()(const AlphaStableParams& p) const {
      return sample_stable(p, rng);
    }
  };
  return std::visit(Visitor{rng}, model);
}

/// (1/N) sum exp(j t x_k).
inline std::complex<double> empirical_char_fn(std::span<const double> samples,
                                              double t) {
  if (samples.empty()) throw InputError("empirical_char_fn: no samples");
  double re = 0.0;
  double im = 0.0;
  for (double x : samples) {
    re += std::cos(t * x);
    im += std::sin(t * x);
  }
  const double n = static_cast<double>(samples.size());
  return {re / n, im / n};
}

inline double mixture_variance(const MixedGaussianParams& p) {
  const double mean = (1.0 - p.theta) * p.mu1 + p.theta * p.mu2;
  return (1.0 - p.theta) * (p.var1 + p.mu1 * p.mu1) +
         p.theta * (p.var2 + p.mu2 * p.mu2) - mean * mean;
}

}  // namespace smcc

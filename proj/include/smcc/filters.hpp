#pragma once
// Adaptive FIR filters for sparse channel estimation: LMS-family,
// least mean p-power, and maximum correntropy criterion (MCC) variants
// with l1 (ZA), reweighted l1 (RZA), and CIM zero attractors.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smcc/error.hpp"
#include "smcc/kernels.hpp"

namespace smcc {

using TapWeights = std::vector<double>;

enum class Algorithm { LMS, ZALMS, RZALMS, LMP, MCC, ZAMCC, RZAMCC, CIMMCC };

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::LMS,   Algorithm::ZALMS,  Algorithm::RZALMS, Algorithm::LMP,
    Algorithm::MCC,   Algorithm::ZAMCC,  Algorithm::RZAMCC, Algorithm::CIMMCC};

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::LMS: return "LMS";
    case Algorithm::ZALMS: return "ZALMS";
    case Algorithm::RZALMS: return "RZALMS";
    case Algorithm::LMP: return "LMP";
    case Algorithm::MCC: return "MCC";
    case Algorithm::ZAMCC: return "ZAMCC";
    case Algorithm::RZAMCC: return "RZAMCC";
    case Algorithm::CIMMCC: return "CIMMCC";
  }
  return "?";
}

/// Case-insensitive lookup; std::nullopt for unknown names.
inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    const std::string_view ref = to_string(a);
    if (ref.size() == name.size() &&
        std::equal(ref.begin(), ref.end(), name.begin(), [](char l, char r) {
          return l == std::toupper(static_cast<unsigned char>(r));
        })) {
      return a;
    }
  }
  return std::nullopt;
}

inline bool uses_correntropy(Algorithm a) {
  return a == Algorithm::MCC || a == Algorithm::ZAMCC ||
         a == Algorithm::RZAMCC || a == Algorithm::CIMMCC;
}

inline bool uses_zero_attractor(Algorithm a) {
  return a == Algorithm::ZALMS || a == Algorithm::RZALMS ||
         a == Algorithm::ZAMCC || a == Algorithm::RZAMCC ||
         a == Algorithm::CIMMCC;
}

inline bool uses_reweighting(Algorithm a) {
  return a == Algorithm::RZALMS || a == Algorithm::RZAMCC;
}

/// Algorithm selector and hyperparameters. Fields that the chosen
/// algorithm does not read are ignored; the ones it reads are checked by
/// validate().
struct FilterSpec {
  Algorithm algorithm = Algorithm::MCC;
  double mu = 0.02;          ///< step size
  double rho = 0.0;          ///< zero-attractor strength
  double sigma1 = 2.0;       ///< MCC kernel width
  double sigma2 = 0.01;      ///< CIM kernel width
  double delta_prime = 10.0; ///< reweighting factor, 1/delta
  double p = 1.2;            ///< LMP exponent

  /// Throws InputError naming the offending field.
  void validate() const {
    auto fail = [](const char* what) { throw InputError(what); };
    if (!(mu > 0.0) || !std::isfinite(mu)) fail("mu must be positive");
    if (uses_zero_attractor(algorithm) && (!(rho >= 0.0) || !std::isfinite(rho))) {
      fail("rho must be non-negative");
    }
    if (uses_correntropy(algorithm)) KernelWidth{sigma1};
    if (algorithm == Algorithm::CIMMCC) KernelWidth{sigma2};
    if (uses_reweighting(algorithm) &&
        (!(delta_prime > 0.0) || !std::isfinite(delta_prime))) {
      fail("delta_prime must be positive");
    }
    if (algorithm == Algorithm::LMP && !(p > 1.0 && p <= 2.0)) {
      fail("p must lie in (1, 2]");
    }
  }

  friend bool operator==(const FilterSpec&, const FilterSpec&) = default;
};

/// sign(0) = 0, so exact zero taps stay put under l1 attraction.
inline double sign_of(double v) noexcept {
  return static_cast<double>((0.0 < v) - (v < 0.0));
}

/// Gradient of the CIM penalty, without rho:
/// w_i * exp(-w_i^2 / 2 sigma2^2) / (M sigma2^3 sqrt(2 pi)).
/// |entry| <= exp(-1/2) / (M sigma2^2 sqrt(2 pi)), attained at |w_i| = sigma2.
inline std::vector<double> cim_attractor(std::span<const double> w,
                                         KernelWidth sigma2) {
  const double s = sigma2.value();
  const double scale =
      1.0 / (static_cast<double>(w.size()) * s * s * s * kSqrtTwoPi);
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = scale * w[i] * std::exp(-(w[i] * w[i]) / (2.0 * s * s));
  }
  return out;
}

inline double cim_attractor_bound(std::size_t taps, KernelWidth sigma2) {
  const double s = sigma2.value();
  return std::exp(-0.5) / (static_cast<double>(taps) * s * s * kSqrtTwoPi);
}

/// Largest rho for which the CIMMCC update keeps zero as a stable fixed
/// point of a noiseless tap: near zero the attractor multiplies w by
/// 1 - rho / (M sigma2^3 sqrt(2 pi)), which must stay above -1.
inline double cim_rho_stability_limit(std::size_t taps, KernelWidth sigma2) {
  const double s = sigma2.value();
  return 2.0 * static_cast<double>(taps) * s * s * s * kSqrtTwoPi;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// One adaptive filter: its hyperparameters, current weights W(n), and
/// iteration counter n. A plain value; copy it to fork a trajectory.
class FilterState {
 public:
  FilterState(FilterSpec spec, std::size_t taps,
              std::optional<TapWeights> initial = std::nullopt)
      : spec_(spec) {
    spec_.validate();
    if (taps == 0) throw InputError("filter needs at least one tap");
    if (initial) {
      if (initial->size() != taps) {
        throw InputError("initial weights have length " +
                         std::to_string(initial->size()) + ", expected " +
                         std::to_string(taps));
      }
      weights_ = std::move(*initial);
    } else {
      weights_.assign(taps, 0.0);
    }
    scratch_.resize(taps);
    const double s = spec_.sigma2;
    cim_gain_ = spec_.rho / (static_cast<double>(taps) * s * s * s * kSqrtTwoPi);
  }

  const FilterSpec& spec() const noexcept { return spec_; }
  const TapWeights& weights() const noexcept { return weights_; }
  std::size_t taps() const noexcept { return weights_.size(); }
  std::size_t iteration() const noexcept { return iteration_; }

  /// A priori error d - W^T x. Does not touch the state.
  double predict_error(std::span<const double> x, double d) const {
    check_regressor(x);
    return d - dot(weights_, x);
  }

  /// Applies one update and returns the a priori error e(n). On a
  /// non-finite result throws DivergenceError and leaves the state as it
  /// was before the call.
  double step(std::span<const double> x, double d) {
    const double e = predict_error(x, d);
    const double g = error_gain(e);
    const std::size_t m = weights_.size();
    const double mu_g = spec_.mu * g;

    bool finite = std::isfinite(e);
    for (std::size_t i = 0; i < m; ++i) {
      const double w = weights_[i];
      const double next = w + mu_g * x[i] - attraction(w);
      scratch_[i] = next;
      finite = finite && std::isfinite(next);
    }
    if (!finite) throw DivergenceError(iteration_ + 1);
    weights_.swap(scratch_);
    ++iteration_;
    return e;
  }

 private:
  void check_regressor(std::span<const double> x) const {
    if (x.size() != weights_.size()) {
      throw InputError("regressor has length " + std::to_string(x.size()) +
                       ", expected " + std::to_string(weights_.size()));
    }
  }

  /// Scalar multiplying mu * x in the update.
  double error_gain(double e) const {
    switch (spec_.algorithm) {
      case Algorithm::LMS:
      case Algorithm::ZALMS:
      case Algorithm::RZALMS:
        return e;
      case Algorithm::LMP:
        // p |e|^(p-1) sign(e); zero at e = 0 since p > 1.
        if (e == 0.0) return 0.0;
        return spec_.p * std::pow(std::abs(e), spec_.p - 1.0) * sign_of(e);
      case Algorithm::MCC:
      case Algorithm::ZAMCC:
      case Algorithm::RZAMCC:
      case Algorithm::CIMMCC: {
        const double s = spec_.sigma1;
        return std::exp(-(e * e) / (2.0 * s * s)) * e;
      }
    }
    return 0.0;
  }

  /// Zero-attractor term subtracted from tap w (already scaled by rho).
  double attraction(double w) const {
    switch (spec_.algorithm) {
      case Algorithm::ZALMS:
      case Algorithm::ZAMCC:
        return spec_.rho * sign_of(w);
      case Algorithm::RZALMS:
      case Algorithm::RZAMCC:
        return spec_.rho * sign_of(w) / (1.0 + spec_.delta_prime * std::abs(w));
      case Algorithm::CIMMCC: {
        const double s = spec_.sigma2;
        return cim_gain_ * w * std::exp(-(w * w) / (2.0 * s * s));
      }
      default:
        return 0.0;
    }
  }

  FilterSpec spec_;
  TapWeights weights_;
  TapWeights scratch_;
  double cim_gain_ = 0.0;  // rho / (M sigma2^3 sqrt(2 pi))
  std::size_t iteration_ = 0;
};

}  // namespace smcc

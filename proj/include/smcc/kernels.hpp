#pragma once
// Gaussian kernel, sample correntropy, and the correntropy induced
// metric (CIM) used as a smooth l0-norm surrogate.

#include <cmath>
#include <span>

#include "smcc/error.hpp"

namespace smcc {

inline constexpr double kSqrtTwoPi = 2.506628274631000502415765284811;

/// Kernel width (sigma) of a Gaussian kernel. Always strictly positive.
class KernelWidth {
 public:
  explicit KernelWidth(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
      throw InputError("kernel width must be positive and finite");
    }
  }

  double value() const noexcept { return sigma_; }

  /// Peak value of the normalized kernel, 1 / (sigma * sqrt(2 pi)).
  double peak() const noexcept { return 1.0 / (sigma_ * kSqrtTwoPi); }

  friend bool operator==(const KernelWidth&, const KernelWidth&) = default;

 private:
  double sigma_;
};

/// exp(-e^2 / (2 sigma^2)), the unnormalized kernel shape.
inline double gaussian_shape(double e, KernelWidth width) noexcept {
  const double s = width.value();
  return std::exp(-(e * e) / (2.0 * s * s));
}

inline double gaussian_kernel(double e, KernelWidth width) noexcept {
  return width.peak() * gaussian_shape(e, width);
}

/// Sample estimator of correntropy between two equally sized signals.
inline double correntropy_estimate(std::span<const double> xs,
                                   std::span<const double> ys,
                                   KernelWidth width) {
  if (xs.size() != ys.size()) {
    throw InputError("correntropy_estimate: length mismatch");
  }
  if (xs.empty()) {
    throw InputError("correntropy_estimate: empty input");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    acc += gaussian_kernel(xs[i] - ys[i], width);
  }
  return acc / static_cast<double>(xs.size());
}

/// Sum of (1 - exp(-x_i^2 / 2 sigma^2)); tends to the nonzero count as
/// sigma shrinks below the smallest nonzero magnitude.
inline double l0_approx_count(std::span<const double> x, KernelWidth width) {
  if (x.empty()) {
    throw InputError("l0_approx_count: empty input");
  }
  double acc = 0.0;
  for (double xi : x) {
    acc += -std::expm1(-(xi * xi) / (2.0 * width.value() * width.value()));
  }
  return acc;
}

/// CIM^2(x, 0) = kappa(0)/N * sum(1 - exp(-x_i^2 / 2 sigma^2)).
inline double cim_squared(std::span<const double> x, KernelWidth width) {
  if (x.empty()) {
    throw InputError("cim_squared: empty input");
  }
  return width.peak() * l0_approx_count(x, width) /
         static_cast<double>(x.size());
}

}  // namespace smcc

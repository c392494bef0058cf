#pragma once
// Ground-truth channels and input signals: piecewise-constant tap
// schedules, sparsity measures, the long sparse echo path, and
// sliding-window regressor generators.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "smcc/error.hpp"
#include "smcc/filters.hpp"
#include "smcc/random.hpp"

namespace smcc {

struct ChannelSegment {
  std::size_t start = 0;  ///< segment applies for start < n <= next start
  TapWeights taps;

  friend bool operator==(const ChannelSegment&, const ChannelSegment&) = default;
};

/// Piecewise-constant time-varying channel. Iterations are 1-based.
class ChannelSchedule {
 public:
  explicit ChannelSchedule(std::vector<ChannelSegment> segments)
      : segments_(std::move(segments)) {
    if (segments_.empty()) throw InputError("schedule has no segments");
    if (segments_.front().start != 0) {
      throw InputError("first segment must start at iteration 0");
    }
    const std::size_t m = segments_.front().taps.size();
    if (m == 0) throw InputError("segment taps must be non-empty");
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      if (segments_[k].taps.size() != m) {
        throw InputError("segment " + std::to_string(k) + " has " +
                         std::to_string(segments_[k].taps.size()) +
                         " taps, expected " + std::to_string(m));
      }
      if (k > 0 && segments_[k].start <= segments_[k - 1].start) {
        throw InputError("segment starts must be strictly increasing");
      }
    }
  }

  /// Static channel.
  static ChannelSchedule constant(TapWeights taps) {
    return ChannelSchedule({{0, std::move(taps)}});
  }

  std::size_t taps() const noexcept { return segments_.front().taps.size(); }
  const std::vector<ChannelSegment>& segments() const noexcept {
    return segments_;
  }

  const TapWeights& taps_at(std::size_t n) const {
    if (n == 0) throw InputError("taps_at: iterations are 1-based");
    auto it = std::partition_point(
        segments_.begin(), segments_.end(),
        [n](const ChannelSegment& s) { return s.start < n; });
    return std::prev(it)->taps;
  }

  friend bool operator==(const ChannelSchedule&, const ChannelSchedule&) = default;

 private:
  std::vector<ChannelSegment> segments_;
};

/// The 20-tap channel that switches from one active tap to every other
/// tap active (after n = 2000) to fully dense alternating signs (after
/// n = 3000).
inline ChannelSchedule paper_tv20_schedule() {
  constexpr std::size_t m = 20;
  TapWeights single(m, 0.0);
  single[9] = 1.0;
  TapWeights half(m, 0.0);
  TapWeights dense(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    half[i] = (i % 2 == 0) ? 1.0 : 0.0;
    dense[i] = (i % 2 == 0) ? 1.0 : -1.0;
  }
  return ChannelSchedule({{0, single}, {2000, half}, {3000, dense}});
}

/// Exact fraction of nonzero taps.
struct SparsityDegree {
  std::size_t nonzero = 0;
  std::size_t taps = 1;

  double value() const {
    return static_cast<double>(nonzero) / static_cast<double>(taps);
  }
  friend bool operator==(const SparsityDegree& a, const SparsityDegree& b) {
    return a.nonzero * b.taps == b.nonzero * a.taps;
  }
};

inline SparsityDegree sparsity_degree(std::span<const double> w) {
  if (w.empty()) throw InputError("sparsity_degree: empty taps");
  const auto nz = static_cast<std::size_t>(
      std::count_if(w.begin(), w.end(), [](double v) { return v != 0.0; }));
  return {nz, w.size()};
}

/// Random sparse echo path: `nonzeros` Gaussian taps, three quarters of
/// them placed in the first quarter of the response, scaled to unit
/// energy.
inline TapWeights make_sparse_echo_channel(std::size_t taps,
                                           std::size_t nonzeros,
                                           RandomStream& rng) {
  if (taps == 0 || nonzeros == 0 || nonzeros > taps) {
    throw InputError("echo channel needs 0 < nonzeros <= taps");
  }
  const std::size_t early = taps / 4;
  std::size_t in_early = std::min(
      early, static_cast<std::size_t>(std::lround(0.75 * static_cast<double>(nonzeros))));
  if (nonzeros - in_early > taps - early) in_early = nonzeros - (taps - early);

  // Partial Fisher-Yates over each region.
  auto pick = [&rng](std::size_t lo, std::size_t hi, std::size_t count) {
    std::vector<std::size_t> idx(hi - lo);
    std::iota(idx.begin(), idx.end(), lo);
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t j = k + static_cast<std::size_t>(rng.below(idx.size() - k));
      std::swap(idx[k], idx[j]);
    }
    idx.resize(count);
    return idx;
  };
  std::vector<std::size_t> positions = pick(0, early, in_early);
  const std::vector<std::size_t> late = pick(early, taps, nonzeros - in_early);
  positions.insert(positions.end(), late.begin(), late.end());
  std::sort(positions.begin(), positions.end());

  TapWeights w(taps, 0.0);
  double energy = 0.0;
  for (std::size_t pos : positions) {
    double v = 0.0;
    while (v == 0.0) v = rng.normal();
    w[pos] = v;
    energy += v * v;
  }
  const double norm = std::sqrt(energy);
  for (double& v : w) v /= norm;
  return w;
}

struct WhiteGaussianInput {
  double variance = 1.0;
  friend bool operator==(const WhiteGaussianInput&, const WhiteGaussianInput&) = default;
};

/// x_n = sum_k a_k x_{n-k} + u_n, u_n ~ N(0, innovation_variance).
struct ColoredArInput {
  std::vector<double> coefficients;
  double innovation_variance = 1.0;
  friend bool operator==(const ColoredArInput&, const ColoredArInput&) = default;
};

/// Deterministic x_n = value; used for closed-form checks.
struct ConstantInput {
  double value = 1.0;
  friend bool operator==(const ConstantInput&, const ConstantInput&) = default;
};

using InputProcess = std::variant<WhiteGaussianInput, ColoredArInput, ConstantInput>;

/// True when every root of z^p - a_1 z^(p-1) - ... - a_p lies strictly
/// inside the unit circle (step-down recursion).
inline bool ar_is_stable(std::span<const double> a) {
  // Work with A(z) = 1 + c_1 z^-1 + ... + c_p z^-p, c_k = -a_k.
  std::vector<double> c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[k] = -a[k];
  for (std::size_t order = c.size(); order > 0; --order) {
    const double k = c[order - 1];
    if (!(std::abs(k) < 1.0)) return false;
    std::vector<double> next(order - 1);
    for (std::size_t i = 0; i + 1 < order; ++i) {
      next[i] = (c[i] - k * c[order - 2 - i]) / (1.0 - k * k);
    }
    c = std::move(next);
  }
  return true;
}

/// Stationary variance of the AR process, from the squared impulse
/// response.
inline double ar_output_variance(std::span<const double> a,
                                 double innovation_variance) {
  if (!ar_is_stable(a)) throw InputError("AR coefficients are not stable");
  std::vector<double> h(a.size(), 0.0);  // h[k] = impulse response at lag n-1-k
  double sum = 0.0;
  double tail = 0.0;
  for (std::size_t n = 0; n < 1000000; ++n) {
    double v = n == 0 ? 1.0 : 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) v += a[k] * h[k];
    if (!a.empty()) {
      std::copy_backward(h.begin(), h.end() - 1, h.end());
      h[0] = v;
    }
    sum += v * v;
    tail = 0.0;
    for (double x : h) tail = std::max(tail, std::abs(x));
    if (a.empty() || (n > a.size() && tail < 1e-17)) break;
  }
  return sum * innovation_variance;
}

inline void validate(const InputProcess& proc) {
  if (const auto* w = std::get_if<WhiteGaussianInput>(&proc)) {
    if (!(w->variance > 0.0)) throw InputError("input variance must be positive");
  } else if (const auto* ar = std::get_if<ColoredArInput>(&proc)) {
    if (!(ar->innovation_variance > 0.0)) {
      throw InputError("innovation variance must be positive");
    }
    if (!ar_is_stable(ar->coefficients)) {
      throw InputError("AR coefficients define an unstable filter");
    }
  }
}

/// Owns the tapped delay line X(n) = [x_n, x_{n-1}, ..., x_{n-M+1}],
/// starting from zeros.
class RegressorStream {
 public:
  RegressorStream(InputProcess proc, std::size_t taps)
      : proc_(std::move(proc)), buffer_(taps, 0.0) {
    validate(proc_);
    if (taps == 0) throw InputError("regressor length must be positive");
    if (const auto* ar = std::get_if<ColoredArInput>(&proc_)) {
      history_.assign(ar->coefficients.size(), 0.0);
    }
  }

  /// Draws x_n, shifts it into the window, and returns the window.
  std::span<const double> next(RandomStream& rng) {
    const double xn = next_sample(rng);
    std::copy_backward(buffer_.begin(), buffer_.end() - 1, buffer_.end());
    buffer_.front() = xn;
    return buffer_;
  }

  std::span<const double> current() const noexcept { return buffer_; }

 private:
  double next_sample(RandomStream& rng) {
    struct Visitor {
      RegressorStream& self;
      RandomStream& rng;
      double operator()(const WhiteGaussianInput& w) const {
        return std::sqrt(w.variance) * rng.normal();
      }
      double operator()(const ColoredArInput& ar) const {
        double v = std::sqrt(ar.innovation_variance) * rng.normal();
        auto& hist = self.history_;
        for (std::size_t k = 0; k < hist.size(); ++k) {
          v += ar.coefficients[k] * hist[k];
        }
        if (!hist.empty()) {
          std::copy_backward(hist.begin(), hist.end() - 1, hist.end());
          hist.front() = v;
        }
        return v;
      }
      double operator()(const ConstantInput& c) const { return c.value; }
    };
    return std::visit(Visitor{*this, rng}, proc_);
  }

  InputProcess proc_;
  std::vector<double> buffer_;
  std::vector<double> history_;  // x_{n-1}, x_{n-2}, ... for the AR recursion
};

/// d = W_o^T x + v.
inline double observe(std::span<const double> taps, std::span<const double> x,
                      double noise) {
  if (taps.size() != x.size()) throw InputError("observe: length mismatch");
  return dot(taps, x) + noise;
}

}  // namespace smcc

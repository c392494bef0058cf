#pragma once
// Seeded Monte Carlo driver. Each trial draws one input stream and one
// noise stream from (base_seed + trial index) and feeds every configured
// filter the same data, so filters are compared on common random numbers.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "smcc/channels.hpp"
#include "smcc/error.hpp"
#include "smcc/filters.hpp"
#include "smcc/noise.hpp"
#include "smcc/random.hpp"

namespace smcc {

enum class MsdScale { Linear, Decibel };

struct ExperimentConfig {
  std::vector<FilterSpec> filters;
  NoiseModel noise = NoNoise{};
  ChannelSchedule schedule = paper_tv20_schedule();
  InputProcess input = WhiteGaussianInput{1.0};
  std::size_t iterations = 4000;
  std::size_t trials = 100;
  std::uint64_t base_seed = 1;
  std::size_t msd_window = 400;
  MsdScale msd_scale = MsdScale::Linear;
  /// When set, diverged trials stay in the averages with their MSD held
  /// at msd_cap from the failing iteration on, and every MSD is capped.
  bool clamp_diverged = false;
  double msd_cap = 1e6;

  void validate() const {
    if (filters.empty()) throw InputError("at least one filter is required");
    for (const auto& f : filters) f.validate();
    smcc::validate(noise);
    smcc::validate(input);
    if (iterations == 0) throw InputError("iterations must be positive");
    if (trials == 0) throw InputError("trials must be positive");
    if (msd_window == 0 || msd_window > iterations) {
      throw InputError("msd_window must lie in [1, iterations]");
    }
    if (!(msd_cap > 0.0) || !std::isfinite(msd_cap)) {
      throw InputError("msd_cap must be positive and finite");
    }
  }
};

/// ||truth - estimate||^2.
inline double msd(std::span<const double> estimate,
                  std::span<const double> truth) {
  if (estimate.size() != truth.size()) throw InputError("msd: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = truth[i] - estimate[i];
    acc += d * d;
  }
  return acc;
}

inline double to_decibel(double linear) { return 10.0 * std::log10(linear); }

/// Mean of the last `window` entries, optionally in dB.
inline double steady_state_msd(std::span<const double> curve,
                               std::size_t window, MsdScale scale) {
  if (window == 0 || window > curve.size()) {
    throw InputError("steady_state_msd: window must lie in [1, length]");
  }
  double acc = 0.0;
  for (std::size_t i = curve.size() - window; i < curve.size(); ++i) {
    acc += curve[i];
  }
  const double mean = acc / static_cast<double>(window);
  return scale == MsdScale::Decibel ? to_decibel(mean) : mean;
}

struct TrialOutcome {
  std::vector<double> msd;  ///< MSD after the n-th update, n = 1..iterations
  TapWeights final_weights;
  std::optional<std::size_t> diverged_at;  ///< 1-based failing iteration

  bool diverged() const noexcept { return diverged_at.has_value(); }
};

/// Runs one filter through one trial's data streams.
inline TrialOutcome run_trial(const ExperimentConfig& config,
                              std::size_t filter_index,
                              std::size_t trial_index) {
  if (filter_index >= config.filters.size() || trial_index >= config.trials) {
    throw InputError("run_trial: index out of range");
  }
  const std::uint64_t seed = config.base_seed + trial_index;
  RandomStream noise_rng(seed, StreamId::Noise);
  RandomStream input_rng(seed, StreamId::Input);
  RegressorStream regressors(config.input, config.schedule.taps());
  FilterState filter(config.filters[filter_index], config.schedule.taps());

  TrialOutcome out;
  out.msd.reserve(config.iterations);
  for (std::size_t n = 1; n <= config.iterations; ++n) {
    const auto& truth = config.schedule.taps_at(n);
    const auto x = regressors.next(input_rng);
    const double d = observe(truth, x, sample(config.noise, noise_rng));
    try {
      filter.step(x, d);
    } catch (const DivergenceError& err) {
      out.diverged_at = err.iteration();
      break;
    }
    double value = msd(filter.weights(), truth);
    if (!std::isfinite(value)) {
      out.diverged_at = n;
      break;
    }
    if (config.clamp_diverged) value = std::min(value, config.msd_cap);
    out.msd.push_back(value);
  }
  if (out.diverged() && config.clamp_diverged) {
    out.msd.resize(config.iterations, config.msd_cap);
  }
  out.final_weights = filter.weights();
  return out;
}

struct FilterResult {
  FilterSpec spec;
  std::vector<double> mean_msd;  ///< empty when no trial was usable
  std::vector<double> std_msd;   ///< population std across trials
  std::size_t diverged_trials = 0;
  std::size_t included_trials = 0;
  /// Linear mean over the final msd_window iterations; unset when every
  /// trial diverged.
  std::optional<double> steady_state_msd;
  /// Std across trials of each trial's final-window mean.
  std::optional<double> steady_state_std;
  TapWeights mean_final_weights;  ///< over non-diverged trials

  bool all_diverged() const noexcept { return !steady_state_msd.has_value(); }
};

struct AggregateResult {
  std::vector<FilterResult> filters;
};

inline std::size_t default_thread_count() {
  if (const char* env = std::getenv("SMCC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {

/// Reduction in fixed trial order so the result does not depend on
/// scheduling.
inline FilterResult aggregate(const ExperimentConfig& config,
                              std::size_t filter_index,
                              const std::vector<TrialOutcome>& trials) {
  FilterResult r;
  r.spec = config.filters[filter_index];
  const std::size_t iters = config.iterations;
  const std::size_t window = config.msd_window;
  const std::size_t taps = config.schedule.taps();

  std::vector<const TrialOutcome*> used;
  for (const auto& t : trials) {
    if (t.diverged()) ++r.diverged_trials;
    if (!t.diverged() || config.clamp_diverged) used.push_back(&t);
  }
  r.included_trials = used.size();
  if (used.empty()) return r;

  const double count = static_cast<double>(used.size());
  r.mean_msd.assign(iters, 0.0);
  r.std_msd.assign(iters, 0.0);
  for (const auto* t : used) {
    for (std::size_t n = 0; n < iters; ++n) r.mean_msd[n] += t->msd[n];
  }
  for (double& v : r.mean_msd) v /= count;
  for (const auto* t : used) {
    for (std::size_t n = 0; n < iters; ++n) {
      const double d = t->msd[n] - r.mean_msd[n];
      r.std_msd[n] += d * d;
    }
  }
  for (double& v : r.std_msd) v = std::sqrt(v / count);

  std::vector<double> per_trial;
  for (const auto* t : used) {
    per_trial.push_back(steady_state_msd(t->msd, window, MsdScale::Linear));
  }
  double ss_mean = 0.0;
  for (double v : per_trial) ss_mean += v;
  ss_mean /= count;
  double ss_var = 0.0;
  for (double v : per_trial) ss_var += (v - ss_mean) * (v - ss_mean);
  r.steady_state_msd = steady_state_msd(r.mean_msd, window, MsdScale::Linear);
  r.steady_state_std = std::sqrt(ss_var / count);

  r.mean_final_weights.assign(taps, 0.0);
  std::size_t converged = 0;
  for (const auto& t : trials) {
    if (t.diverged()) continue;
    ++converged;
    for (std::size_t i = 0; i < taps; ++i) r.mean_final_weights[i] += t.final_weights[i];
  }
  if (converged > 0) {
    for (double& v : r.mean_final_weights) v /= static_cast<double>(converged);
  }
  return r;
}

}  // namespace detail

/// Runs every (filter, trial) pair on up to `threads` workers and reduces
/// per filter. The result is identical for any thread count.
inline AggregateResult run_monte_carlo(const ExperimentConfig& config,
                                       std::size_t threads = 0) {
  config.validate();
  if (threads == 0) threads = default_thread_count();
  const std::size_t nf = config.filters.size();
  const std::size_t nt = config.trials;
  std::vector<std::vector<TrialOutcome>> outcomes(nf, std::vector<TrialOutcome>(nt));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= nf * nt) return;
      try {
        outcomes[job % nf][job / nf] = run_trial(config, job % nf, job / nf);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(nf * nt);
      }
    }
  };
  threads = std::min(threads, nf * nt);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  AggregateResult result;
  for (std::size_t f = 0; f < nf; ++f) {
    result.filters.push_back(detail::aggregate(config, f, outcomes[f]));
  }
  return result;
}

struct StepSizeBound {
  double conservative = 0.0;     ///< 2 / ((M+2) E[f] var_x)
  double full = 0.0;             ///< 2 E[f] / ((M+2) E[f^2] var_x)
  double conservative_se = 0.0;  ///< Monte Carlo standard errors
  double full_se = 0.0;
  double mean_f = 0.0;
  double mean_f2 = 0.0;
};

inline constexpr std::size_t kMinBoundSamples = 10000;

/// Mean-square stability bounds on mu, with the expectations of
/// f(v) = exp(-v^2 / 2 sigma1^2) over the noise estimated by sampling.
inline StepSizeBound step_size_bound(const NoiseModel& noise,
                                     KernelWidth sigma1, std::size_t taps,
                                     double input_variance,
                                     std::size_t samples, RandomStream& rng) {
  validate(noise);
  if (samples < kMinBoundSamples) {
    throw InputError("step_size_bound needs at least " +
                     std::to_string(kMinBoundSamples) + " samples");
  }
  if (!(input_variance > 0.0)) throw InputError("input variance must be positive");
  if (taps == 0) throw InputError("taps must be positive");

  double s1 = 0.0, s2 = 0.0, s11 = 0.0, s22 = 0.0, s12 = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double f = gaussian_shape(sample(noise, rng), sigma1);
    const double f2 = f * f;
    s1 += f;
    s2 += f2;
    s11 += f * f;
    s22 += f2 * f2;
    s12 += f * f2;
  }
  const double n = static_cast<double>(samples);
  const double ef = s1 / n;
  const double ef2 = s2 / n;
  const double var_f = std::max(0.0, s11 / n - ef * ef);
  const double var_f2 = std::max(0.0, s22 / n - ef2 * ef2);
  const double cov = s12 / n - ef * ef2;
  const double m2 = static_cast<double>(taps) + 2.0;

  StepSizeBound b;
  b.mean_f = ef;
  b.mean_f2 = ef2;
  b.conservative = 2.0 / (m2 * ef * input_variance);
  b.full = 2.0 * ef / (m2 * ef2 * input_variance);
  b.conservative_se = b.conservative * std::sqrt(var_f / n) / ef;
  const double rel_var =
      var_f / (ef * ef) + var_f2 / (ef2 * ef2) - 2.0 * cov / (ef * ef2);
  b.full_se = b.full * std::sqrt(std::max(0.0, rel_var) / n);
  return b;
}

}  // namespace smcc

#pragma once
// Command implementations behind the smcc executable. Each returns a
// process exit code: 0 success, 2 configuration/validation, 3 I/O.

#include <cstddef>
#include <filesystem>
#include <ios>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "smcc/config.hpp"
#include "smcc/experiments.hpp"
#include "smcc/output.hpp"

namespace smcc {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitIo = 3 };

struct RunOptions {
  std::string config_path;
  std::string out_dir;
  ConfigOverrides overrides;
  std::optional<std::size_t> threads;  ///< falls back to SMCC_THREADS
};

struct BoundOptions {
  std::string config_path;
  bool both_variance_readings = false;
};

/// SHA-256 of the canonical resolved configuration.
inline std::string config_digest(const RunConfig& rc) {
  return sha256_hex(rc.resolved.dump());
}

namespace detail {

inline std::string msd_csv(const FilterResult& r, const ExperimentConfig& ex) {
  const bool db = ex.msd_scale == MsdScale::Decibel;
  std::ostringstream os;
  os << "iteration,mean_msd,std_msd" << (db ? ",mean_msd_db" : "") << '\n';
  for (std::size_t n = 0; n < ex.iterations; ++n) {
    os << (n + 1) << ',';
    if (r.mean_msd.empty()) {
      os << kDivergedToken << ',' << kDivergedToken;
      if (db) os << ',' << kDivergedToken;
    } else {
      os << format_number(r.mean_msd[n]) << ',' << format_number(r.std_msd[n]);
      if (db) os << ',' << format_number(decibel_floored(r.mean_msd[n]));
    }
    os << '\n';
  }
  return os.str();
}

inline std::string steady_cells(const FilterResult& r) {
  if (r.all_diverged()) return std::string(kDivergedToken);
  return format_number(*r.steady_state_msd);
}

inline std::string steady_std_cell(const FilterResult& r) {
  if (r.all_diverged()) return std::string(kDivergedToken);
  return format_number(*r.steady_state_std);
}

inline std::string steady_db_cell(const FilterResult& r) {
  if (r.all_diverged()) return std::string(kDivergedToken);
  return format_number(decibel_floored(*r.steady_state_msd));
}

inline std::string summary_csv(const AggregateResult& res, const RunConfig& rc) {
  const bool db = rc.experiment.msd_scale == MsdScale::Decibel;
  std::ostringstream os;
  os << "algorithm,steady_state_msd,diverged_trials,steady_state_std,label,mu"
     << (db ? ",steady_state_msd_db" : "") << '\n';
  for (std::size_t i = 0; i < res.filters.size(); ++i) {
    const auto& r = res.filters[i];
    os << to_string(r.spec.algorithm) << ',' << steady_cells(r) << ',' << r.diverged_trials
       << ',' << steady_std_cell(r) << ',' << rc.labels[i] << ',' << format_number(r.spec.mu);
    if (db) os << ',' << steady_db_cell(r);
    os << '\n';
  }
  return os.str();
}

inline std::string channel_csv(const ChannelSchedule& s) {
  std::ostringstream os;
  os << "tap,value\n";
  const auto& taps = s.segments().front().taps;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    os << (i + 1) << ',' << format_number(taps[i]) << '\n';
  }
  return os.str();
}

inline void warn_unstable_cim(const RunConfig& rc, std::ostream& err) {
  const auto& ex = rc.experiment;
  for (std::size_t i = 0; i < ex.filters.size(); ++i) {
    const auto& f = ex.filters[i];
    if (f.algorithm != Algorithm::CIMMCC) continue;
    const double limit = cim_rho_stability_limit(ex.schedule.taps(), KernelWidth{f.sigma2});
    if (f.rho > limit) {
      err << "warning: " << rc.labels[i] << ": rho=" << format_number(f.rho)
          << " exceeds " << format_number(limit)
          << "; the CIM attractor pushes small taps away from zero\n";
    }
  }
}

inline void write_manifest(const std::filesystem::path& dir, const RunConfig& rc,
                           const std::string& config_path, const std::string& started,
                           const std::vector<std::string>& outputs) {
  Json m;
  m["config_digest"] = config_digest(rc);
  m["config_path"] = config_path;
  m["tool_version"] = std::string(kToolVersion);
  m["base_seed"] = rc.experiment.base_seed;
  m["started"] = started;
  m["finished"] = utc_timestamp();
  m["outputs"] = outputs;
  m["resolved_config"] = rc.resolved;
  if (rc.echo) m["echo_channel_seed"] = rc.echo->seed;
  write_file_atomic(dir / "manifest.json", m.dump(2) + "\n");
}

inline int run_single(const RunConfig& rc, const RunOptions& opt, std::ostream& out) {
  const std::filesystem::path dir(opt.out_dir);
  const std::string started = utc_timestamp();
  const AggregateResult res = run_monte_carlo(rc.experiment, opt.threads.value_or(0));
  std::vector<std::string> outputs;
  for (std::size_t i = 0; i < res.filters.size(); ++i) {
    const std::string name = "msd_" + rc.labels[i] + ".csv";
    write_file_atomic(dir / name, msd_csv(res.filters[i], rc.experiment));
    outputs.push_back(name);
  }
  write_file_atomic(dir / "summary.csv", summary_csv(res, rc));
  outputs.push_back("summary.csv");
  if (rc.echo) {
    write_file_atomic(dir / "echo_channel.csv", channel_csv(rc.experiment.schedule));
    outputs.push_back("echo_channel.csv");
  }
  outputs.push_back("manifest.json");
  write_manifest(dir, rc, opt.config_path, started, outputs);
  for (std::size_t i = 0; i < res.filters.size(); ++i) {
    const auto& r = res.filters[i];
    out << rc.labels[i] << ": steady_state_msd=" << steady_cells(r)
        << " diverged_trials=" << r.diverged_trials << '\n';
  }
  return kExitOk;
}

inline int run_sweep(const RunConfig& rc, const RunOptions& opt, std::ostream& out,
                     std::ostream& err) {
  const std::filesystem::path dir(opt.out_dir);
  const std::string started = utc_timestamp();
  const SweepSettings& sweep = *rc.sweep;
  const bool db = rc.experiment.msd_scale == MsdScale::Decibel;
  const bool series = sweep.series.has_value();
  const std::vector<double> series_values =
      series ? sweep.series->values : std::vector<double>{0.0};

  std::ostringstream os;
  os << "swept_value,algorithm,steady_state_msd,steady_state_std,diverged_trials,label"
     << (series ? ",series_value" : "") << (db ? ",steady_state_msd_db" : "") << '\n';
  for (double sv : series_values) {
    for (double v : sweep.axis.values) {
      Json raw = rc.raw;
      raw.erase("sweep");
      raw.erase("sweep_series");
      if (series) apply_sweep_value(raw, sweep.series->parameter, sv);
      apply_sweep_value(raw, sweep.axis.parameter, v);
      const RunConfig point = resolve_config(raw);
      warn_unstable_cim(point, err);
      const AggregateResult res = run_monte_carlo(point.experiment, opt.threads.value_or(0));
      for (std::size_t i = 0; i < res.filters.size(); ++i) {
        const auto& r = res.filters[i];
        os << format_number(v) << ',' << to_string(r.spec.algorithm) << ',' << steady_cells(r)
           << ',' << steady_std_cell(r) << ',' << r.diverged_trials << ',' << point.labels[i];
        if (series) os << ',' << format_number(sv);
        if (db) os << ',' << steady_db_cell(r);
        os << '\n';
      }
      out << sweep.axis.parameter << '=' << format_number(v);
      if (series) out << ' ' << sweep.series->parameter << '=' << format_number(sv);
      out << " done\n";
    }
  }
  write_file_atomic(dir / "sweep.csv", os.str());
  write_manifest(dir, rc, opt.config_path, started, {"sweep.csv", "manifest.json"});
  return kExitOk;
}

/// Shared error mapping for the commands.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
}

inline void prepare_out_dir(const std::string& out_dir) {
  if (out_dir.empty()) throw ConfigError("--out", "output directory is required");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw std::ios_base::failure("cannot create output directory '" + out_dir + "'");
  }
}

}  // namespace detail

/// Runs the experiment (or sweep) described by a config file and writes
/// msd_<label>.csv, summary.csv (or sweep.csv) and manifest.json.
inline int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const RunConfig rc = load_config(opt.config_path, opt.overrides);
    detail::prepare_out_dir(opt.out_dir);
    detail::warn_unstable_cim(rc, err);
    if (rc.sweep) return detail::run_sweep(rc, opt, out, err);
    return detail::run_single(rc, opt, out);
  });
}

/// As cmd_run, but the config must describe a generated sparse echo
/// channel (channel.echo). Also writes echo_channel.csv.
inline int cmd_echo(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const RunConfig rc = load_config(opt.config_path, opt.overrides);
    if (!rc.echo) throw ConfigError("channel.echo", "echo runs need a channel.echo section");
    detail::prepare_out_dir(opt.out_dir);
    detail::warn_unstable_cim(rc, err);
    if (rc.sweep) return detail::run_sweep(rc, opt, out, err);
    return detail::run_single(rc, opt, out);
  });
}

/// Prints the step-size bounds as key=value lines.
inline int cmd_bound(const BoundOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const RunConfig rc = load_config(opt.config_path);
    const BoundSettings& b = rc.bound;
    const KernelWidth sigma1{b.sigma1};

    auto emit = [&](const std::string& prefix, const NoiseModel& noise) {
      RandomStream rng(rc.experiment.base_seed, StreamId::Bound);
      const StepSizeBound r = step_size_bound(noise, sigma1, b.taps, b.input_variance,
                                              b.samples, rng);
      out << prefix << "mu_B_conservative=" << format_fixed(r.conservative, 6) << '\n'
          << prefix << "mu_B_conservative_se=" << format_number(r.conservative_se) << '\n'
          << prefix << "mu_B_full=" << format_fixed(r.full, 6) << '\n'
          << prefix << "mu_B_full_se=" << format_number(r.full_se) << '\n'
          << prefix << "mean_f=" << format_number(r.mean_f) << '\n'
          << prefix << "mean_f2=" << format_number(r.mean_f2) << '\n';
    };

    out << "taps=" << b.taps << '\n'
        << "sigma1=" << format_number(b.sigma1) << '\n'
        << "input_variance=" << format_number(b.input_variance) << '\n'
        << "samples=" << b.samples << '\n';
    if (opt.both_variance_readings && rc.mixture) {
      emit("variance.", rc.mixture->params(NuReading::Variance));
      emit("stddev.", rc.mixture->params(NuReading::StdDev));
    } else {
      if (opt.both_variance_readings) {
        err << "note: --both-variance-readings only applies to mixed_gaussian noise\n";
      }
      emit("", rc.experiment.noise);
    }
    return kExitOk;
  });
}

}  // namespace smcc

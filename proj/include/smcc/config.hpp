#pragma once
// Experiment configuration files (JSON). Every key has a default taken
// from the mixed-Gaussian time-varying channel study, so "{}" is a
// complete configuration. Unknown keys are rejected with their path.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "smcc/channels.hpp"
#include "smcc/experiments.hpp"
#include "smcc/filters.hpp"
#include "smcc/noise.hpp"

namespace smcc {

using Json = nlohmann::json;

/// Schema violation; `path()` names the offending field, e.g.
/// "filters[2].algorithm".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Reading of the mixture's second-moment parameters nu1, nu2.
enum class NuReading { Variance, StdDev };

struct EchoChannelSettings {
  std::size_t taps = 1024;
  std::size_t nonzeros = 52;
  std::uint64_t seed = 0;  ///< resolved; defaults to the run seed
};

struct SweepAxis {
  std::string parameter;
  std::vector<double> values;
};

struct SweepSettings {
  SweepAxis axis;
  std::optional<SweepAxis> series;
};

struct BoundSettings {
  std::size_t samples = 1000000;
  double input_variance = 1.0;
  double sigma1 = 2.0;
  std::size_t taps = 20;
};

struct MixtureSource {
  double nu1 = 1e-4;
  double nu2 = 20.0;
  NuReading reading = NuReading::Variance;
  double mu1 = 0.0, mu2 = 0.0, theta = 0.05;

  MixedGaussianParams params(NuReading r) const {
    auto second = [r](double nu) { return r == NuReading::StdDev ? nu * nu : nu; };
    return {mu1, mu2, second(nu1), second(nu2), theta};
  }
};

/// A fully resolved configuration plus the bookkeeping needed to emit
/// outputs.
struct RunConfig {
  std::string name;
  ExperimentConfig experiment;
  std::vector<std::string> labels;  ///< one unique label per filter
  std::optional<EchoChannelSettings> echo;
  std::optional<SweepSettings> sweep;
  std::optional<MixtureSource> mixture;  ///< set when noise is a mixture
  BoundSettings bound;
  Json raw;       ///< input document after command-line overrides
  Json resolved;  ///< canonical form of every result-affecting value
};

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
};

namespace detail {

/// Typed access to one JSON object; tracks which keys were read so
/// leftovers can be reported.
class Fields {
 public:
  Fields(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return obj_.contains(key);
  }

  const Json& at(const std::string& key) {
    seen_.insert(key);
    return obj_.at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const Json& v = obj_.at(key);
    if (!v.is_number()) throw ConfigError(child(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(child(key), "expected a finite number");
    return d;
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const Json& v = obj_.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw ConfigError(child(key), "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const Json& v = obj_.at(key);
    if (!v.is_string()) throw ConfigError(child(key), "expected a string");
    return v.get<std::string>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const Json& v = obj_.at(key);
    if (!v.is_boolean()) throw ConfigError(child(key), "expected true or false");
    return v.get<bool>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    const Json& v = obj_.at(key);
    if (!v.is_array()) throw ConfigError(child(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        throw ConfigError(child(key) + "[" + std::to_string(i) + "]", "expected a number");
      }
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(child(it.key()), "unknown key");
    }
  }

 private:
  const Json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

inline Json empty_object() { return Json::object(); }

/// Zero-attractor strength used when neither the filter nor
/// filter_defaults sets rho: 0.0006 for the l1/reweighted-l1 MCC
/// variants, 0.0001 otherwise. CIMMCC stays at 0.0001 because its
/// attractor is expansive around zero once rho / (M sigma2^3 sqrt(2 pi))
/// exceeds 2.
inline double default_rho(Algorithm a) {
  switch (a) {
    case Algorithm::ZAMCC:
    case Algorithm::RZAMCC:
      return 0.0006;
    case Algorithm::LMS:
    case Algorithm::LMP:
    case Algorithm::MCC:
      return 0.0;
    default:
      return 0.0001;
  }
}

inline std::vector<std::string> unique_labels(const std::vector<FilterSpec>& specs,
                                              std::vector<std::optional<std::string>> given) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    labels.push_back(given[i] ? *given[i] : std::string(to_string(specs[i].algorithm)));
  }
  const std::vector<std::string> base = labels;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!given[i] && std::count(base.begin(), base.end(), base[i]) > 1) {
      labels[i] += "-" + std::to_string(i + 1);
    }
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& l = labels[i];
    if (l.empty() || l.find_first_of("/\\,\"\n ") != std::string::npos) {
      throw ConfigError("filters[" + std::to_string(i) + "].label",
                        "labels must be non-empty and free of separators");
    }
    if (!seen.insert(l).second) {
      throw ConfigError("filters[" + std::to_string(i) + "].label", "duplicate label '" + l + "'");
    }
  }
  return labels;
}

inline Json spec_to_json(const FilterSpec& f, const std::string& label) {
  Json j{{"algorithm", std::string(to_string(f.algorithm))}, {"mu", f.mu}, {"label", label}};
  if (uses_zero_attractor(f.algorithm)) j["rho"] = f.rho;
  if (uses_correntropy(f.algorithm)) j["sigma1"] = f.sigma1;
  if (f.algorithm == Algorithm::CIMMCC) j["sigma2"] = f.sigma2;
  if (uses_reweighting(f.algorithm)) j["delta_prime"] = f.delta_prime;
  if (f.algorithm == Algorithm::LMP) j["p"] = f.p;
  return j;
}

inline Json noise_to_json(const NoiseModel& m) {
  struct V {
    Json operator()(const NoNoise&) const { return {{"kind", "none"}}; }
    Json operator()(const MixedGaussianParams& p) const {
      return {{"kind", "mixed_gaussian"}, {"mu1", p.mu1}, {"mu2", p.mu2},
              {"var1", p.var1},           {"var2", p.var2}, {"theta", p.theta}};
    }
    Json operator()(const AlphaStableParams& p) const {
      return {{"kind", "alpha_stable"}, {"alpha", p.alpha}, {"beta", p.beta},
              {"gamma", p.gamma},       {"delta", p.delta}};
    }
  };
  return std::visit(V{}, m);
}

inline Json input_to_json(const InputProcess& p) {
  struct V {
    Json operator()(const WhiteGaussianInput& w) const {
      return {{"kind", "white"}, {"variance", w.variance}};
    }
    Json operator()(const ColoredArInput& a) const {
      return {{"kind", "ar"}, {"coefficients", a.coefficients},
              {"innovation_variance", a.innovation_variance}};
    }
    Json operator()(const ConstantInput& c) const {
      return {{"kind", "constant"}, {"value", c.value}};
    }
  };
  return std::visit(V{}, p);
}

inline SweepAxis parse_axis(const Json& j, const std::string& path) {
  Fields f(j, path);
  SweepAxis axis;
  axis.parameter = f.text("parameter", "");
  static const std::set<std::string> known = {
      "noise.alpha", "noise.gamma", "noise.beta",    "noise.delta",  "noise.theta",
      "noise.nu1",   "noise.nu2",   "filters.mu",    "filters.rho",  "filters.sigma1",
      "filters.sigma2", "filters.delta_prime", "filters.p"};
  if (!known.count(axis.parameter)) {
    throw ConfigError(f.child("parameter"), "unsupported sweep parameter '" + axis.parameter + "'");
  }
  axis.values = f.numbers("values", {});
  if (axis.values.empty()) throw ConfigError(f.child("values"), "sweep needs at least one value");
  f.finish();
  return axis;
}

}  // namespace detail

/// Writes `value` into the raw document at a sweep parameter path.
inline void apply_sweep_value(Json& raw, const std::string& parameter, double value) {
  const auto dot_pos = parameter.find('.');
  const std::string section = parameter.substr(0, dot_pos);
  const std::string key = parameter.substr(dot_pos + 1);
  if (section == "noise") {
    if (!raw.contains("noise")) raw["noise"] = Json::object();
    raw["noise"][key] = value;
  } else {
    if (!raw.contains("filter_defaults")) raw["filter_defaults"] = Json::object();
    raw["filter_defaults"][key] = value;
    if (raw.contains("filters") && raw["filters"].is_array()) {
      for (auto& f : raw["filters"]) {
        if (f.is_object()) f[key] = value;
      }
    }
  }
}

/// Builds a RunConfig from a parsed document. Throws ConfigError for
/// schema problems, including contract violations of the underlying
/// types.
inline RunConfig resolve_config(Json raw, const ConfigOverrides& overrides = {}) {
  using detail::Fields;
  if (overrides.seed) raw["run"]["seed"] = *overrides.seed;
  if (overrides.trials) raw["run"]["trials"] = *overrides.trials;

  RunConfig rc;
  Fields top(raw, "");
  rc.name = top.text("name", "experiment");
  if (top.has("description") && !raw.at("description").is_string()) {
    throw ConfigError("description", "expected a string");
  }

  // run
  const Json run_json = top.has("run") ? raw.at("run") : detail::empty_object();
  Fields run(run_json, "run");
  ExperimentConfig& ex = rc.experiment;
  ex.iterations = run.unsigned_integer("iterations", 4000);
  ex.trials = run.unsigned_integer("trials", 100);
  ex.base_seed = run.unsigned_integer("seed", 1);
  if (ex.iterations == 0) throw ConfigError("run.iterations", "must be positive");
  if (ex.trials == 0) throw ConfigError("run.trials", "must be positive");
  ex.msd_window = run.unsigned_integer("msd_window", std::max<std::size_t>(1, ex.iterations / 10));
  if (ex.msd_window == 0 || ex.msd_window > ex.iterations) {
    throw ConfigError("run.msd_window", "must lie in [1, iterations]");
  }
  const std::string scale = run.text("msd_scale", "linear");
  if (scale == "linear") {
    ex.msd_scale = MsdScale::Linear;
  } else if (scale == "db") {
    ex.msd_scale = MsdScale::Decibel;
  } else {
    throw ConfigError("run.msd_scale", "expected 'linear' or 'db'");
  }
  ex.clamp_diverged = run.boolean("clamp_diverged", false);
  ex.msd_cap = run.number("msd_cap", 1e6);
  if (!(ex.msd_cap > 0.0)) throw ConfigError("run.msd_cap", "must be positive");
  run.finish();

  // channel
  const Json ch_json = top.has("channel") ? raw.at("channel") : detail::empty_object();
  Fields ch(ch_json, "channel");
  const bool has_preset = ch.has("preset");
  const bool has_segments = ch.has("segments");
  const bool has_echo = ch.has("echo");
  if (has_preset + has_segments + has_echo > 1) {
    throw ConfigError("channel", "give exactly one of 'preset', 'segments', 'echo'");
  }
  if (has_segments) {
    const Json& segs = ch_json.at("segments");
    if (!segs.is_array() || segs.empty()) {
      throw ConfigError("channel.segments", "expected a non-empty array");
    }
    std::vector<ChannelSegment> parsed;
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const std::string p = "channel.segments[" + std::to_string(k) + "]";
      Fields s(segs[k], p);
      ChannelSegment seg;
      seg.start = s.unsigned_integer("start", k == 0 ? 0 : UINT64_MAX);
      if (seg.start == UINT64_MAX) throw ConfigError(p + ".start", "required");
      seg.taps = s.numbers("taps", {});
      s.finish();
      parsed.push_back(std::move(seg));
    }
    try {
      ex.schedule = ChannelSchedule(std::move(parsed));
    } catch (const InputError& e) {
      throw ConfigError("channel.segments", e.what());
    }
  } else if (has_echo) {
    Fields e(ch_json.at("echo"), "channel.echo");
    EchoChannelSettings echo;
    echo.taps = e.unsigned_integer("taps", 1024);
    echo.nonzeros = e.unsigned_integer("nonzeros", 52);
    echo.seed = e.unsigned_integer("seed", ex.base_seed);
    e.finish();
    if (echo.taps == 0) throw ConfigError("channel.echo.taps", "must be positive");
    if (echo.nonzeros == 0 || echo.nonzeros > echo.taps) {
      throw ConfigError("channel.echo.nonzeros", "must lie in [1, taps]");
    }
    RandomStream rng(echo.seed, StreamId::Channel);
    ex.schedule = ChannelSchedule::constant(make_sparse_echo_channel(echo.taps, echo.nonzeros, rng));
    rc.echo = echo;
  } else {
    const std::string preset = has_preset ? ch.text("preset", "") : "paper-tv20";
    if (preset == "paper-tv20") {
      ex.schedule = paper_tv20_schedule();
    } else if (preset == "paper-tv20-sparse") {
      ex.schedule = ChannelSchedule::constant(paper_tv20_schedule().segments().front().taps);
    } else {
      throw ConfigError("channel.preset", "unknown preset '" + preset + "'");
    }
  }
  ch.finish();
  const std::size_t taps = ex.schedule.taps();

  // input
  const Json in_json = top.has("input")
                           ? raw.at("input")
                           : (rc.echo ? Json{{"kind", "ar"}, {"coefficients", {1.5, -0.7}},
                                             {"output_variance", 1.0}}
                                      : Json{{"kind", "white"}});
  Fields in(in_json, "input");
  const std::string in_kind = in.text("kind", "white");
  double nominal_input_variance = 1.0;
  if (in_kind == "white") {
    const double v = in.number("variance", 1.0);
    if (!(v > 0.0)) throw ConfigError("input.variance", "must be positive");
    ex.input = WhiteGaussianInput{v};
    nominal_input_variance = v;
  } else if (in_kind == "ar") {
    ColoredArInput ar;
    ar.coefficients = in.numbers("coefficients", {1.5, -0.7});
    if (!ar_is_stable(ar.coefficients)) {
      throw ConfigError("input.coefficients", "AR filter is not stable");
    }
    const bool by_output = in.has("output_variance");
    const bool by_innovation = in.has("innovation_variance");
    if (by_output && by_innovation) {
      throw ConfigError("input", "give 'output_variance' or 'innovation_variance', not both");
    }
    if (by_innovation) {
      ar.innovation_variance = in.number("innovation_variance", 1.0);
      if (!(ar.innovation_variance > 0.0)) {
        throw ConfigError("input.innovation_variance", "must be positive");
      }
    } else {
      const double target = in.number("output_variance", 1.0);
      if (!(target > 0.0)) throw ConfigError("input.output_variance", "must be positive");
      ar.innovation_variance = target / ar_output_variance(ar.coefficients, 1.0);
    }
    nominal_input_variance = ar_output_variance(ar.coefficients, ar.innovation_variance);
    ex.input = std::move(ar);
  } else if (in_kind == "constant") {
    const double v = in.number("value", 1.0);
    ex.input = ConstantInput{v};
    nominal_input_variance = v * v;
  } else {
    throw ConfigError("input.kind", "expected 'white', 'ar' or 'constant'");
  }
  in.finish();

  // noise
  const Json noise_json = top.has("noise") ? raw.at("noise") : Json{{"kind", "mixed_gaussian"}};
  Fields nz(noise_json, "noise");
  const std::string nz_kind = nz.text("kind", "mixed_gaussian");
  try {
    if (nz_kind == "none") {
      ex.noise = NoNoise{};
    } else if (nz_kind == "mixed_gaussian") {
      MixtureSource src;
      src.mu1 = nz.number("mu1", 0.0);
      src.mu2 = nz.number("mu2", 0.0);
      src.nu1 = nz.number("nu1", 1e-4);
      src.nu2 = nz.number("nu2", 20.0);
      src.theta = nz.number("theta", 0.05);
      const std::string reading = nz.text("nu_reading", "variance");
      if (reading == "variance") {
        src.reading = NuReading::Variance;
      } else if (reading == "stddev") {
        src.reading = NuReading::StdDev;
      } else {
        throw ConfigError("noise.nu_reading", "expected 'variance' or 'stddev'");
      }
      MixedGaussianParams p = src.params(src.reading);
      p.validate();
      ex.noise = p;
      rc.mixture = src;
    } else if (nz_kind == "alpha_stable") {
      AlphaStableParams p;
      p.alpha = nz.number("alpha", 1.2);
      p.beta = nz.number("beta", 0.0);
      p.gamma = nz.number("gamma", 0.2);
      p.delta = nz.number("delta", 0.0);
      p.validate();
      ex.noise = p;
    } else {
      throw ConfigError("noise.kind", "expected 'none', 'mixed_gaussian' or 'alpha_stable'");
    }
  } catch (const InputError& e) {
    throw ConfigError("noise", e.what());
  }
  nz.finish();

  // filters
  const Json defaults_json =
      top.has("filter_defaults") ? raw.at("filter_defaults") : detail::empty_object();
  Fields defs(defaults_json, "filter_defaults");
  FilterSpec base;
  base.mu = defs.number("mu", 0.02);
  base.sigma1 = defs.number("sigma1", 2.0);
  base.sigma2 = defs.number("sigma2", 0.01);
  base.delta_prime = defs.number("delta_prime", 10.0);
  base.p = defs.number("p", 1.2);
  const bool shared_rho = defs.has("rho");
  const double rho_default = defs.number("rho", 0.0);
  defs.finish();

  Json filters_json;
  if (top.has("filters")) {
    filters_json = raw.at("filters");
  } else if (rc.echo) {
    filters_json = Json::array({{{"algorithm", "MCC"}}, {{"algorithm", "ZAMCC"}},
                                {{"algorithm", "RZAMCC"}}, {{"algorithm", "CIMMCC"}}});
  } else {
    filters_json = Json::array();
    for (const char* a : {"LMP", "MCC", "ZALMS", "RZALMS", "ZAMCC", "RZAMCC", "CIMMCC"}) {
      filters_json.push_back({{"algorithm", a}});
    }
  }
  if (!filters_json.is_array() || filters_json.empty()) {
    throw ConfigError("filters", "expected a non-empty array");
  }
  std::vector<std::optional<std::string>> given_labels;
  for (std::size_t i = 0; i < filters_json.size(); ++i) {
    const std::string p = "filters[" + std::to_string(i) + "]";
    Fields f(filters_json[i], p);
    const std::string name = f.text("algorithm", "");
    const auto alg = parse_algorithm(name);
    if (!alg) throw ConfigError(p + ".algorithm", "unknown algorithm '" + name + "'");
    FilterSpec spec = base;
    spec.algorithm = *alg;
    spec.mu = f.number("mu", base.mu);
    spec.rho = f.number("rho", shared_rho ? rho_default : detail::default_rho(*alg));
    spec.sigma1 = f.number("sigma1", base.sigma1);
    spec.sigma2 = f.number("sigma2", base.sigma2);
    spec.delta_prime = f.number("delta_prime", base.delta_prime);
    spec.p = f.number("p", base.p);
    given_labels.push_back(f.has("label") ? std::optional<std::string>(f.text("label", ""))
                                          : std::nullopt);
    f.finish();
    try {
      spec.validate();
    } catch (const InputError& e) {
      throw ConfigError(p, e.what());
    }
    if (!uses_zero_attractor(spec.algorithm)) spec.rho = 0.0;
    ex.filters.push_back(spec);
  }
  rc.labels = detail::unique_labels(ex.filters, given_labels);

  // sweep
  if (top.has("sweep")) {
    rc.sweep = SweepSettings{detail::parse_axis(raw.at("sweep"), "sweep"), std::nullopt};
  }
  if (top.has("sweep_series")) {
    if (!rc.sweep) throw ConfigError("sweep_series", "requires 'sweep'");
    rc.sweep->series = detail::parse_axis(raw.at("sweep_series"), "sweep_series");
  }

  // bound
  const Json bound_json = top.has("bound") ? raw.at("bound") : detail::empty_object();
  Fields bd(bound_json, "bound");
  rc.bound.samples = bd.unsigned_integer("samples", 1000000);
  rc.bound.input_variance = bd.number("input_variance", nominal_input_variance);
  rc.bound.sigma1 = bd.number("sigma1", base.sigma1);
  rc.bound.taps = bd.unsigned_integer("taps", taps);
  bd.finish();
  if (rc.bound.samples < kMinBoundSamples) {
    throw ConfigError("bound.samples",
                      "must be at least " + std::to_string(kMinBoundSamples));
  }
  if (!(rc.bound.input_variance > 0.0)) {
    throw ConfigError("bound.input_variance", "must be positive");
  }
  if (!(rc.bound.sigma1 > 0.0)) throw ConfigError("bound.sigma1", "must be positive");
  if (rc.bound.taps == 0) throw ConfigError("bound.taps", "must be positive");

  top.finish();
  try {
    ex.validate();
  } catch (const InputError& e) {
    throw ConfigError("run", e.what());
  }

  // Canonical description of everything that affects results.
  Json resolved;
  resolved["name"] = rc.name;
  resolved["run"] = {{"iterations", ex.iterations},
                     {"trials", ex.trials},
                     {"seed", ex.base_seed},
                     {"msd_window", ex.msd_window},
                     {"msd_scale", ex.msd_scale == MsdScale::Decibel ? "db" : "linear"},
                     {"clamp_diverged", ex.clamp_diverged},
                     {"msd_cap", ex.msd_cap}};
  Json segs = Json::array();
  for (const auto& s : ex.schedule.segments()) segs.push_back({{"start", s.start}, {"taps", s.taps}});
  resolved["channel"] = {{"segments", segs}};
  if (rc.echo) {
    resolved["channel"]["echo"] = {{"taps", rc.echo->taps},
                                   {"nonzeros", rc.echo->nonzeros},
                                   {"seed", rc.echo->seed}};
  }
  resolved["input"] = detail::input_to_json(ex.input);
  resolved["noise"] = detail::noise_to_json(ex.noise);
  if (rc.mixture) {
    resolved["noise"]["nu_reading"] =
        rc.mixture->reading == NuReading::Variance ? "variance" : "stddev";
  }
  resolved["filters"] = Json::array();
  for (std::size_t i = 0; i < ex.filters.size(); ++i) {
    resolved["filters"].push_back(detail::spec_to_json(ex.filters[i], rc.labels[i]));
  }
  if (rc.sweep) {
    resolved["sweep"] = {{"parameter", rc.sweep->axis.parameter},
                         {"values", rc.sweep->axis.values}};
    if (rc.sweep->series) {
      resolved["sweep_series"] = {{"parameter", rc.sweep->series->parameter},
                                  {"values", rc.sweep->series->values}};
    }
  }
  resolved["bound"] = {{"samples", rc.bound.samples},
                       {"input_variance", rc.bound.input_variance},
                       {"sigma1", rc.bound.sigma1},
                       {"taps", rc.bound.taps}};
  rc.resolved = std::move(resolved);
  rc.raw = std::move(raw);
  return rc;
}

/// Reads and parses a configuration file. I/O failures throw
/// std::ios_base::failure; malformed JSON throws ConfigError.
inline Json load_config_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str(), nullptr, true, /*ignore_comments=*/true);
  } catch (const Json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
}

inline RunConfig load_config(const std::string& path, const ConfigOverrides& overrides = {}) {
  return resolve_config(load_config_json(path), overrides);
}

}  // namespace smcc

#include "wpsec/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "wpsec/errors.hpp"

namespace wpsec {

std::string_view to_string(Scheme s) {
  return s == Scheme::Ser ? "ser" : "tsr";
}

namespace harness {

namespace {

constexpr const char* kSweepParams[] = {"eps", "delta", "lambda_f", "eta", "d_sr", "M"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError(key, "expected a number, got '" + text + "'");
  }
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (!std::isfinite(v) || v != std::floor(v) ||
      std::abs(v) > 9.0e15) {
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  }
  return static_cast<long long>(v);
}

std::uint64_t to_u64(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError(key, "expected an unsigned integer, got '" + text + "'");
  }
  return v;
}

void assign(ExperimentSpec& spec, const std::string& key, const std::string& value) {
  SystemConfig& c = spec.base;
  if (key == "N") c.N = static_cast<int>(to_integer(key, value));
  else if (key == "M") c.M = static_cast<int>(to_integer(key, value));
  else if (key == "Ps") c.Ps = to_double(key, value);
  else if (key == "N0") c.N0 = to_double(key, value);
  else if (key == "eta") c.eta = to_double(key, value);
  else if (key == "lambda_f") c.lambda_f = to_double(key, value);
  else if (key == "eps") c.eps = to_double(key, value);
  else if (key == "m_exp") c.m_exp = to_double(key, value);
  else if (key == "d_sr") c.d_sr = to_double(key, value);
  else if (key == "d_rd") c.d_rd = to_double(key, value);
  else if (key == "d_re") c.d_re = to_double(key, value);
  else if (key == "gamma0") c.gamma0 = to_double(key, value);
  else if (key == "trials") c.trials = static_cast<long>(to_integer(key, value));
  else if (key == "seed") c.seed = to_u64(key, value);
  else if (key == "T") c.T = to_double(key, value);
  else if (key == "sweep_param") spec.sweep_param = value;
  else if (key == "sweep_values") {
    spec.sweep_values.clear();
    for (const auto& item : split(value, ',')) {
      spec.sweep_values.push_back(to_double(key, item));
    }
  } else if (key == "schemes") {
    try {
      spec.schemes = parse_schemes(value);
    } catch (const ConfigError& e) {
      throw ConfigError(key, e.what());
    }
  } else if (key == "receive_mode") {
    try {
      spec.receive_mode = parse_receive_mode(value);
    } catch (const ConfigError& e) {
      throw ConfigError(key, e.what());
    }
  } else {
    throw ConfigError(key, "unknown key");
  }
}

void apply(ExperimentSpec& spec, const CliOverrides& o) {
  if (o.seed) spec.base.seed = *o.seed;
  if (o.trials) spec.base.trials = *o.trials;
  if (o.schemes) spec.schemes = *o.schemes;
  if (o.receive_mode) spec.receive_mode = *o.receive_mode;
}

// Neumaier-compensated sum in the order given.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      c += (sum - t) + x;
    } else {
      c += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + c; }
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
  long count = 0;
};

MeanStd reduce(const std::vector<double>& values, const std::vector<char>& valid) {
  CompensatedSum s;
  long n = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!valid[i]) continue;
    s.add(values[i]);
    ++n;
  }
  MeanStd r;
  r.count = n;
  if (n == 0) return r;
  r.mean = s.value() / static_cast<double>(n);
  if (n > 1) {
    CompensatedSum sq;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!valid[i]) continue;
      const double d = values[i] - r.mean;
      sq.add(d * d);
    }
    r.std = std::sqrt(sq.value() / static_cast<double>(n - 1));
  }
  return r;
}

BeamformerSet zf_beams(const ChannelSet& ch, ReceiveMode mode) {
  const SourceRelayBeams sr = mode == ReceiveMode::Single
                                  ? beamform::single_antenna_beamformers(ch)
                                  : beamform::source_relay_beamformers(ch.H_r());
  BeamformerSet b;
  b.w_s = sr.w_s;
  b.w_r = sr.w_r;
  b.w_H = ser::mrt_energy_beamformer(ch.h_r1);
  b.w_t = beamform::wt_interior(ch.h_d, beamform::zf_basis(ch.h_e_bar));
  return b;
}

double rate_or_nan(const SystemConfig& cfg, const LinkGains& gains, double delta) {
  if (!(delta * cfg.eta * gains.lf_gain < 1.0)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return ser::evaluate_gains(cfg, gains, delta).rwc;
}

}  // namespace
}  // namespace harness

void ExperimentSpec::validate() const {
  base.validate();
  if (std::find(std::begin(harness::kSweepParams), std::end(harness::kSweepParams),
                sweep_param) == std::end(harness::kSweepParams)) {
    throw ConfigError("sweep_param", "unknown parameter '" + sweep_param + "'");
  }
  if (sweep_values.empty()) throw ConfigError("sweep_values", "must be nonempty");
  if (schemes.empty()) throw ConfigError("schemes", "must be nonempty");
  for (const double v : sweep_values) {
    if (!std::isfinite(v)) throw ConfigError("sweep_values", "values must be finite");
    if (sweep_param == "delta") {
      if (v < 0.0 || v > 1.0) {
        throw ConfigError("sweep_values", "delta values must lie in [0, 1]");
      }
      continue;
    }
    if (sweep_param == "M" && v != std::floor(v)) {
      throw ConfigError("sweep_values", "M values must be integers");
    }
    try {
      harness::config_for(*this, v).validate();
    } catch (const ConfigError& e) {
      throw ConfigError("sweep_values", e.what());
    }
  }
}

namespace harness {

std::vector<Scheme> parse_schemes(const std::string& text) {
  const std::string t = trim(text);
  if (t == "both") return {Scheme::Ser, Scheme::Tsr};
  std::vector<Scheme> out;
  for (const auto& item : split(t, ',')) {
    Scheme s;
    if (item == "ser") s = Scheme::Ser;
    else if (item == "tsr") s = Scheme::Tsr;
    else throw ConfigError("scheme", "expected ser, tsr or both, got '" + item + "'");
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  if (out.empty()) throw ConfigError("scheme", "empty scheme list");
  return out;
}

ReceiveMode parse_receive_mode(const std::string& text) {
  const std::string t = trim(text);
  if (t == "antenna_reuse" || t == "reuse") return ReceiveMode::AntennaReuse;
  if (t == "single") return ReceiveMode::Single;
  throw ConfigError("receive_mode", "expected antenna_reuse, reuse or single, got '" +
                                        t + "'");
}

ExperimentSpec parse_config(const std::string& text) {
  ExperimentSpec spec;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(lineno), "missing key");
    }
    assign(spec, key, value);
  }
  return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path,
                           const CliOverrides& overrides) {
  ExperimentSpec spec;
  if (!path.empty()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    spec = parse_config(buf.str());
  }
  apply(spec, overrides);
  spec.validate();
  return spec;
}

CliOverrides overrides_from_env(const std::function<const char*(const char*)>& lookup) {
  const auto get = [&](const std::string& name) -> const char* {
    const std::string full = std::string(kEnvPrefix) + name;
    return lookup ? lookup(full.c_str()) : std::getenv(full.c_str());
  };
  CliOverrides o;
  if (const char* v = get("SEED")) o.seed = to_u64("WPSEC_SEED", trim(v));
  if (const char* v = get("TRIALS")) {
    o.trials = static_cast<long>(to_integer("WPSEC_TRIALS", trim(v)));
  }
  if (const char* v = get("SCHEME")) o.schemes = parse_schemes(v);
  if (const char* v = get("RECEIVE_MODE")) o.receive_mode = parse_receive_mode(v);
  return o;
}

CliOverrides merge(const CliOverrides& bottom, const CliOverrides& top) {
  CliOverrides r = bottom;
  if (top.seed) r.seed = top.seed;
  if (top.trials) r.trials = top.trials;
  if (top.schemes) r.schemes = top.schemes;
  if (top.receive_mode) r.receive_mode = top.receive_mode;
  return r;
}

SystemConfig config_for(const ExperimentSpec& spec, double value) {
  SystemConfig c = spec.base;
  const std::string& p = spec.sweep_param;
  if (p == "eps") c.eps = value;
  else if (p == "lambda_f") c.lambda_f = value;
  else if (p == "eta") c.eta = value;
  else if (p == "d_sr") c.d_sr = value;
  else if (p == "M") c.M = static_cast<int>(std::lround(value));
  // delta does not live in SystemConfig; run_trial receives it directly.
  return c;
}

TrialRates run_trial(const ExperimentSpec& spec, const SystemConfig& cfg,
                     const ChannelSet& ch, double value) {
  TrialRates r;
  const bool want_ser = std::find(spec.schemes.begin(), spec.schemes.end(),
                                  Scheme::Ser) != spec.schemes.end();
  const bool want_tsr = std::find(spec.schemes.begin(), spec.schemes.end(),
                                  Scheme::Tsr) != spec.schemes.end();
  if (spec.sweep_param == "delta") {
    const double delta = value;
    if (want_ser) {
      const LinkGains gains = ser::link_gains(cfg, ch, zf_beams(ch, spec.receive_mode));
      const double rate = rate_or_nan(cfg, gains, delta);
      r.ser_valid = std::isfinite(rate);
      r.ser = r.ser_valid ? rate : 0.0;
    }
    if (want_tsr) {
      const tsr::TsrGains gains =
          tsr::tsr_gains(cfg, ch, tsr::tsr_transmit_beamformer(ch));
      const auto best = numerics::golden_section_max(
          [&](double a) { return tsr::tsr_rate(cfg, gains, a, delta); }, 1e-9,
          1.0 - 1e-9, 1e-8);
      r.tsr = best.f;
    }
    return r;
  }
  if (want_ser) r.ser = beamform::run_algorithm1(cfg, ch, spec.receive_mode).eval.rwc;
  if (want_tsr) r.tsr = tsr::run_algorithm2(cfg, ch).rwc;
  return r;
}

std::vector<SweepRow> run_sweep(const ExperimentSpec& spec, unsigned threads) {
  spec.validate();
  threads = std::max(1u, threads);
  std::vector<SweepRow> rows;
  for (const double value : spec.sweep_values) {
    const SystemConfig cfg = config_for(spec, value);
    const auto n = static_cast<std::size_t>(cfg.trials);
    std::vector<TrialRates> results(n);
    std::vector<std::exception_ptr> errors(n);

    const auto work = [&](unsigned worker) {
      for (std::size_t i = worker; i < n; i += threads) {
        try {
          Rng rng = channel::trial_rng(cfg.seed, i);
          const ChannelSet ch = channel::sample_channels(cfg, rng);
          results[i] = run_trial(spec, cfg, ch, value);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    // Lowest failing trial index wins, independent of scheduling.
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    for (const Scheme s : spec.schemes) {
      std::vector<double> vals(n);
      std::vector<char> valid(n);
      for (std::size_t i = 0; i < n; ++i) {
        vals[i] = s == Scheme::Ser ? results[i].ser : results[i].tsr;
        valid[i] = s == Scheme::Ser ? results[i].ser_valid : results[i].tsr_valid;
      }
      const MeanStd ms = reduce(vals, valid);
      rows.push_back({spec.sweep_param, value, s, spec.receive_mode, ms.mean, ms.std,
                      ms.count, cfg.seed});
    }
  }
  return rows;
}

DeltaProfile delta_profile(const ChannelSet& ch, const SystemConfig& cfg,
                           const std::vector<double>& delta_grid) {
  const BeamformerSet zf = zf_beams(ch, ReceiveMode::AntennaReuse);
  BeamformerSet mrt = zf;
  mrt.w_t = ch.h_d / ch.h_d.norm();
  const LinkGains g_zf = ser::link_gains(cfg, ch, zf);
  const LinkGains g_mrt = ser::link_gains(cfg, ch, mrt);

  DeltaProfile p;
  p.eps = cfg.eps;
  const PowerSolution sol = power::optimal_delta(power::compute_Q(cfg, g_zf),
                                                 cfg.eta * g_zf.lf_gain);
  p.delta_star = sol.delta;
  p.branch = sol.branch;
  p.rwc_star = rate_or_nan(cfg, g_zf, sol.delta);
  p.rows.reserve(delta_grid.size());
  for (const double d : delta_grid) {
    p.rows.push_back({d, rate_or_nan(cfg, g_zf, d), rate_or_nan(cfg, g_mrt, d)});
  }
  return p;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  if (points == 0) return {};
  if (points == 1) return {lo};
  std::vector<double> g(points);
  const double span = hi - lo;
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = lo + span * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  g.back() = hi;
  return g;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

std::string csv_header() {
  return "sweep_param,value,scheme,receive_mode,rwc_mean,rwc_std,trials,seed";
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = csv_header() + "\n";
  for (const auto& r : rows) {
    out += r.sweep_param + "," + format_number(r.value) + "," +
           std::string(to_string(r.scheme)) + "," +
           std::string(to_string(r.receive_mode)) + "," + format_number(r.rwc_mean) +
           "," + format_number(r.rwc_std) + "," + std::to_string(r.trials) + "," +
           std::to_string(r.seed) + "\n";
  }
  return out;
}

void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << to_csv(rows);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string profile_csv(const std::vector<DeltaProfile>& profiles) {
  std::string out = "eps,delta,rwc_zf,rwc_mrt,closed_form\n";
  for (const auto& p : profiles) {
    for (const auto& r : p.rows) {
      out += format_number(p.eps) + "," + format_number(r.delta) + "," +
             format_number(r.rwc_zf) + "," + format_number(r.rwc_mrt) + ",0\n";
    }
    out += format_number(p.eps) + "," + format_number(p.delta_star) + "," +
           format_number(p.rwc_star) + ",nan,1\n";
  }
  return out;
}

}  // namespace harness
}  // namespace wpsec

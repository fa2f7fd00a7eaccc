#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wpsec/tsr_baseline.hpp"

namespace wpsec {

enum class Scheme { Ser, Tsr };

std::string_view to_string(Scheme s);

struct ExperimentSpec {
  std::string sweep_param = "eps";  // eps | delta | lambda_f | eta | d_sr | M
  std::vector<double> sweep_values{0.01};
  std::vector<Scheme> schemes{Scheme::Ser, Scheme::Tsr};
  SystemConfig base;
  ReceiveMode receive_mode = ReceiveMode::AntennaReuse;

  void validate() const;
};

struct SweepRow {
  std::string sweep_param;
  double value = 0.0;
  Scheme scheme = Scheme::Ser;
  ReceiveMode receive_mode = ReceiveMode::AntennaReuse;
  double rwc_mean = 0.0;
  double rwc_std = 0.0;
  long trials = 0;
  std::uint64_t seed = 0;
};

// Command-line (or environment) values that take precedence over the file.
struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> trials;
  std::optional<std::vector<Scheme>> schemes;
  std::optional<ReceiveMode> receive_mode;
};

namespace harness {

inline constexpr const char* kEnvPrefix = "WPSEC_";

/// Parses line-oriented `key = value` text with `#` comments. Keys are the
/// SystemConfig / ExperimentSpec field names; unknown keys, malformed values
/// and out-of-domain values raise ConfigError naming the key.
ExperimentSpec parse_config(const std::string& text);

/// Reads the file (an empty path means "defaults only"), then applies
/// overrides and validates.
ExperimentSpec load_config(const std::filesystem::path& path,
                           const CliOverrides& overrides = {});

/// WPSEC_SEED, WPSEC_TRIALS, WPSEC_SCHEME, WPSEC_RECEIVE_MODE. The lookup
/// function defaults to std::getenv.
CliOverrides overrides_from_env(
    const std::function<const char*(const char*)>& lookup = {});

/// Field-wise merge: values in `top` win over `bottom`.
CliOverrides merge(const CliOverrides& bottom, const CliOverrides& top);

std::vector<Scheme> parse_schemes(const std::string& text);
ReceiveMode parse_receive_mode(const std::string& text);

/// Applies one sweep value to a copy of the base configuration.
SystemConfig config_for(const ExperimentSpec& spec, double value);

/// Worst-case rates of both schemes on one channel draw. When the sweep
/// parameter is delta, the power split is pinned to `value` (S-ER uses the
/// zero-forcing design, TSR still searches alpha); otherwise each scheme runs
/// its full optimizer. A rate is invalid when the pinned split cannot be
/// sustained.
struct TrialRates {
  double ser = 0.0;
  double tsr = 0.0;
  bool ser_valid = true;
  bool tsr_valid = true;
};

TrialRates run_trial(const ExperimentSpec& spec, const SystemConfig& cfg,
                     const ChannelSet& ch, double value);

/// For every sweep value and scheme, averages the worst-case rate over
/// cfg.trials channel draws. Draw i uses the stream (seed, i) for every value
/// and scheme, and the reduction is a fixed-order compensated sum, so the
/// result is identical for any thread count.
std::vector<SweepRow> run_sweep(const ExperimentSpec& spec, unsigned threads = 1);

struct DeltaProfileRow {
  double delta = 0.0;
  double rwc_zf = 0.0;   // NaN where the recycling loop is infeasible
  double rwc_mrt = 0.0;  // NaN where the recycling loop is infeasible
};

struct DeltaProfile {
  double eps = 0.0;
  double delta_star = 0.0;  // closed-form optimum for the ZF beams
  double rwc_star = 0.0;
  Branch branch = Branch::Saturated;
  std::vector<DeltaProfileRow> rows;
};

/// Rate versus power split for the zero-forcing transmit beamformer and for
/// MRT toward the destination (w_t = h_d / ||h_d||), both with SVD source and
/// receive beamformers.
DeltaProfile delta_profile(const ChannelSet& ch, const SystemConfig& cfg,
                           const std::vector<double>& delta_grid);

std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

/// Scientific notation, 12 significant digits.
std::string format_number(double v);

std::string csv_header();
std::string to_csv(const std::vector<SweepRow>& rows);
void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

std::string profile_csv(const std::vector<DeltaProfile>& profiles);

/// Fixed single-block reference channels (N = 5, M = 3) used by the
/// power-split profile and the regression tests.
ChannelSet reference_fixture_channels();

}  // namespace harness
}  // namespace wpsec

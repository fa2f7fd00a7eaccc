#pragma once

#include <cstdint>
#include <random>

#include "wpsec/numerics.hpp"

namespace wpsec {

// Scenario parameters. Powers are linear watts, distances normalized.
// Defaults are the Monte Carlo setup used throughout the experiments; Ps and
// N0 are not pinned by the scenario and are exposed for configuration.
struct SystemConfig {
  int N = 5;  // source antennas
  int M = 3;  // relay transmit antennas
  double Ps = 1.0;
  double N0 = 0.1;
  double eta = 0.8;
  double lambda_f = 0.2;  // mean power of each loopback channel entry
  double eps = 0.01;      // ECSI uncertainty radius
  double m_exp = 3.0;
  double d_sr = 1.0;
  double d_rd = 1.0;
  double d_re = 1.2;
  double gamma0 = 1e-6;  // leakage threshold, bits/s/Hz
  long trials = 10000;
  std::uint64_t seed = 1;
  double T = 1.0;

  /// Throws ConfigError naming the first field outside its domain.
  void validate() const;
};

// One realization of every link. H_r = [h_r1, H_r2] is N x (M+1).
struct ChannelSet {
  CVector h_r1;   // N
  CMatrix H_r2;   // N x M
  CVector f;      // M, loopback
  CVector h_d;    // M, relay -> destination
  CVector h_e_bar;  // M, estimated relay -> eavesdropper

  CMatrix H_r() const;
  int N() const { return static_cast<int>(h_r1.size()); }
  int M() const { return static_cast<int>(h_d.size()); }
};

using Rng = std::mt19937_64;

namespace channel {

/// Seed of the independent stream for one trial; a pure function of
/// (root seed, trial index) so trial order and thread count never matter.
std::uint64_t trial_stream_seed(std::uint64_t root_seed, std::uint64_t trial);

Rng trial_rng(std::uint64_t root_seed, std::uint64_t trial);

/// d^(-m_exp). Throws InvalidDistance unless d > 0.
double variance_from_distance(double d, double m_exp);

/// CN(0, variance) sample built as (g1 + i g2) * sqrt(variance / 2).
cplx complex_gaussian(Rng& rng, double variance);

/// Draws h_r1, H_r2 (row-major), f, h_d, h_e_bar in that order. The number
/// of normals consumed depends only on (N, M), never on variances.
ChannelSet sample_channels(const SystemConfig& cfg, Rng& rng);

/// |h_e_bar^H w_t| + eps * ||w_t||: the largest |(h_e_bar + dh)^H w_t| over
/// ||dh|| <= eps.
double worst_case_effective_gain(const CVector& h_e_bar, double eps,
                                 const CVector& w_t);

/// Perturbation with ||dh|| <= eps. With probability boundary_probability
/// the sample lies on the sphere ||dh|| == eps; otherwise it is uniform in
/// the ball (radius eps * u^(1/(2 dim))). Direction is a normalized complex
/// Gaussian.
CVector sample_uncertainty(double eps, int dim, Rng& rng,
                           double boundary_probability = 0.0);

/// Uniformly distributed unit vector in C^dim.
CVector random_unit_vector(int dim, Rng& rng);

}  // namespace channel
}  // namespace wpsec

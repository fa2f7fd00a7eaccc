#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "wpsec/tsr_baseline.hpp"

namespace wpsec::oracle {

// Brute-force validators. None of these call the closed forms they certify;
// the only shared code is the formula-direct rate evaluation.

struct DeltaGridResult {
  double delta_best = 0.0;
  double rwc_best = 0.0;
};

/// Exhaustive uniform grid over delta in [0, 1] (grid_points >= 1000),
/// skipping points where the recycling loop is infeasible.
DeltaGridResult delta_grid_oracle(const SystemConfig& cfg, const LinkGains& gains,
                                  std::size_t grid_points);
DeltaGridResult delta_grid_oracle(const SystemConfig& cfg, const ChannelSet& ch,
                                  const BeamformerSet& beams,
                                  std::size_t grid_points);

struct AlphaDeltaGridResult {
  double alpha_best = 0.0;
  double delta_best = 0.0;
  double rwc_best = 0.0;
};

/// TSR rate on an n_alpha x n_delta grid: alpha at cell centres of (0, 1),
/// delta at uniform points of [0, 1].
AlphaDeltaGridResult alpha_delta_grid_oracle(const SystemConfig& cfg,
                                             const ChannelSet& ch,
                                             const CVector& w_t,
                                             std::size_t n_alpha,
                                             std::size_t n_delta);

/// Largest objective value over `samples` uniform unit vectors in C^dim.
double beamformer_sampling_oracle(const std::function<double(const CVector&)>& objective,
                                  int dim, std::size_t samples, Rng& rng);

/// Largest |(h_e_bar + dh)^H w_t| over sampled dh with ||dh|| <= eps. One
/// third of the draws are uniform in the ball, one third uniform on the
/// sphere, and one third on the sphere aimed along w_t with a random phase
/// and a small random tilt.
double uncertainty_ball_oracle(const CVector& h_e_bar, double eps,
                               const CVector& w_t, std::size_t samples, Rng& rng);

struct MonotonicityReport {
  std::vector<int> signs;   // sign of each finite difference: -1, 0, +1
  int sign_changes = 0;     // changes between nonzero signs
  bool nondecreasing = true;
  bool nonincreasing = true;
  bool unimodal = true;     // + ... + - ... - (either run may be empty)
};

/// Finite-difference sign pattern of f over a sorted grid. Differences with
/// |df| <= zero_tol count as 0.
MonotonicityReport monotonicity_probe(const std::function<double(double)>& f,
                                      const std::vector<double>& grid,
                                      double zero_tol = 0.0);

}  // namespace wpsec::oracle

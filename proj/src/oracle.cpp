#include "wpsec/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace wpsec::oracle {

DeltaGridResult delta_grid_oracle(const SystemConfig& cfg, const LinkGains& gains,
                                  std::size_t grid_points) {
  DeltaGridResult best{0.0, -std::numeric_limits<double>::infinity()};
  const double li = cfg.eta * gains.lf_gain;
  const double step = 1.0 / static_cast<double>(grid_points - 1);
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double delta = static_cast<double>(i) * step;
    if (!(delta * li < 1.0)) continue;
    const double rwc = ser::evaluate_gains(cfg, gains, delta).rwc;
    if (rwc > best.rwc_best) best = {delta, rwc};
  }
  if (best.rwc_best < 0.0) best = {0.0, 0.0};
  return best;
}

DeltaGridResult delta_grid_oracle(const SystemConfig& cfg, const ChannelSet& ch,
                                  const BeamformerSet& beams,
                                  std::size_t grid_points) {
  return delta_grid_oracle(cfg, ser::link_gains(cfg, ch, beams), grid_points);
}

AlphaDeltaGridResult alpha_delta_grid_oracle(const SystemConfig& cfg,
                                             const ChannelSet& ch,
                                             const CVector& w_t,
                                             std::size_t n_alpha,
                                             std::size_t n_delta) {
  const tsr::TsrGains gains = tsr::tsr_gains(cfg, ch, w_t);
  AlphaDeltaGridResult best{0.5, 0.0, -1.0};
  for (std::size_t i = 0; i < n_alpha; ++i) {
    const double alpha = (static_cast<double>(i) + 0.5) / static_cast<double>(n_alpha);
    for (std::size_t j = 0; j < n_delta; ++j) {
      const double delta = static_cast<double>(j) / static_cast<double>(n_delta - 1);
      const double rwc = tsr::tsr_rate(cfg, gains, alpha, delta);
      if (rwc > best.rwc_best) best = {alpha, delta, rwc};
    }
  }
  return best;
}

double beamformer_sampling_oracle(const std::function<double(const CVector&)>& objective,
                                  int dim, std::size_t samples, Rng& rng) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    best = std::max(best, objective(channel::random_unit_vector(dim, rng)));
  }
  return best;
}

double uncertainty_ball_oracle(const CVector& h_e_bar, double eps,
                               const CVector& w_t, std::size_t samples, Rng& rng) {
  const int dim = static_cast<int>(h_e_bar.size());
  const CVector w_hat = w_t / w_t.norm();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double best = std::abs(h_e_bar.dot(w_t));
  for (std::size_t s = 0; s < samples; ++s) {
    CVector dh;
    switch (s % 3) {
      case 0:
        dh = channel::sample_uncertainty(eps, dim, rng, 0.0);
        break;
      case 1:
        dh = channel::sample_uncertainty(eps, dim, rng, 1.0);
        break;
      default: {
        const double phase = 2.0 * std::numbers::pi * unif(rng);
        const double tilt = 0.05 * unif(rng);
        CVector dir = std::polar(1.0, phase) * w_hat +
                      tilt * channel::random_unit_vector(dim, rng);
        dh = eps * dir / dir.norm();
        break;
      }
    }
    best = std::max(best, std::abs((h_e_bar + dh).dot(w_t)));
  }
  return best;
}

MonotonicityReport monotonicity_probe(const std::function<double(double)>& f,
                                      const std::vector<double>& grid,
                                      double zero_tol) {
  MonotonicityReport r;
  if (grid.size() < 2) return r;
  double prev = f(grid.front());
  int last_nonzero = 0;
  bool seen_down = false;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = f(grid[i]);
    const double d = cur - prev;
    const int s = d > zero_tol ? 1 : (d < -zero_tol ? -1 : 0);
    r.signs.push_back(s);
    if (s != 0) {
      if (last_nonzero != 0 && s != last_nonzero) ++r.sign_changes;
      last_nonzero = s;
    }
    if (s < 0) {
      r.nondecreasing = false;
      seen_down = true;
    }
    if (s > 0) {
      r.nonincreasing = false;
      if (seen_down) r.unimodal = false;
    }
    prev = cur;
  }
  return r;
}

}  // namespace wpsec::oracle

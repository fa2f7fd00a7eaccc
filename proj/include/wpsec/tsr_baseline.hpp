#pragma once

#include <vector>

#include "wpsec/beamform.hpp"

namespace wpsec {

// Time-switching relaying benchmark: an alpha fraction of the block harvests
// energy, the rest is split between two half-duplex hops.
struct TsrSolution {
  double alpha = 1.0 / 3.0;
  double delta = 1.0;
  CVector w_t;
  double rwc = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // rwc after init and after every iteration
};

struct TsrOptions {
  double alpha0 = 1.0 / 3.0;
  double delta0 = 1.0;
  double eps_tol = 1e-6;
  int max_iter = 100;
  double delta_tol = 1e-8;
  double alpha_tol = 1e-8;
};

namespace tsr {

// Gains that do not depend on (alpha, delta): source MRT gain ||h_r1||^2 and
// the transmit-side gains of a fixed w_t.
struct TsrGains {
  double source_gain = 0.0;  // |h_r1^H w_H|^2 = |h_r1^H w_s|^2
  double hd_gain = 0.0;
  double he_wc_gain = 0.0;
};

TsrGains tsr_gains(const SystemConfig& cfg, const ChannelSet& ch,
                   const CVector& w_t);

/// 2 delta Ps eta alpha / (1 - alpha) |h_r1^H w_H|^2. Throws InvalidAlpha
/// unless 0 < alpha < 1.
double tsr_relay_power(const SystemConfig& cfg, double source_gain, double alpha,
                       double delta);
double tsr_relay_power(const SystemConfig& cfg, const ChannelSet& ch,
                       double alpha, double delta);

struct TsrSinrs {
  double gamma_d = 0.0;
  double gamma_ewc = 0.0;
};

TsrSinrs tsr_sinrs(const SystemConfig& cfg, const TsrGains& gains, double alpha,
                   double delta);
TsrSinrs tsr_sinrs(const SystemConfig& cfg, const ChannelSet& ch, double alpha,
                   double delta, const CVector& w_t);

/// (1 - alpha) / 2 [log2(1 + gamma_d) - log2(1 + gamma_ewc)]^+
double tsr_wcsr(double alpha, double gamma_d, double gamma_ewc);

/// Rate at (alpha, delta) for fixed gains.
double tsr_rate(const SystemConfig& cfg, const TsrGains& gains, double alpha,
                double delta);

/// Transmit beamformer update: zero-force h_e_bar, then maximize
/// |h_d^H w|^2 / (eps^2 ||w||^2) over the null space.
CVector tsr_transmit_beamformer(const ChannelSet& ch);

/// Block-coordinate ascent over (delta, w_t, alpha). Every update keeps the
/// incumbent when the search does not improve on it, so the objective never
/// decreases. If max_iter is reached, converged is false and the last
/// iterate is returned.
TsrSolution run_algorithm2(const SystemConfig& cfg, const ChannelSet& ch,
                           const TsrOptions& opts = {});

}  // namespace tsr
}  // namespace wpsec

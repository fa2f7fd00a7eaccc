#include "wpsec/tsr_baseline.hpp"

#include <algorithm>
#include <cmath>

#include "wpsec/errors.hpp"

namespace wpsec::tsr {

namespace {

// Open interval endpoints used by the alpha search.
constexpr double kAlphaLo = 1e-9;
constexpr double kAlphaHi = 1.0 - 1e-9;

}  // namespace

TsrGains tsr_gains(const SystemConfig& cfg, const ChannelSet& ch,
                   const CVector& w_t) {
  TsrGains g;
  g.source_gain = ch.h_r1.squaredNorm();
  g.hd_gain = std::norm(ch.h_d.dot(w_t));
  const double wc = channel::worst_case_effective_gain(ch.h_e_bar, cfg.eps, w_t);
  g.he_wc_gain = wc * wc;
  return g;
}

double tsr_relay_power(const SystemConfig& cfg, double source_gain, double alpha,
                       double delta) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidAlpha("tsr_relay_power: alpha must lie in (0, 1)");
  }
  return 2.0 * delta * cfg.Ps * cfg.eta * alpha / (1.0 - alpha) * source_gain;
}

double tsr_relay_power(const SystemConfig& cfg, const ChannelSet& ch,
                       double alpha, double delta) {
  return tsr_relay_power(cfg, ch.h_r1.squaredNorm(), alpha, delta);
}

TsrSinrs tsr_sinrs(const SystemConfig& cfg, const TsrGains& gains, double alpha,
                   double delta) {
  const double Pr = tsr_relay_power(cfg, gains.source_gain, alpha, delta);
  // Source beamformer is MRT on h_r1, so the first-hop gain is ||h_r1||^2.
  const double g = gains.source_gain;
  return {ser::sinr_destination(cfg.Ps, Pr, cfg.N0, g, gains.hd_gain),
          ser::sinr_eavesdropper_worst(cfg.Ps, Pr, cfg.N0, g, gains.he_wc_gain)};
}

TsrSinrs tsr_sinrs(const SystemConfig& cfg, const ChannelSet& ch, double alpha,
                   double delta, const CVector& w_t) {
  return tsr_sinrs(cfg, tsr_gains(cfg, ch, w_t), alpha, delta);
}

double tsr_wcsr(double alpha, double gamma_d, double gamma_ewc) {
  return 0.5 * (1.0 - alpha) *
         std::max(0.0, std::log2(1.0 + gamma_d) - std::log2(1.0 + gamma_ewc));
}

double tsr_rate(const SystemConfig& cfg, const TsrGains& gains, double alpha,
                double delta) {
  const TsrSinrs s = tsr_sinrs(cfg, gains, alpha, delta);
  return tsr_wcsr(alpha, s.gamma_d, s.gamma_ewc);
}

CVector tsr_transmit_beamformer(const ChannelSet& ch) {
  return beamform::wt_interior(ch.h_d, beamform::zf_basis(ch.h_e_bar));
}

TsrSolution run_algorithm2(const SystemConfig& cfg, const ChannelSet& ch,
                           const TsrOptions& opts) {
  TsrSolution sol;
  sol.alpha = opts.alpha0;
  sol.delta = opts.delta0;
  sol.w_t = tsr_transmit_beamformer(ch);
  TsrGains gains = tsr_gains(cfg, ch, sol.w_t);
  sol.rwc = tsr_rate(cfg, gains, sol.alpha, sol.delta);
  sol.history.push_back(sol.rwc);

  for (int n = 1; n <= opts.max_iter; ++n) {
    const double previous = sol.rwc;

    // delta-update at fixed (w_t, alpha).
    {
      const auto best = numerics::golden_section_max(
          [&](double d) { return tsr_rate(cfg, gains, sol.alpha, d); }, 0.0, 1.0,
          opts.delta_tol);
      if (best.f > sol.rwc) {
        sol.delta = best.x;
        sol.rwc = best.f;
      }
    }
    // w_t-update at fixed powers. The zero-forcing quotient does not involve
    // (alpha, delta), so this reproduces the incumbent unless it improves.
    {
      const CVector w = tsr_transmit_beamformer(ch);
      const TsrGains trial = tsr_gains(cfg, ch, w);
      const double rate = tsr_rate(cfg, trial, sol.alpha, sol.delta);
      if (rate > sol.rwc) {
        sol.w_t = w;
        gains = trial;
        sol.rwc = rate;
      }
    }
    // alpha-update at fixed (delta, w_t).
    {
      const auto best = numerics::golden_section_max(
          [&](double a) { return tsr_rate(cfg, gains, a, sol.delta); }, kAlphaLo,
          kAlphaHi, opts.alpha_tol);
      if (best.f > sol.rwc) {
        sol.alpha = best.x;
        sol.rwc = best.f;
      }
    }

    sol.iterations = n;
    sol.history.push_back(sol.rwc);
    if (std::abs(sol.rwc - previous) <= opts.eps_tol) {
      sol.converged = true;
      break;
    }
  }
  return sol;
}

}  // namespace wpsec::tsr

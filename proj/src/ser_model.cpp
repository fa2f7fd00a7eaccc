#include "wpsec/ser_model.hpp"

#include <algorithm>
#include <cmath>

#include "wpsec/errors.hpp"

namespace wpsec::ser {

CVector mrt_energy_beamformer(const CVector& h_r1) {
  const double n = h_r1.norm();
  if (!(n > 0.0)) throw ZeroChannel("mrt_energy_beamformer: h_r1 is zero");
  return h_r1 / n;
}

LinkGains link_gains(const SystemConfig& cfg, const ChannelSet& ch,
                     const BeamformerSet& b) {
  LinkGains out;
  out.energy_gain = std::norm(ch.h_r1.dot(b.w_H));
  out.g = std::norm(b.w_r.dot(ch.H_r().adjoint() * b.w_s));
  out.hd_gain = std::norm(ch.h_d.dot(b.w_t));
  const double wc = channel::worst_case_effective_gain(ch.h_e_bar, cfg.eps, b.w_t);
  out.he_wc_gain = wc * wc;
  out.lf_gain = std::norm(ch.f.dot(b.w_t));
  return out;
}

double harvested_power(const SystemConfig& cfg, const ChannelSet& ch,
                       const CVector& w_H, const CVector& w_t, double Pr) {
  return cfg.eta * (std::norm(ch.h_r1.dot(w_H)) * cfg.Ps +
                    std::norm(ch.f.dot(w_t)) * Pr);
}

double relay_power(double delta, const SystemConfig& cfg, double energy_gain,
                   double lf_gain) {
  const double denom = 1.0 - delta * cfg.eta * lf_gain;
  if (!(denom > 0.0)) {
    throw InfeasibleRecycling("relay_power: delta * eta * |f^H w_t|^2 >= 1");
  }
  return delta * cfg.eta * cfg.Ps * energy_gain / denom;
}

double relay_power(double delta, const SystemConfig& cfg, const ChannelSet& ch,
                   const CVector& w_H, const CVector& w_t) {
  return relay_power(delta, cfg, std::norm(ch.h_r1.dot(w_H)),
                     std::norm(ch.f.dot(w_t)));
}

double amplify_factor(double Pr, double Ps, double N0, double g) {
  return std::sqrt(Pr / (Ps * g + N0));
}

double sinr_destination(double Ps, double Pr, double N0, double g,
                        double hd_gain) {
  return Ps * Pr * hd_gain * g /
         (Pr * N0 * hd_gain + N0 * Ps * g + N0 * N0);
}

double sinr_eavesdropper_worst(double Ps, double Pr, double N0, double g,
                               double he_wc_gain) {
  return sinr_destination(Ps, Pr, N0, g, he_wc_gain);
}

double wcsr(double gamma_d, double gamma_ewc) {
  return std::max(0.0, 0.5 * std::log2((1.0 + gamma_d) / (1.0 + gamma_ewc)));
}

bool positive_wcsr_condition(double hd_gain, double he_wc_gain) {
  return hd_gain > he_wc_gain;
}

SecrecyEvaluation evaluate_at_power(const SystemConfig& cfg,
                                    const LinkGains& gains, double Pr) {
  SecrecyEvaluation e;
  e.gamma_d = sinr_destination(cfg.Ps, Pr, cfg.N0, gains.g, gains.hd_gain);
  e.gamma_ewc =
      sinr_eavesdropper_worst(cfg.Ps, Pr, cfg.N0, gains.g, gains.he_wc_gain);
  e.rwc = wcsr(e.gamma_d, e.gamma_ewc);
  return e;
}

SecrecyEvaluation evaluate_gains(const SystemConfig& cfg,
                                 const LinkGains& gains, double delta) {
  const double Pr = relay_power(delta, cfg, gains.energy_gain, gains.lf_gain);
  return evaluate_at_power(cfg, gains, Pr);
}

SecrecyEvaluation evaluate(const SystemConfig& cfg, const ChannelSet& ch,
                           const BeamformerSet& beams, double delta) {
  return evaluate_gains(cfg, link_gains(cfg, ch, beams), delta);
}

}  // namespace wpsec::ser

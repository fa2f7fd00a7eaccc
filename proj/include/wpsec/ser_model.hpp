#pragma once

#include "wpsec/channel.hpp"

namespace wpsec {

// Unit-norm beamformers: source information (N), source energy (N), relay
// receive (M+1) and relay transmit (M).
struct BeamformerSet {
  CVector w_s;
  CVector w_H;
  CVector w_r;
  CVector w_t;
};

// Scalar link gains a beamformer choice induces. Every SINR and rate in the
// model depends on the beamformers only through these numbers.
struct LinkGains {
  double energy_gain = 0.0;  // |h_r1^H w_H|^2
  double g = 0.0;            // |w_r^H H_r^H w_s|^2
  double hd_gain = 0.0;      // |h_d^H w_t|^2
  double he_wc_gain = 0.0;   // (|h_e_bar^H w_t| + eps ||w_t||)^2
  double lf_gain = 0.0;      // |f^H w_t|^2
};

struct SecrecyEvaluation {
  double gamma_d = 0.0;
  double gamma_ewc = 0.0;
  double rwc = 0.0;  // bits/s/Hz
};

namespace ser {

/// w_H = h_r1 / ||h_r1||. Throws ZeroChannel for h_r1 == 0.
CVector mrt_energy_beamformer(const CVector& h_r1);

LinkGains link_gains(const SystemConfig& cfg, const ChannelSet& ch,
                     const BeamformerSet& beams);

/// eta (|h_r1^H w_H|^2 Ps + |f^H w_t|^2 Pr), i.e. E_H / (T/2).
double harvested_power(const SystemConfig& cfg, const ChannelSet& ch,
                       const CVector& w_H, const CVector& w_t, double Pr);

/// Relay power sustained by recycling fraction delta of the harvested energy.
/// Throws InfeasibleRecycling when delta * eta * lf_gain >= 1.
double relay_power(double delta, const SystemConfig& cfg, double energy_gain,
                   double lf_gain);
double relay_power(double delta, const SystemConfig& cfg, const ChannelSet& ch,
                   const CVector& w_H, const CVector& w_t);

double amplify_factor(double Pr, double Ps, double N0, double g);

double sinr_destination(double Ps, double Pr, double N0, double g,
                        double hd_gain);

double sinr_eavesdropper_worst(double Ps, double Pr, double N0, double g,
                               double he_wc_gain);

/// max(0, log2((1 + gamma_d) / (1 + gamma_ewc)) / 2)
double wcsr(double gamma_d, double gamma_ewc);

/// True iff the destination sees strictly more signal than the worst-case
/// eavesdropper, which is exactly when the worst-case rate is positive.
bool positive_wcsr_condition(double hd_gain, double he_wc_gain);

/// Rate at a given relay power, bypassing the delta -> Pr map.
SecrecyEvaluation evaluate_at_power(const SystemConfig& cfg,
                                    const LinkGains& gains, double Pr);

/// relay_power -> SINRs -> wcsr, from precomputed gains.
SecrecyEvaluation evaluate_gains(const SystemConfig& cfg,
                                 const LinkGains& gains, double delta);

SecrecyEvaluation evaluate(const SystemConfig& cfg, const ChannelSet& ch,
                           const BeamformerSet& beams, double delta);

}  // namespace ser
}  // namespace wpsec

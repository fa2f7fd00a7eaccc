#include "wpsec/power_alloc.hpp"

#include <algorithm>
#include <cmath>

#include "wpsec/errors.hpp"

namespace wpsec {

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::C1: return "C1";
    case Branch::C2: return "C2";
    case Branch::C3: return "C3";
    case Branch::Saturated: return "Saturated";
    case Branch::Extended: return "Extended";
  }
  return "?";
}

double AppendixBCoefficients::rate(double x) const {
  return 0.5 * (std::log2(1.0 + a1 * x / (a2 * x + 1.0)) -
                std::log2(1.0 + a3 * x / (a4 * x + 1.0)));
}

namespace power {

namespace {

double noise_term(const SystemConfig& cfg, double g) {
  return cfg.N0 * cfg.Ps * g + cfg.N0 * cfg.N0;
}

bool is_interior(Branch b) {
  return b == Branch::C1 || b == Branch::C2 || b == Branch::C3 ||
         b == Branch::Extended;
}

}  // namespace

double compute_Q(const SystemConfig& cfg, const LinkGains& gains) {
  return cfg.eta * cfg.Ps * gains.energy_gain *
         std::sqrt(gains.hd_gain * gains.he_wc_gain / noise_term(cfg, gains.g));
}

double compute_Q(const SystemConfig& cfg, const ChannelSet& ch,
                 const BeamformerSet& beams) {
  return compute_Q(cfg, ser::link_gains(cfg, ch, beams));
}

Branch classify_branch(double Q, double li_gain) {
  if (Q > 0.0 && Q < 1.0 && li_gain > std::max(Q, 1.0 - Q)) return Branch::C1;
  if (Q > 0.5 && Q < 1.0 && std::abs(li_gain - Q) <= 1e-12 * Q) return Branch::C3;
  if (Q > 0.5 && 1.0 - Q < li_gain && li_gain < std::min(1.0, Q)) {
    return Branch::C2;
  }
  if (Q >= 1.0 && li_gain >= 1.0) return Branch::Extended;
  return Branch::Saturated;
}

PowerSolution optimal_delta(double Q, double li_gain) {
  PowerSolution sol;
  sol.branch = classify_branch(Q, li_gain);
  if (is_interior(sol.branch)) {
    sol.delta = 1.0 / (li_gain + Q);
    if (sol.delta > 1.0) {
      sol.delta = 1.0;
      sol.branch = Branch::Saturated;
    }
  } else {
    sol.delta = 1.0;
  }
  return sol;
}

double optimal_relay_power(const SystemConfig& cfg, const LinkGains& gains,
                           const PowerSolution& sol) {
  if (is_interior(sol.branch)) {
    return std::sqrt(noise_term(cfg, gains.g) /
                     (gains.hd_gain * gains.he_wc_gain));
  }
  const double li = cfg.eta * gains.lf_gain;
  if (!(li < 1.0)) {
    throw InfeasibleRecycling("optimal_relay_power: eta |f^H w_t|^2 >= 1 at delta = 1");
  }
  return cfg.eta * cfg.Ps * gains.energy_gain / (1.0 - li);
}

PowerSolution solve(const SystemConfig& cfg, const LinkGains& gains) {
  PowerSolution sol = optimal_delta(compute_Q(cfg, gains), cfg.eta * gains.lf_gain);
  sol.Pr = optimal_relay_power(cfg, gains, sol);
  return sol;
}

PowerSolution solve(const SystemConfig& cfg, const ChannelSet& ch,
                    const BeamformerSet& beams) {
  return solve(cfg, ser::link_gains(cfg, ch, beams));
}

AppendixBCoefficients appendix_b_machinery(const SystemConfig& cfg,
                                           const LinkGains& gains) {
  const double k = noise_term(cfg, gains.g);
  const double li = cfg.eta * gains.lf_gain;
  const double e = cfg.eta * cfg.Ps * gains.energy_gain;
  AppendixBCoefficients c;
  c.a1 = e * cfg.Ps * gains.hd_gain * gains.g / k;
  c.a2 = e * cfg.N0 * gains.hd_gain / k - li;
  c.a3 = e * cfg.Ps * gains.he_wc_gain * gains.g / k;
  c.a4 = e * cfg.N0 * gains.he_wc_gain / k - li;
  c.A = (c.a1 * c.a4 * c.a4 - c.a2 * c.a2 * c.a3) + c.a1 * c.a3 * (c.a4 - c.a2);
  c.B = 2.0 * (c.a1 * c.a4 - c.a2 * c.a3);
  c.C = c.a1 - c.a3;
  c.Delta = c.B * c.B - 4.0 * c.A * c.C;
  return c;
}

AppendixBCoefficients appendix_b_machinery(const SystemConfig& cfg,
                                           const ChannelSet& ch,
                                           const BeamformerSet& beams) {
  return appendix_b_machinery(cfg, ser::link_gains(cfg, ch, beams));
}

}  // namespace power
}  // namespace wpsec

#pragma once

#include <string_view>

#include "wpsec/ser_model.hpp"

namespace wpsec {

// Which case of the optimal power split applies.
//   C1, C2, C3  interior optimum delta = 1 / (eta |f^H w_t|^2 + Q)
//   Saturated   rate nondecreasing in delta, optimum delta = 1
//   Extended    Q >= 1 and eta |f^H w_t|^2 >= 1: none of C1-C3 holds, yet
//               delta = 1 is infeasible; the interior formula is still the
//               maximizer over the feasible range [0, 1 / (eta |f^H w_t|^2)).
enum class Branch { C1, C2, C3, Saturated, Extended };

std::string_view to_string(Branch b);

struct PowerSolution {
  double delta = 1.0;
  double Pr = 0.0;
  Branch branch = Branch::Saturated;
};

// Coefficients of the rate written as a function of the power split x:
//   f(x) = 1/2 (log2(1 + a1 x / (a2 x + 1)) - log2(1 + a3 x / (a4 x + 1)))
// and of the numerator h(x) = A x^2 + B x + C of its derivative.
struct AppendixBCoefficients {
  double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
  double A = 0.0, B = 0.0, C = 0.0;
  double Delta = 0.0;  // B^2 - 4AC

  double h(double x) const { return (A * x + B) * x + C; }
  double rate(double x) const;
};

namespace power {

/// eta Ps energy_gain sqrt(hd_gain he_wc_gain / (N0 Ps g + N0^2))
double compute_Q(const SystemConfig& cfg, const LinkGains& gains);
double compute_Q(const SystemConfig& cfg, const ChannelSet& ch,
                 const BeamformerSet& beams);

/// li_gain is eta |f^H w_t|^2. Conditions are tested in the order
/// C1, C3, C2 so labels are disjoint; C3's equality uses 1e-12 relative
/// tolerance.
Branch classify_branch(double Q, double li_gain);

/// delta* for the given (Q, li_gain). Interior results that round above 1
/// are clamped to 1 and relabelled Saturated.
PowerSolution optimal_delta(double Q, double li_gain);

/// Relay power at delta*. Interior branches use the balanced-power closed
/// form; Saturated throws InfeasibleRecycling when eta |f^H w_t|^2 >= 1.
double optimal_relay_power(const SystemConfig& cfg, const LinkGains& gains,
                           const PowerSolution& sol);

/// classify -> delta* -> Pr*, all from one set of beams.
PowerSolution solve(const SystemConfig& cfg, const LinkGains& gains);
PowerSolution solve(const SystemConfig& cfg, const ChannelSet& ch,
                    const BeamformerSet& beams);

AppendixBCoefficients appendix_b_machinery(const SystemConfig& cfg,
                                           const LinkGains& gains);
AppendixBCoefficients appendix_b_machinery(const SystemConfig& cfg,
                                           const ChannelSet& ch,
                                           const BeamformerSet& beams);

}  // namespace power
}  // namespace wpsec

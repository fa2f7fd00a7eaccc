#pragma once

#include <optional>
#include <string_view>

#include "wpsec/power_alloc.hpp"

namespace wpsec {

enum class ReceiveMode {
  AntennaReuse,  // all M+1 relay antennas receive in the first phase
  Single,        // only the dedicated receive antenna (w_r = e_1)
};

std::string_view to_string(ReceiveMode m);

enum class WtMethod { Interior, SaturatedBounds, SaturatedLeakage };

std::string_view to_string(WtMethod m);

struct SerSolution {
  BeamformerSet beams;
  PowerSolution power;
  SecrecyEvaluation eval;
  WtMethod wt_method = WtMethod::Interior;
  // Power-split classification made with the zero-forcing candidate w_t.
  double candidate_Q = 0.0;
  double candidate_li_gain = 0.0;
  Branch candidate_branch = Branch::Saturated;
  std::optional<double> zeta;  // set when the leakage method won
};

// Hermitian (M-1) x (M-1) forms of the delta = 1 transmit problem, expressed
// in the coordinates of a zero-forcing basis B.
struct SaturatedMatrices {
  CMatrix R_RD, Rt_fD, Rt_RD;
  CMatrix R_RE, Rt_fE, Rt_RE;
};

struct LambdaBounds {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

struct SourceRelayBeams {
  CVector w_s;  // N
  CVector w_r;  // M+1
  double sigma_max = 0.0;
};

struct LeakageResult {
  CVector w_t;
  double zeta = 0.0;
  double g_eps = 0.0;
  double rwc = 0.0;  // at delta = 1
};

namespace beamform {

/// Top singular pair of H_r^H: w_s is the right vector (length N) and w_r the
/// left vector (length M+1), so |w_r^H H_r^H w_s| = sigma_max.
SourceRelayBeams source_relay_beamformers(const CMatrix& H_r);

/// w_s = MRT on h_r1 and w_r = e_1.
SourceRelayBeams single_antenna_beamformers(const ChannelSet& ch);

CMatrix zf_basis(const CVector& h_e_bar);

/// Unit w_t in span(B) maximizing |h_d^H w_t|^2. When h_d is orthogonal to
/// span(B) the first basis column is returned.
CVector wt_interior(const CVector& h_d, const CMatrix& B);

SaturatedMatrices build_saturated_matrices(const SystemConfig& cfg,
                                           const ChannelSet& ch,
                                           const LinkGains& source_gains,
                                           const CMatrix& B);

/// Per-antenna extremes of the loopback quotient ratio. Throws
/// InfeasibleRecycling if some 1 - eta |f_i|^2 <= 0.
LambdaBounds lambda_bounds(const SystemConfig& cfg, const ChannelSet& ch,
                           const LinkGains& source_gains);

/// w_t = B q2 / ||B q2|| with q2 the top generalized eigenvector of
/// (Rt_RD, Rt_RE).
CVector wt_saturated_bounds(const SaturatedMatrices& mats, const CMatrix& B);

/// Loopback budget of the leakage-constrained design:
/// |f^H w_t|^2 <= g(eps) keeps the worst-case leakage at delta = 1 below
/// gamma0.
double leakage_budget(const SystemConfig& cfg, const LinkGains& source_gains);

/// Leakage-constrained transmit design at delta = 1 for a fixed zeta:
/// maximizes the destination quotient subject to |f^H w_t|^2 = zeta g(eps).
/// Returns nullopt when no unit vector in span(B) meets the constraint.
std::optional<CVector> wt_leakage_for_zeta(const SystemConfig& cfg,
                                           const ChannelSet& ch,
                                           const LinkGains& source_gains,
                                           const CMatrix& B, double zeta);

/// Searches zeta in [0, 1] for the w_t maximizing the worst-case rate at
/// delta = 1. Throws LeakageInfeasible when g(eps) <= 0 or no zeta admits a
/// feasible design.
LeakageResult wt_saturated_leakage(const SystemConfig& cfg, const ChannelSet& ch,
                                   const LinkGains& source_gains,
                                   const CMatrix& B);

SerSolution run_algorithm1(const SystemConfig& cfg, const ChannelSet& ch,
                           ReceiveMode mode = ReceiveMode::AntennaReuse);

}  // namespace beamform
}  // namespace wpsec

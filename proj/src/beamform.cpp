#include "wpsec/beamform.hpp"

#include <cmath>
#include <limits>

#include "wpsec/errors.hpp"

namespace wpsec {

std::string_view to_string(ReceiveMode m) {
  return m == ReceiveMode::AntennaReuse ? "antenna_reuse" : "single";
}

std::string_view to_string(WtMethod m) {
  switch (m) {
    case WtMethod::Interior: return "interior";
    case WtMethod::SaturatedBounds: return "saturated_bounds";
    case WtMethod::SaturatedLeakage: return "saturated_leakage";
  }
  return "?";
}

namespace beamform {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Relative back-off from delta = 1 / (eta |f^H w_t|^2) when the rate has a
// supremum but no maximizer on the feasible range.
constexpr double kBoundaryMargin = 1e-9;

double noise_term(const SystemConfig& cfg, double g) {
  return cfg.N0 * cfg.Ps * g + cfg.N0 * cfg.N0;
}

CVector lift(const CMatrix& B, const CVector& v) {
  CVector w = B * v;
  return w / w.norm();
}

LinkGains with_transmit(const SystemConfig& cfg, const ChannelSet& ch,
                        const LinkGains& source_gains, const CVector& w_t) {
  LinkGains g = source_gains;
  g.hd_gain = std::norm(ch.h_d.dot(w_t));
  const double wc = channel::worst_case_effective_gain(ch.h_e_bar, cfg.eps, w_t);
  g.he_wc_gain = wc * wc;
  g.lf_gain = std::norm(ch.f.dot(w_t));
  return g;
}

// Worst-case rate with all harvested power recycled, or -inf if the loop
// cannot sustain itself.
double rate_at_full_delta(const SystemConfig& cfg, const ChannelSet& ch,
                          const LinkGains& source_gains, const CVector& w_t) {
  const LinkGains g = with_transmit(cfg, ch, source_gains, w_t);
  if (!(cfg.eta * g.lf_gain < 1.0)) return kNegInf;
  return ser::evaluate_gains(cfg, g, 1.0).rwc;
}

// Unit v maximizing |h^H v| subject to |f^H v|^2 == target.
std::optional<CVector> constrained_direction(const CVector& h, const CVector& f,
                                             double target) {
  const Eigen::Index dim = h.size();
  const double fn = f.norm();
  const double tol = 1e-12 * std::max(1.0, fn * fn);
  if (fn == 0.0) {
    if (target > tol) return std::nullopt;
    if (h.norm() > 0.0) return CVector(h / h.norm());
    return CVector(CVector::Unit(dim, 0));
  }
  const double cos2 = target / (fn * fn);
  if (cos2 > 1.0 + 1e-12) return std::nullopt;
  const double c = std::sqrt(std::min(1.0, cos2));
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));

  const CVector f_hat = f / fn;
  const cplx alpha = f_hat.dot(h);
  const cplx phase = std::abs(alpha) > 0.0 ? alpha / std::abs(alpha) : cplx{1.0, 0.0};
  CVector v = c * phase * f_hat;
  if (s > 0.0) {
    const CVector r = h - alpha * f_hat;
    const double beta = r.norm();
    CVector p;
    if (beta > 1e-14 * std::max(1.0, h.norm())) {
      p = r / beta;
    } else {
      if (dim < 2) return std::nullopt;
      p = numerics::nullspace_basis(f_hat).col(0);
    }
    v += s * p;
  }
  return v / v.norm();
}

}  // namespace

SourceRelayBeams source_relay_beamformers(const CMatrix& H_r) {
  const numerics::SingularTriplet t = numerics::top_singular_triplet(H_r.adjoint());
  return {t.v, t.u, t.sigma_max};
}

SourceRelayBeams single_antenna_beamformers(const ChannelSet& ch) {
  SourceRelayBeams out;
  out.w_s = ser::mrt_energy_beamformer(ch.h_r1);
  out.w_r = CVector::Unit(ch.M() + 1, 0);
  out.sigma_max = ch.h_r1.norm();
  return out;
}

CMatrix zf_basis(const CVector& h_e_bar) {
  return numerics::nullspace_basis(h_e_bar);
}

CVector wt_interior(const CVector& h_d, const CMatrix& B) {
  const CVector proj = B.adjoint() * h_d;
  if (proj.norm() <= 1e-14 * std::max(1.0, h_d.norm())) {
    return B.col(0);
  }
  // eps^2 scales the denominator only, so the direction is eps-free and the
  // eps = 0 case stays well posed.
  const CMatrix num = proj * proj.adjoint();
  const CMatrix den = B.adjoint() * B;
  const numerics::GenEigResult q = numerics::max_gen_eigvec(num, den);
  return lift(B, q.vector);
}

SaturatedMatrices build_saturated_matrices(const SystemConfig& cfg,
                                           const ChannelSet& ch,
                                           const LinkGains& sg,
                                           const CMatrix& B) {
  const CVector hd = B.adjoint() * ch.h_d;
  const CVector fb = B.adjoint() * ch.f;
  const CMatrix hh = hd * hd.adjoint();
  const CMatrix ff = fb * fb.adjoint();
  const CMatrix bb = B.adjoint() * B;
  const double k = noise_term(cfg, sg.g);
  const double e = cfg.eta * cfg.Ps * sg.energy_gain;  // eta Ps |h_r1^H w_H|^2
  const double eps2 = cfg.eps * cfg.eps;
  const CMatrix loop = k * (bb - cfg.eta * ff);

  SaturatedMatrices m;
  m.R_RD = e * cfg.Ps * sg.g * hh;
  m.Rt_fD = loop + e * cfg.N0 * hh;
  m.Rt_RD = m.R_RD + m.Rt_fD;
  m.R_RE = e * cfg.Ps * sg.g * eps2 * bb;
  m.Rt_fE = loop + e * cfg.N0 * eps2 * bb;
  m.Rt_RE = m.R_RE + m.Rt_fE;
  return m;
}

LambdaBounds lambda_bounds(const SystemConfig& cfg, const ChannelSet& ch,
                           const LinkGains& sg) {
  const double e = cfg.eta * cfg.Ps * sg.energy_gain;
  const double relay = cfg.Ps * sg.g + cfg.N0;
  LambdaBounds out{std::numeric_limits<double>::infinity(), kNegInf};
  for (Eigen::Index i = 0; i < ch.f.size(); ++i) {
    const double slack = 1.0 - cfg.eta * std::norm(ch.f(i));
    if (!(slack > 0.0)) {
      throw InfeasibleRecycling("lambda_bounds: 1 - eta |f(i)|^2 <= 0");
    }
    const double num = e * cfg.eps * cfg.eps + relay * slack;
    const double den = e * std::norm(ch.h_d(i)) + relay * slack;
    const double ratio = num / den;
    out.lambda_min = std::min(out.lambda_min, ratio);
    out.lambda_max = std::max(out.lambda_max, ratio);
  }
  return out;
}

CVector wt_saturated_bounds(const SaturatedMatrices& mats, const CMatrix& B) {
  const numerics::GenEigResult q = numerics::max_gen_eigvec(mats.Rt_RD, mats.Rt_RE);
  return lift(B, q.vector);
}

double leakage_budget(const SystemConfig& cfg, const LinkGains& sg) {
  const double t = std::exp2(2.0 * cfg.gamma0) - 1.0;
  const double relay = cfg.Ps * sg.g;
  return 1.0 / cfg.eta - cfg.Ps * sg.energy_gain * cfg.eps * cfg.eps /
                             (relay + cfg.N0) * (relay / (cfg.N0 * t) - 1.0);
}

std::optional<CVector> wt_leakage_for_zeta(const SystemConfig& cfg,
                                           const ChannelSet& ch,
                                           const LinkGains& sg,
                                           const CMatrix& B, double zeta) {
  const double budget = leakage_budget(cfg, sg);
  const double target = zeta * budget;
  if (!(budget > 0.0) || !(cfg.eta * target < 1.0)) return std::nullopt;

  const CVector hd = B.adjoint() * ch.h_d;
  const CVector fb = B.adjoint() * ch.f;
  const double k = noise_term(cfg, sg.g);
  const double e = cfg.eta * cfg.Ps * sg.energy_gain;
  const CMatrix hh = hd * hd.adjoint();
  const CMatrix bb = B.adjoint() * B;

  // Substituting |f^H w|^2 = zeta g(eps) and ||w|| = 1 turns the destination
  // rate into a quotient of the pencil below.
  const CMatrix R_RD = e * cfg.Ps * sg.g * hh;
  const CMatrix Rh_fD = e * cfg.N0 * hh + k * (1.0 - cfg.eta * target) * bb;
  const CMatrix Rh_RD = R_RD + Rh_fD;

  std::optional<CVector> best;
  double best_rate = kNegInf;
  auto consider = [&](const CVector& v) {
    const CVector w = lift(B, v);
    const double rate = rate_at_full_delta(cfg, ch, sg, w);
    if (rate > best_rate) {
      best_rate = rate;
      best = w;
    }
  };

  const numerics::GenEigResult q = numerics::max_gen_eigvec(Rh_RD, Rh_fD);
  // The pencil ignores the loopback direction; keep it only when it already
  // respects the budget, otherwise take the constrained maximizer of the same
  // quotient (monotone in |h_d^H w|^2).
  if (std::norm(fb.dot(q.vector)) <= target * (1.0 + 1e-12) + 1e-300) {
    consider(q.vector);
  }
  if (auto v = constrained_direction(hd, fb, target)) consider(*v);
  if (best_rate == kNegInf) return std::nullopt;
  return best;
}

LeakageResult wt_saturated_leakage(const SystemConfig& cfg, const ChannelSet& ch,
                                   const LinkGains& sg, const CMatrix& B) {
  const double budget = leakage_budget(cfg, sg);
  if (!(budget > 0.0)) {
    throw LeakageInfeasible("wt_saturated_leakage: leakage budget g(eps) <= 0");
  }
  auto objective = [&](double zeta) {
    const auto w = wt_leakage_for_zeta(cfg, ch, sg, B, zeta);
    return w ? rate_at_full_delta(cfg, ch, sg, *w) : kNegInf;
  };

  numerics::ScalarMax best = numerics::golden_section_max(objective, 0.0, 1.0, 1e-4);
  numerics::ScalarMax grid_best{0.0, kNegInf};
  for (int i = 0; i <= 100; ++i) {
    const double z = i / 100.0;
    const double v = objective(z);
    if (v > grid_best.f) grid_best = {z, v};
  }
  // Not unimodal: trust the grid.
  if (grid_best.f > best.f + 1e-6) best = grid_best;
  if (best.f == kNegInf) {
    throw LeakageInfeasible("wt_saturated_leakage: no zeta admits a feasible design");
  }
  const auto w = wt_leakage_for_zeta(cfg, ch, sg, B, best.x);
  return {*w, best.x, budget, best.f};
}

SerSolution run_algorithm1(const SystemConfig& cfg, const ChannelSet& ch,
                           ReceiveMode mode) {
  SerSolution sol;
  BeamformerSet& beams = sol.beams;
  beams.w_H = ser::mrt_energy_beamformer(ch.h_r1);
  const SourceRelayBeams sr = mode == ReceiveMode::AntennaReuse
                                  ? source_relay_beamformers(ch.H_r())
                                  : single_antenna_beamformers(ch);
  beams.w_s = sr.w_s;
  beams.w_r = sr.w_r;

  const CMatrix B = zf_basis(ch.h_e_bar);
  beams.w_t = wt_interior(ch.h_d, B);

  const LinkGains gains = ser::link_gains(cfg, ch, beams);
  sol.candidate_Q = power::compute_Q(cfg, gains);
  sol.candidate_li_gain = cfg.eta * gains.lf_gain;
  sol.power = power::optimal_delta(sol.candidate_Q, sol.candidate_li_gain);
  sol.candidate_branch = sol.power.branch;

  if (sol.power.branch != Branch::Saturated) {
    sol.wt_method = WtMethod::Interior;
    if (sol.power.delta * sol.candidate_li_gain <= 1.0 - kBoundaryMargin) {
      sol.power.Pr = power::optimal_relay_power(cfg, gains, sol.power);
    } else {
      // Q rounds to nothing next to eta |f^H w_t|^2, putting delta* on the edge.
      sol.power.delta = (1.0 - kBoundaryMargin) / sol.candidate_li_gain;
      sol.power.Pr =
          ser::relay_power(sol.power.delta, cfg, gains.energy_gain, gains.lf_gain);
    }
    sol.eval = ser::evaluate_gains(cfg, gains, sol.power.delta);
    return sol;
  }

  // delta* = 1: recompute w_t with both full-recycling designs, keep the better.
  double best_rate = kNegInf;
  try {
    const SaturatedMatrices mats = build_saturated_matrices(cfg, ch, gains, B);
    const CVector w = wt_saturated_bounds(mats, B);
    const double rate = rate_at_full_delta(cfg, ch, gains, w);
    if (rate > best_rate) {
      best_rate = rate;
      beams.w_t = w;
      sol.wt_method = WtMethod::SaturatedBounds;
    }
  } catch (const NotPositiveDefinite&) {
  }
  try {
    const LeakageResult lk = wt_saturated_leakage(cfg, ch, gains, B);
    if (lk.rwc > best_rate) {
      best_rate = lk.rwc;
      beams.w_t = lk.w_t;
      sol.wt_method = WtMethod::SaturatedLeakage;
      sol.zeta = lk.zeta;
    }
  } catch (const LeakageInfeasible&) {
  }
  if (best_rate == kNegInf) {
    // Neither design is feasible; keep the zero-forcing candidate at delta = 1.
    sol.wt_method = WtMethod::Interior;
  }

  const LinkGains final_gains = with_transmit(cfg, ch, gains, beams.w_t);
  const double li = cfg.eta * final_gains.lf_gain;
  if (li < 1.0) {
    sol.power.delta = 1.0;
    sol.power.Pr = power::optimal_relay_power(cfg, final_gains, sol.power);
  } else {
    // Only reachable with Q == 0 (zero worst-case leakage or a dead
    // destination link): the rate keeps rising towards the feasibility edge.
    sol.power.delta = (1.0 - kBoundaryMargin) / li;
    sol.power.Pr = ser::relay_power(sol.power.delta, cfg, final_gains.energy_gain,
                                    final_gains.lf_gain);
  }
  sol.eval = ser::evaluate_gains(cfg, final_gains, sol.power.delta);
  return sol;
}

}  // namespace beamform
}  // namespace wpsec

#include "wpsec/channel.hpp"

#include <cmath>

#include "wpsec/errors.hpp"

namespace wpsec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ConfigError(key, what);
}

}  // namespace

void SystemConfig::validate() const {
  require(N >= 1, "N", "must be >= 1");
  require(M >= 2, "M", "must be >= 2 for zero-forcing");
  require(std::isfinite(Ps) && Ps > 0.0, "Ps", "must be > 0");
  require(std::isfinite(N0) && N0 > 0.0, "N0", "must be > 0");
  require(eta > 0.0 && eta <= 1.0, "eta", "must lie in (0, 1]");
  require(std::isfinite(lambda_f) && lambda_f >= 0.0, "lambda_f", "must be >= 0");
  require(std::isfinite(eps) && eps >= 0.0, "eps", "must be >= 0");
  require(std::isfinite(m_exp) && m_exp >= 0.0, "m_exp", "must be >= 0");
  require(std::isfinite(d_sr) && d_sr > 0.0, "d_sr", "must be > 0");
  require(std::isfinite(d_rd) && d_rd > 0.0, "d_rd", "must be > 0");
  require(std::isfinite(d_re) && d_re > 0.0, "d_re", "must be > 0");
  require(std::isfinite(gamma0) && gamma0 > 0.0, "gamma0", "must be > 0");
  require(trials > 0, "trials", "must be > 0");
  require(T == 1.0, "T", "block duration is normalized to 1");
}

CMatrix ChannelSet::H_r() const {
  CMatrix h(h_r1.size(), H_r2.cols() + 1);
  h.col(0) = h_r1;
  h.rightCols(H_r2.cols()) = H_r2;
  return h;
}

namespace channel {

std::uint64_t trial_stream_seed(std::uint64_t root_seed, std::uint64_t trial) {
  return splitmix64(splitmix64(root_seed) ^ (trial * 0xD1B54A32D192ED03ULL));
}

Rng trial_rng(std::uint64_t root_seed, std::uint64_t trial) {
  return Rng(trial_stream_seed(root_seed, trial));
}

double variance_from_distance(double d, double m_exp) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw InvalidDistance("variance_from_distance: distance must be > 0");
  }
  return std::pow(d, -m_exp);
}

cplx complex_gaussian(Rng& rng, double variance) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double g1 = normal(rng);
  const double g2 = normal(rng);
  const double scale = std::sqrt(variance / 2.0);
  return {g1 * scale, g2 * scale};
}

ChannelSet sample_channels(const SystemConfig& cfg, Rng& rng) {
  const double var_s = variance_from_distance(cfg.d_sr, cfg.m_exp);
  const double var_d = variance_from_distance(cfg.d_rd, cfg.m_exp);
  const double var_e = variance_from_distance(cfg.d_re, cfg.m_exp);

  ChannelSet ch;
  ch.h_r1.resize(cfg.N);
  for (int i = 0; i < cfg.N; ++i) ch.h_r1(i) = complex_gaussian(rng, var_s);
  ch.H_r2.resize(cfg.N, cfg.M);
  for (int i = 0; i < cfg.N; ++i) {
    for (int j = 0; j < cfg.M; ++j) ch.H_r2(i, j) = complex_gaussian(rng, var_s);
  }
  ch.f.resize(cfg.M);
  for (int j = 0; j < cfg.M; ++j) ch.f(j) = complex_gaussian(rng, cfg.lambda_f);
  ch.h_d.resize(cfg.M);
  for (int j = 0; j < cfg.M; ++j) ch.h_d(j) = complex_gaussian(rng, var_d);
  ch.h_e_bar.resize(cfg.M);
  for (int j = 0; j < cfg.M; ++j) ch.h_e_bar(j) = complex_gaussian(rng, var_e);
  return ch;
}

double worst_case_effective_gain(const CVector& h_e_bar, double eps,
                                 const CVector& w_t) {
  return std::abs(h_e_bar.dot(w_t)) + eps * w_t.norm();
}

CVector random_unit_vector(int dim, Rng& rng) {
  CVector v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = complex_gaussian(rng, 2.0);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

CVector sample_uncertainty(double eps, int dim, Rng& rng,
                           double boundary_probability) {
  CVector dir = random_unit_vector(dim, rng);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const bool on_boundary = unif(rng) < boundary_probability;
  const double u = unif(rng);
  const double radius =
      on_boundary ? eps : eps * std::pow(u, 1.0 / (2.0 * dim));
  return dir * radius;
}

}  // namespace channel
}  // namespace wpsec

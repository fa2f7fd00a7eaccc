#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "wpsec/errors.hpp"
#include "wpsec/harness.hpp"
#include "wpsec/oracle.hpp"

using namespace wpsec;

namespace {

BeamformerSet random_beams(const ChannelSet& ch, Rng& rng) {
  BeamformerSet b;
  b.w_s = channel::random_unit_vector(ch.N(), rng);
  b.w_H = channel::random_unit_vector(ch.N(), rng);
  b.w_r = channel::random_unit_vector(ch.M() + 1, rng);
  b.w_t = channel::random_unit_vector(ch.M(), rng);
  return b;
}

}  // namespace

TEST_CASE("energy beamformer on an axis channel") {
  CVector h = CVector::Zero(5);
  h(0) = 2.0;
  const CVector w = ser::mrt_energy_beamformer(h);
  CHECK(std::abs(w(0) - cplx(1.0, 0.0)) <= 1e-15);
  CHECK(std::norm(h.dot(w)) == doctest::Approx(4.0));
  CHECK_THROWS_AS(ser::mrt_energy_beamformer(CVector::Zero(5)), ZeroChannel);
}

TEST_CASE("energy beamformer collects the full fixture channel power") {
  const ChannelSet ch = harness::reference_fixture_channels();
  const CVector w = ser::mrt_energy_beamformer(ch.h_r1);
  CHECK(w.norm() == doctest::Approx(1.0));
  CHECK(std::norm(ch.h_r1.dot(w)) ==
        doctest::Approx(ch.h_r1.squaredNorm()).epsilon(1e-14));
}

TEST_CASE("harvested power") {
  SystemConfig cfg;
  cfg.eta = 0.8;
  cfg.Ps = 1.0;
  ChannelSet ch;
  ch.h_r1 = CVector::Zero(2);
  ch.h_r1(0) = std::sqrt(2.0);
  ch.f = CVector::Zero(2);
  const CVector w_H = ser::mrt_energy_beamformer(ch.h_r1);
  CVector w_t = CVector::Zero(2);
  w_t(0) = 1.0;
  CHECK(ser::harvested_power(cfg, ch, w_H, w_t, 3.0) == doctest::Approx(1.6));
  ch.f(0) = std::sqrt(0.5);
  CHECK(ser::harvested_power(cfg, ch, w_H, w_t, 1.0) == doctest::Approx(2.0));
  CHECK(ser::harvested_power(cfg, ch, w_H, w_t, 0.0) == doctest::Approx(1.6));
}

TEST_CASE("recycled relay power") {
  SystemConfig cfg;
  cfg.eta = 0.8;
  cfg.Ps = 1.0;
  CHECK(ser::relay_power(1.0, cfg, 2.0, 0.0) == doctest::Approx(1.6));
  CHECK(ser::relay_power(0.0, cfg, 2.0, 0.3) == 0.0);
  CHECK_THROWS_AS(ser::relay_power(1.0, cfg, 2.0, 1.25), InfeasibleRecycling);
}

TEST_CASE("relay power is the fixed point of the harvesting loop") {
  SystemConfig cfg;
  Rng rng(31);
  const ChannelSet ch = testing::draw(cfg, 5);
  const BeamformerSet b = random_beams(ch, rng);
  for (const double delta : {0.1, 0.5, 0.9}) {
    const double pr = ser::relay_power(delta, cfg, ch, b.w_H, b.w_t);
    CHECK(pr == doctest::Approx(delta * ser::harvested_power(cfg, ch, b.w_H, b.w_t, pr))
                    .epsilon(1e-12));
  }
}

TEST_CASE("amplification factor") {
  CHECK(ser::amplify_factor(3.0, 1.0, 1.0, 2.0) == doctest::Approx(1.0));
  CHECK(ser::amplify_factor(0.0, 1.0, 1.0, 2.0) == 0.0);
  CHECK(ser::amplify_factor(8.0, 1.0, 1.0, 3.0) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("destination SINR") {
  CHECK(ser::sinr_destination(1.0, 1.0, 1.0, 1.0, 1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(ser::sinr_destination(1.0, 0.0, 1.0, 1.0, 1.0) == 0.0);
  const double limit = 1.0 * 2.0 / 0.1;
  double prev = 0.0;
  for (double pr = 1.0; pr <= 1e6; pr *= 10.0) {
    const double s = ser::sinr_destination(1.0, pr, 0.1, 2.0, 0.7);
    CHECK(s > prev);
    CHECK(s <= limit);
    prev = s;
  }
}

TEST_CASE("worst-case eavesdropper SINR") {
  CHECK(ser::sinr_eavesdropper_worst(1.0, 2.0, 0.1, 1.5, 0.0) == 0.0);
  CHECK(ser::sinr_eavesdropper_worst(1.0, 2.0, 0.1, 1.5, 0.4) ==
        ser::sinr_destination(1.0, 2.0, 0.1, 1.5, 0.4));
}

TEST_CASE("worst-case eavesdropper SINR bounds sampled uncertainty") {
  SystemConfig cfg;
  cfg.eps = 0.05;
  Rng rng(32);
  const ChannelSet ch = testing::draw(cfg, 6);
  const BeamformerSet b = random_beams(ch, rng);
  const LinkGains gains = ser::link_gains(cfg, ch, b);
  const double pr = 1.3;
  const double bound =
      ser::sinr_eavesdropper_worst(cfg.Ps, pr, cfg.N0, gains.g, gains.he_wc_gain);
  for (int s = 0; s < 10000; ++s) {
    const CVector he = ch.h_e_bar + channel::sample_uncertainty(cfg.eps, 3, rng, 0.5);
    const double sampled =
        ser::sinr_destination(cfg.Ps, pr, cfg.N0, gains.g, std::norm(he.dot(b.w_t)));
    CHECK(sampled <= bound * (1.0 + 1e-12));
  }
}

TEST_CASE("secrecy rate arithmetic") {
  CHECK(ser::wcsr(2.0, 2.0) == 0.0);
  CHECK(ser::wcsr(3.0, 1.0) == doctest::Approx(0.5));
  CHECK(ser::wcsr(1.0, 3.0) == 0.0);
  CHECK(ser::positive_wcsr_condition(2.0, 1.0));
  CHECK_FALSE(ser::positive_wcsr_condition(1.0, 1.0));
}

TEST_CASE("positive rate iff destination gain exceeds worst-case leakage") {
  SystemConfig cfg;
  cfg.eps = 0.3;
  Rng rng(33);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 2000; ++t) {
    const ChannelSet ch = testing::draw(cfg, 100 + t);
    const BeamformerSet b = random_beams(ch, rng);
    const LinkGains gains = ser::link_gains(cfg, ch, b);
    const double delta = 1.0 - unif(rng);
    if (!(delta * cfg.eta * gains.lf_gain < 1.0)) continue;
    const double rate = ser::evaluate_gains(cfg, gains, delta).rwc;
    CHECK((rate > 0.0) == ser::positive_wcsr_condition(gains.hd_gain, gains.he_wc_gain));
  }
}

TEST_CASE("perfect nulling leaves only the destination term") {
  SystemConfig cfg;
  cfg.eps = 0.0;
  const ChannelSet ch = testing::draw(cfg, 9);
  BeamformerSet b;
  const auto sr = beamform::source_relay_beamformers(ch.H_r());
  b.w_s = sr.w_s;
  b.w_r = sr.w_r;
  b.w_H = ser::mrt_energy_beamformer(ch.h_r1);
  b.w_t = beamform::wt_interior(ch.h_d, beamform::zf_basis(ch.h_e_bar));
  const SecrecyEvaluation e = ser::evaluate(cfg, ch, b, 0.7);
  CHECK(e.gamma_ewc <= 1e-25);
  CHECK(e.rwc == doctest::Approx(0.5 * std::log2(1.0 + e.gamma_d)).epsilon(1e-12));
  CHECK(ser::evaluate(cfg, ch, b, 0.0).rwc == 0.0);
}

TEST_CASE("fixture rate agrees with the grid oracle at the same split") {
  SystemConfig cfg;
  cfg.eps = 0.05;
  const ChannelSet ch = harness::reference_fixture_channels();
  const SerSolution sol = beamform::run_algorithm1(cfg, ch);
  const LinkGains gains = ser::link_gains(cfg, ch, sol.beams);
  const double direct = ser::evaluate_gains(cfg, gains, sol.power.delta).rwc;
  CHECK(sol.eval.rwc == doctest::Approx(direct).epsilon(1e-9));
  // The oracle grid contains delta = 1 exactly.
  if (sol.power.delta == 1.0) {
    const auto grid = oracle::delta_grid_oracle(cfg, gains, 1001);
    CHECK(grid.rwc_best >= direct - 1e-9);
  }
}

TEST_CASE("rate is monotone in the destination and leakage gains") {
  SystemConfig cfg;
  LinkGains g{2.0, 1.5, 0.8, 0.2, 0.1};
  double prev = ser::evaluate_gains(cfg, g, 0.6).rwc;
  for (int k = 1; k <= 50; ++k) {
    g.hd_gain = 0.8 + 0.05 * k;
    const double r = ser::evaluate_gains(cfg, g, 0.6).rwc;
    CHECK(r >= prev);
    prev = r;
  }
  g.hd_gain = 0.8;
  prev = ser::evaluate_gains(cfg, g, 0.6).rwc;
  for (int k = 1; k <= 50; ++k) {
    g.he_wc_gain = 0.2 + 0.02 * k;
    const double r = ser::evaluate_gains(cfg, g, 0.6).rwc;
    CHECK(r <= prev);
    prev = r;
  }
}

#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "wpsec/oracle.hpp"

using namespace wpsec;

TEST_CASE("grid oracle picks the endpoint on a saturated instance") {
  SystemConfig cfg;
  const LinkGains g{2.0, 1.5, 0.8, 0.01, 0.0};
  REQUIRE(power::classify_branch(power::compute_Q(cfg, g), 0.0) == Branch::Saturated);
  const auto r = oracle::delta_grid_oracle(cfg, g, 1001);
  CHECK(r.delta_best == 1.0);
}

TEST_CASE("grid oracle agrees with the closed form on an interior instance") {
  SystemConfig cfg;
  const LinkGains g{2.5, 3.0, 1.2, 0.3, 1.0};
  const PowerSolution s = power::optimal_delta(power::compute_Q(cfg, g),
                                               cfg.eta * g.lf_gain);
  REQUIRE(s.branch != Branch::Saturated);
  const auto r = oracle::delta_grid_oracle(cfg, g, 1000000);
  CHECK(std::abs(r.rwc_best - ser::evaluate_gains(cfg, g, s.delta).rwc) <= 1e-6);
}

TEST_CASE("grid oracle returns zero when leakage dominates everywhere") {
  SystemConfig cfg;
  const LinkGains g{2.0, 1.5, 0.3, 0.9, 0.1};
  const auto r = oracle::delta_grid_oracle(cfg, g, 1001);
  CHECK(r.rwc_best == 0.0);
}

TEST_CASE("beamformer sampling oracle") {
  Rng rng(71);
  const double best = oracle::beamformer_sampling_oracle(
      [](const CVector& v) { return std::norm(v(0)); }, 3, 100000, rng);
  CHECK(best >= 0.95);
  CHECK(best <= 1.0 + 1e-12);
  CHECK(oracle::beamformer_sampling_oracle([](const CVector&) { return 2.5; }, 3, 100,
                                           rng) == 2.5);
}

TEST_CASE("closed-form transmit beam is never beaten by sampling") {
  SystemConfig cfg;
  Rng rng(72);
  const ChannelSet ch = testing::draw(cfg, 80);
  const CMatrix B = beamform::zf_basis(ch.h_e_bar);
  const CVector w = beamform::wt_interior(ch.h_d, B);
  const double closed = std::norm(ch.h_d.dot(w));
  const double sampled = oracle::beamformer_sampling_oracle(
      [&](const CVector& v) {
        const CVector x = B * v;
        return std::norm(ch.h_d.dot(x / x.norm()));
      },
      2, 100000, rng);
  CHECK(sampled <= closed + 1e-9);
}

TEST_CASE("uncertainty ball oracle") {
  Rng rng(73);
  const CVector h = testing::random_vector(3, rng);
  const CVector w = channel::random_unit_vector(3, rng);
  CHECK(oracle::uncertainty_ball_oracle(h, 0.0, w, 100, rng) == std::abs(h.dot(w)));
  CHECK(oracle::uncertainty_ball_oracle(CVector::Zero(3), 0.05, w, 3000, rng) ==
        doctest::Approx(0.05).epsilon(1e-3));
  const double bound = channel::worst_case_effective_gain(h, 0.05, w);
  const double sampled = oracle::uncertainty_ball_oracle(h, 0.05, w, 10000, rng);
  CHECK(sampled <= bound * (1.0 + 1e-12));
  CHECK(sampled >= bound * (1.0 - 1e-3));
}

TEST_CASE("monotonicity probe") {
  const auto grid = [] {
    std::vector<double> g;
    for (int i = 0; i <= 100; ++i) g.push_back(i / 100.0);
    return g;
  }();
  const auto up = oracle::monotonicity_probe([](double x) { return x; }, grid);
  CHECK(up.nondecreasing);
  CHECK(up.sign_changes == 0);
  for (const int s : up.signs) CHECK(s == 1);

  const auto hump =
      oracle::monotonicity_probe([](double x) { return -(x - 0.4) * (x - 0.4); }, grid);
  CHECK(hump.sign_changes == 1);
  CHECK(hump.unimodal);
  CHECK_FALSE(hump.nondecreasing);

  const auto valley =
      oracle::monotonicity_probe([](double x) { return (x - 0.4) * (x - 0.4); }, grid);
  CHECK(valley.sign_changes == 1);
  CHECK_FALSE(valley.unimodal);
}

TEST_CASE("interior rate curve changes slope sign exactly once") {
  SystemConfig cfg;
  const LinkGains g{2.5, 3.0, 1.2, 0.3, 1.0};
  const auto grid = [] {
    std::vector<double> v;
    for (int i = 0; i <= 1000; ++i) v.push_back(i / 1000.0);
    return v;
  }();
  const auto r = oracle::monotonicity_probe(
      [&](double d) { return ser::evaluate_gains(cfg, g, d).rwc; }, grid);
  CHECK(r.sign_changes == 1);
  CHECK(r.unimodal);
}

TEST_CASE("rate is nondecreasing in the relay gain g") {
  SystemConfig cfg;
  LinkGains g{2.0, 0.0, 1.0, 0.2, 0.3};
  std::vector<double> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back(1e-3 + 10.0 * i / 999.0);
  const auto r = oracle::monotonicity_probe(
      [&](double x) {
        g.g = x;
        return ser::evaluate_gains(cfg, g, 0.7).rwc;
      },
      grid);
  CHECK(r.nondecreasing);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "mbsense/model.hpp"
#include "support/oracles.hpp"

using namespace mbsense;

namespace {

Scenario repro_scenario() {
  Scenario s;
  s.m_bs = 2;
  s.n_sub = 256;
  for (int k = 105; k <= 142; ++k) s.blocked.push_back(k);
  s.eta = 1.5;
  return s;
}

}  // namespace

TEST_CASE("reproduction scenario validates with derived quantities") {
  ValidatedScenario v = validate(repro_scenario());
  CHECK(v.n_active() == 218);
  CHECK(v.avg_power() == doctest::Approx(218.0 / (256.0 * 256.0)).epsilon(1e-15));
  CHECK(v.gamma() == doctest::Approx(0.9 * 218.0 / 256.0).epsilon(1e-15));
}

TEST_CASE("empty mask is accepted by default and rejected with require_mask") {
  Scenario s;
  s.m_bs = 1;
  s.n_sub = 16;
  ValidatedScenario v = validate(s);
  CHECK(v.avg_power() == doctest::Approx(1.0 / 16.0).epsilon(1e-15));

  s.require_mask = true;
  CHECK_THROWS_AS(validate(s), ValidationError);
}

TEST_CASE("eta below one is rejected naming the field") {
  Scenario s = repro_scenario();
  s.eta = 0.5;
  try {
    validate(s);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field == "eta");
    CHECK(std::string(e.what()).find("eta") != std::string::npos);
  }
}

TEST_CASE("invalid fields are rejected") {
  Scenario s = repro_scenario();
  SUBCASE("m_bs") { s.m_bs = 0; }
  SUBCASE("blocked out of range") { s.blocked.push_back(256); }
  SUBCASE("full mask") {
    s.blocked.clear();
    for (int k = 0; k < 256; ++k) s.blocked.push_back(k);
  }
  SUBCASE("halfwidth") { s.mainlobe_halfwidth = 256; }
  SUBCASE("rho_u") { s.rho_u = 0.0; }
  SUBCASE("tol") { s.tol_primal = 0.0; }
  CHECK_THROWS_AS(validate(s), ValidationError);
}

TEST_CASE("random_phase_init is deterministic and feasible") {
  ValidatedScenario v = validate(repro_scenario());
  FreqSequenceSet a = random_phase_init(v, 123);
  FreqSequenceSet b = random_phase_init(v, 123);
  CHECK(a.cols == b.cols);
  CHECK_NOTHROW(check_spectrum_constraint(a, v));

  FreqSequenceSet c = random_phase_init(v, 124);
  CHECK((a.cols - c.cols).norm() > 0.0);
}

TEST_CASE("random phases are uniform (chi-squared at the 0.01 level)") {
  Scenario s;
  s.m_bs = 1;
  s.n_sub = 10000;
  ValidatedScenario v = validate(s);
  FreqSequenceSet seq = random_phase_init(v, 2024);

  constexpr int kBins = 16;
  int counts[kBins] = {};
  for (int n = 0; n < 10000; ++n) {
    double phase = std::arg(seq.cols(n, 0));
    if (phase < 0.0) phase += 2.0 * std::numbers::pi;
    int bin = static_cast<int>(phase / (2.0 * std::numbers::pi) * kBins);
    ++counts[std::min(bin, kBins - 1)];
  }
  const double expected = 10000.0 / kBins;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 30.5779);  // chi-squared 0.99 quantile, 15 dof
}

TEST_CASE("synthesize energy identities") {
  SUBCASE("full spectrum, N=4") {
    Scenario s;
    s.m_bs = 1;
    s.n_sub = 4;
    ValidatedScenario v = validate(s);
    TimeWaveformSet x = synthesize(random_phase_init(v, 5));
    CHECK(x.cols.col(0).squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("masked N=256, 38 blocked") {
    ValidatedScenario v = validate(repro_scenario());
    TimeWaveformSet x = synthesize(random_phase_init(v, 5));
    for (int m = 0; m < 2; ++m)
      CHECK(x.cols.col(m).squaredNorm() ==
            doctest::Approx(218.0 / 256.0).epsilon(1e-10));
  }
}

TEST_CASE("single active carrier gives a flat envelope of 1/N") {
  Scenario s;
  s.m_bs = 1;
  s.n_sub = 8;
  for (int k = 1; k < 8; ++k) s.blocked.push_back(k);
  ValidatedScenario v = validate(s);
  TimeWaveformSet x = synthesize(random_phase_init(v, 9));
  for (int k = 0; k < 8; ++k)
    CHECK(std::abs(x.cols(k, 0)) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("synthesize is linear on unconstrained inputs") {
  std::mt19937_64 rng(31);
  ComplexMat s1 = oracles::random_complex_mat(16, 2, rng);
  ComplexMat s2 = oracles::random_complex_mat(16, 2, rng);
  const Complex alpha(0.7, -1.3), beta(-0.2, 0.4);
  ComplexMat lhs = adjoint_per_column(alpha * s1 + beta * s2);
  ComplexMat rhs = alpha * adjoint_per_column(s1) + beta * adjoint_per_column(s2);
  CHECK((lhs - rhs).norm() < 1e-10);
}

TEST_CASE("derived P equals the mean per-sample power of synthesized waveforms") {
  ValidatedScenario v = validate(repro_scenario());
  TimeWaveformSet x = synthesize(random_phase_init(v, 77));
  for (int m = 0; m < v.m_bs(); ++m) {
    const double mean_power = x.cols.col(m).squaredNorm() / v.n_sub();
    CHECK(mean_power == doctest::Approx(v.avg_power()).epsilon(1e-10));
  }
}

TEST_CASE("stacking round-trips") {
  std::mt19937_64 rng(1);
  TimeWaveformSet w{oracles::random_complex_mat(8, 3, rng)};
  TimeWaveformSet back = TimeWaveformSet::from_stacked(w.stacked(), 3);
  CHECK((back.cols - w.cols).norm() == 0.0);
}

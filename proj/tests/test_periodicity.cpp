// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "ctnn/periodicity.hpp"

using namespace ctnn;

namespace {

constexpr double pi = std::numbers::pi;

// Independent oracle: sqrt((1/W) * integral_{t0}^{t0+W} (x(u)-x(u-T))^2 du)
// with its own trapezoid rule over the same node spacing contract.
double direct_comb_energy(const Signal& x, double T, double window, double quad_step, double t0) {
  const auto n = static_cast<std::size_t>(std::ceil(window / quad_step - 1e-12));
  const double h = window / static_cast<double>(n);
  const auto g = [&](double u) {
    const double d = x.value_at(u) - x.value_at(u - T);
    return d * d;
  };
  double acc = 0.5 * (g(t0) + g(t0 + window));
  for (std::size_t k = 1; k < n; ++k) acc += g(t0 + static_cast<double>(k) * h);
  return std::sqrt(acc * h / window);
}

Signal two_tone(double span, double step = 0.005) {
  return Signal::from_function(
      [](double t) { return std::cos(2.0 * pi * t) + std::cos(2.0 * std::sqrt(2.0) * pi * t); },
      TimeGrid(0.0, span, step));
}

}  // namespace

TEST_CASE("comb energy vanishes for an exactly periodic signal") {
  const Signal x =
      Signal::from_function([](double t) { return std::cos(2.0 * pi * t); },
                            TimeGrid(0.0, 10.0, 0.002));
  CHECK(comb_energy(x, 1.0, 4.0, 0.002) <= 1e-3);
}

TEST_CASE("comb network through the CTNN pipeline equals direct quadrature") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> amp(0.3, 1.5);
  std::uniform_real_distribution<double> freq(0.5, 4.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  std::uniform_real_distribution<double> delay(0.3, 3.0);
  std::uniform_real_distribution<double> win(2.0, 8.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double a1 = amp(rng), a2 = amp(rng);
    const double w1 = freq(rng), w2 = freq(rng);
    const double p1 = phase(rng), p2 = phase(rng);
    const Signal x = Signal::from_function(
        [&](double t) { return a1 * std::cos(w1 * t + p1) + a2 * std::cos(w2 * t + p2); },
        TimeGrid(0.0, 16.0, 0.004));
    const double T = delay(rng);
    const double window = win(rng);
    const double t0 = T + 0.5;
    const double through_network = comb_energy(x, T, window, 0.01, t0);
    const double direct = direct_comb_energy(x, T, window, 0.01, t0);
    CHECK(std::fabs(through_network - direct) <= 1e-9);
  }
}

TEST_CASE("comb energy approaches the large-window limit") {
  const Signal x = two_tone(215.0);
  // limit: sqrt(2 - cos(w1*T) - cos(w2*T))
  for (const double T : {5.0, 12.0, 3.3}) {
    const double limit = std::sqrt(2.0 - std::cos(2.0 * pi * T) -
                                   std::cos(2.0 * std::sqrt(2.0) * pi * T));
    const double e = comb_energy(x, T, 200.0, 0.005, 14.0);
    CHECK(std::fabs(e - limit) <= 1e-2);
  }
}

TEST_CASE("two-tone energies at the detected period candidates") {
  const Signal x = two_tone(70.0);
  const double e5 = comb_energy(x, 5.0, 50.0, 0.005, 14.0);
  const double e12 = comb_energy(x, 12.0, 50.0, 0.005, 14.0);
  const double limit5 =
      std::sqrt(2.0 - std::cos(10.0 * pi) - std::cos(10.0 * std::sqrt(2.0) * pi));
  const double limit12 =
      std::sqrt(2.0 - std::cos(24.0 * pi) - std::cos(24.0 * std::sqrt(2.0) * pi));
  CHECK(e12 < e5);
  CHECK(e5 == doctest::Approx(limit5).epsilon(0.02));   // ~0.313
  CHECK(e12 == doctest::Approx(limit12).epsilon(0.02)); // ~0.131
}

TEST_CASE("comb energy is nearly constant in the window anchor") {
  const Signal x = two_tone(80.0);
  for (const double T : {2.0, 5.0, 12.0}) {
    const double a = comb_energy(x, T, 50.0, 0.005, 14.0);
    const double b = comb_energy(x, T, 50.0, 0.005, 17.3);
    CHECK(std::fabs(a - b) <= 1e-2);
  }
}

TEST_CASE("comb energy argument checks") {
  const Signal x = two_tone(10.0);
  CHECK_THROWS_AS(comb_energy(x, -1.0, 4.0), InvalidArgumentError);
  CHECK_THROWS_AS(comb_energy(x, 1.0, 0.0), InvalidArgumentError);
  // window extends past the sampled span
  CHECK_THROWS_AS(comb_energy(x, 2.0, 50.0), OutOfRangeError);
}

TEST_CASE("scan of a pure tone finds its period") {
  const Signal x = Signal::from_function([](double t) { return std::cos(2.0 * pi * t); },
                                         TimeGrid(0.0, 14.0, 0.005));
  const PeriodScan scan = scan_periods(x, 0.5, 2.5, 0.05, 8.0);
  REQUIRE_FALSE(scan.minima.empty());
  CHECK(std::fabs(scan.minima.front().first - 1.0) <= 0.01);
  CHECK(scan.minima.front().second <= 1e-3);
}

TEST_CASE("a constant signal reports no strict minima") {
  const Signal x = Signal::from_function([](double) { return 3.7; }, TimeGrid(0.0, 30.0, 0.01));
  const PeriodScan scan = scan_periods(x, 0.5, 2.0, 0.1, 5.0);
  for (const auto& [T, e] : scan.candidates) CHECK(e <= 1e-12);
  CHECK(scan.minima.empty());
}

TEST_CASE("scan results do not depend on the thread count") {
  const Signal x = two_tone(30.0, 0.01);
  const PeriodScan serial = scan_periods(x, 0.5, 3.0, 0.05, 10.0, 0.01, std::nullopt, 1);
  const PeriodScan parallel = scan_periods(x, 0.5, 3.0, 0.05, 10.0, 0.01, std::nullopt, 4);
  REQUIRE(serial.candidates.size() == parallel.candidates.size());
  for (std::size_t i = 0; i < serial.candidates.size(); ++i) {
    CHECK(serial.candidates[i].second == parallel.candidates[i].second);
  }
  REQUIRE(serial.minima.size() == parallel.minima.size());
  for (std::size_t i = 0; i < serial.minima.size(); ++i) {
    CHECK(serial.minima[i].first == parallel.minima[i].first);
  }
}

TEST_CASE("stern_brocot reaches a rational target exactly") {
  const RatioApprox approx = stern_brocot(1.5, 10);
  REQUIRE_FALSE(approx.convergents.empty());
  CHECK(approx.convergents.back().first == 3);
  CHECK(approx.convergents.back().second == 2);
}

TEST_CASE("stern_brocot emits the continued-fraction convergents of sqrt(2)") {
  const RatioApprox approx = stern_brocot(std::sqrt(2.0), 30);
  const std::vector<std::pair<std::int64_t, std::int64_t>> expected{
      {1, 1}, {3, 2}, {7, 5}, {17, 12}, {41, 29}};
  REQUIRE(approx.convergents.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(approx.convergents[i] == expected[i]);
  }
  // best-approximation bound |target - p/q| < 1/q^2 and strict improvement
  double previous = 1e100;
  for (const auto& [p, q] : approx.convergents) {
    CHECK(std::gcd(p, q) == 1);
    const double err = std::fabs(std::sqrt(2.0) - static_cast<double>(p) / q);
    CHECK(err < 1.0 / (static_cast<double>(q) * q));
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("stern_brocot argument checks") {
  CHECK_THROWS_AS(stern_brocot(-1.0, 10), InvalidArgumentError);
  CHECK_THROWS_AS(stern_brocot(1.0, 0), InvalidArgumentError);
}

TEST_CASE("period candidates for the tritone pair include 5 and 12") {
  const auto candidates = predict_period_candidates(2.0 * pi, 2.0 * std::sqrt(2.0) * pi, 12);
  const auto contains = [&](double v) {
    for (const double c : candidates) {
      if (std::fabs(c - v) <= 1e-9) return true;
    }
    return false;
  };
  CHECK(contains(5.0));
  CHECK(contains(12.0));
}

TEST_CASE("octave and unison candidates reduce to the base period") {
  const auto octave = predict_period_candidates(2.0 * pi, 4.0 * pi, 10);
  REQUIRE_FALSE(octave.empty());
  CHECK(octave.front() == doctest::Approx(1.0).epsilon(1e-12));
  const auto unison = predict_period_candidates(2.0 * pi, 2.0 * pi, 10);
  REQUIRE(unison.size() == 1);
  CHECK(unison.front() == doctest::Approx(1.0).epsilon(1e-12));
}

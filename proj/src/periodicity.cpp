// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "ctnn/periodicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

namespace ctnn {

Network make_comb_network(double T, double window) {
  Network net;
  UnitConfig comb;
  comb.tau = window;
  net.units["comb"] = comb;
  net.inputs.push_back("x");
  net.output = "comb";
  net.edges.push_back({"x", "comb", 1.0, 0.0});
  net.edges.push_back({"x", "comb", -1.0, T});
  return net;
}

namespace {

double default_quad_step(const Signal& x, double window) {
  if (x.size() >= 2) return x.times()[1] - x.times()[0];
  return window / 1000.0;
}

void check_coverage(const Signal& x, double T, double window, double t0) {
  const double eps = 1e-9 * std::max(1.0, std::fabs(t0) + window);
  if (t0 - T < x.first_time() - eps || t0 + window > x.last_time() + eps) {
    throw OutOfRangeError("comb_energy: signal covers [" + std::to_string(x.first_time()) + ", " +
                          std::to_string(x.last_time()) + "] but [" + std::to_string(t0 - T) +
                          ", " + std::to_string(t0 + window) + "] is required");
  }
}

// Golden-section search for the minimum of f on [a, b].
double golden_section(const std::function<double(double)>& f, double a, double b, double tol) {
  constexpr double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double comb_energy(const Signal& x, double T, double window, double quad_step,
                   std::optional<double> anchor) {
  if (!(T > 0.0)) throw InvalidArgumentError("comb_energy: T must be > 0");
  if (!(window > 0.0)) throw InvalidArgumentError("comb_energy: window must be > 0");
  if (quad_step <= 0.0) quad_step = default_quad_step(x, window);
  const double t0 = anchor.value_or(x.first_time() + T);
  check_coverage(x, T, window, t0);
  const Network net = make_comb_network(T, window);
  const double t_eval = t0 + window;
  const Signal out = eval_network(net, {x}, TimeGrid(t_eval, t_eval, quad_step), quad_step);
  return out.values().front();
}

PeriodScan scan_periods(const Signal& x, double T_min, double T_max, double step, double window,
                        double quad_step, std::optional<double> anchor, int threads) {
  if (!(T_min > 0.0) || !(T_max > T_min)) {
    throw InvalidArgumentError("scan_periods: need 0 < T_min < T_max");
  }
  if (!(step > 0.0)) throw InvalidArgumentError("scan_periods: step must be > 0");
  if (quad_step <= 0.0) quad_step = default_quad_step(x, window);
  const double t0 = anchor.value_or(x.first_time() + T_max);
  check_coverage(x, T_max, window, t0);

  PeriodScan scan;
  scan.window = window;
  scan.grid_step = step;
  const auto n = static_cast<std::size_t>(std::floor((T_max - T_min) / step + 1e-9)) + 1;
  scan.candidates.resize(n);

  const auto energy = [&](double T) { return comb_energy(x, T, window, quad_step, t0); };
  const auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double T = T_min + static_cast<double>(i) * step;
      scan.candidates[i] = {T, energy(T)};
    }
  };
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (threads == 1) {
    fill(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const std::size_t begin = static_cast<std::size_t>(w) * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(fill, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double e = scan.candidates[i].second;
    if (e < scan.candidates[i - 1].second && e < scan.candidates[i + 1].second) {
      const double lo = scan.candidates[i - 1].first;
      const double hi = scan.candidates[i + 1].first;
      const double T_star = golden_section(energy, lo, hi, step / 100.0);
      scan.minima.emplace_back(T_star, energy(T_star));
    }
  }
  std::sort(scan.minima.begin(), scan.minima.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return scan;
}

RatioApprox stern_brocot(double target, std::int64_t max_denominator) {
  if (!(target > 0.0)) throw InvalidArgumentError("stern_brocot: target must be > 0");
  if (max_denominator < 1) {
    throw InvalidArgumentError("stern_brocot: max_denominator must be >= 1");
  }
  RatioApprox result;
  result.target = target;
  std::int64_t lp = 0, lq = 1;  // left fence 0/1
  std::int64_t hp = 1, hq = 0;  // right fence 1/0
  double best = std::numeric_limits<double>::infinity();
  constexpr std::int64_t guard = std::int64_t{1} << 62;
  while (true) {
    const std::int64_t mp = lp + hp;
    const std::int64_t mq = lq + hq;
    if (mq > max_denominator || mp > guard || mq > guard) break;
    // best approximation of the second kind: |q*target - p| must improve
    const double err = std::fabs(static_cast<double>(mq) * target - static_cast<double>(mp));
    if (err < best) {
      best = err;
      result.convergents.emplace_back(mp, mq);
    }
    if (err == 0.0) break;  // target reached exactly
    if (target < static_cast<double>(mp) / static_cast<double>(mq)) {
      hp = mp;
      hq = mq;
    } else {
      lp = mp;
      lq = mq;
    }
  }
  return result;
}

std::vector<double> predict_period_candidates(double omega1, double omega2,
                                              std::int64_t max_denominator) {
  if (!(omega1 > 0.0) || !(omega2 > 0.0)) {
    throw InvalidArgumentError("predict_period_candidates: frequencies must be > 0");
  }
  const RatioApprox approx = stern_brocot(omega2 / omega1, max_denominator);
  const double base_period = 2.0 * std::numbers::pi / omega1;
  std::vector<double> out;
  for (const auto& [p, q] : approx.convergents) {
    const double candidate = static_cast<double>(q) * base_period;
    if (out.empty() || out.back() != candidate) out.push_back(candidate);
  }
  return out;
}

}  // namespace ctnn

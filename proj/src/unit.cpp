// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "ctnn/unit.hpp"

#include <cmath>
#include <string>

namespace ctnn {

double trapezoid(const std::function<double(double)>& f, double a, double b, double max_step) {
  if (!(max_step > 0.0)) {
    throw InvalidArgumentError("trapezoid: max_step must be > 0");
  }
  if (b < a) throw InvalidArgumentError("trapezoid: b < a");
  if (b == a) return 0.0;
  const auto n = static_cast<std::size_t>(std::ceil((b - a) / max_step - 1e-12));
  const double h = (b - a) / static_cast<double>(n);
  double acc = 0.5 * (f(a) + f(b));
  for (std::size_t k = 1; k < n; ++k) {
    acc += f(a + static_cast<double>(k) * h);
  }
  return acc * h;
}

double eval_summation(std::span<const SummationTerm> incoming, double t) {
  double acc = 0.0;
  for (const auto& term : incoming) {
    acc += term.weight * term.value(t - term.delay);
  }
  return acc;
}

double eval_integration(const std::function<double(double)>& y1, double tau, double t,
                        double quad_step) {
  if (tau < 0.0) {
    throw InvalidArgumentError("eval_integration: tau must be >= 0, got " + std::to_string(tau));
  }
  if (tau == 0.0) {
    return std::fabs(y1(t));
  }
  const double power = trapezoid([&](double u) {
                         const double v = y1(u);
                         return v * v;
                       },
                       t - tau, t, quad_step) /
                       tau;
  return std::sqrt(power < 0.0 ? 0.0 : power);
}

double eval_activation(double y2, std::optional<double> alpha) {
  if (!alpha.has_value() || *alpha == 0.0) {
    return y2;  // tanh(a*x)/a -> x as a -> 0
  }
  if (*alpha < 0.0) {
    throw InvalidArgumentError("eval_activation: alpha must be >= 0");
  }
  return std::tanh(*alpha * y2) / *alpha;
}

double eval_oscillation(double y3, double omega, double phi, double t) {
  if (omega == 0.0) return y3;
  return y3 * std::cos(omega * t + phi);
}

double eval_unit(const UnitConfig& cfg, const std::function<double(double)>& y1, double t,
                 double quad_step) {
  const double y2 = cfg.integration_on() ? eval_integration(y1, *cfg.tau, t, quad_step) : y1(t);
  const double y3 = eval_activation(y2, cfg.alpha);
  return eval_oscillation(y3, cfg.omega, cfg.phi, t);
}

}  // namespace ctnn

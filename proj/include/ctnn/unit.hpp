// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <span>

#include "ctnn/errors.hpp"

namespace ctnn {

// Parameters of one four-stage unit. Each stage past summation can be
// disengaged, in which case it passes its input through unchanged.
//
//   summation:    y1(t) = sum_i w_i * x_i(t - delta_i)
//   integration:  y2(t) = sqrt( (1/tau) * integral_{t-tau}^{t} y1(u)^2 du )
//                 tau unset  -> y2 = y1 (stage off)
//                 tau == 0   -> y2 = |y1|   (window-shrink limit)
//                 tau  > 0   -> trailing-window RMS as above
//   activation:   y3 = tanh(alpha * y2) / alpha; alpha unset or 0 -> y3 = y2
//   oscillation:  y4 = y3 * cos(omega * t + phi); omega == 0 -> y4 = y3
//
// The phase phi is an extension over the plain cosine carrier: phi = -pi/2
// turns an oscillator into a sine component, which the sawtooth synthesis
// needs.
struct UnitConfig {
  std::optional<double> tau{};    // seconds; unset = integration off
  std::optional<double> alpha{};  // gain; unset = activation off
  double omega = 0.0;             // rad/s; 0 = oscillation off
  double phi = 0.0;               // rad

  bool integration_on() const { return tau.has_value(); }
  bool activation_on() const { return alpha.has_value() && *alpha != 0.0; }
  bool oscillation_on() const { return omega != 0.0; }
};

// One weighted, possibly delayed incoming value for the summation stage.
struct SummationTerm {
  std::function<double(double)> value;  // predecessor output over time
  double weight = 1.0;
  double delay = 0.0;  // seconds, >= 0
};

// Composite trapezoid rule over [a, b] with node spacing <= max_step.
double trapezoid(const std::function<double(double)>& f, double a, double b, double max_step);

double eval_summation(std::span<const SummationTerm> incoming, double t);

// RMS of y1 over the trailing window [t - tau, t]; tau == 0 gives |y1(t)|.
double eval_integration(const std::function<double(double)>& y1, double tau, double t,
                        double quad_step);

double eval_activation(double y2, std::optional<double> alpha);

double eval_oscillation(double y3, double omega, double phi, double t);

// All four stages for a unit whose summation stage is presented as a
// function of time (needed because integration samples it over a window).
double eval_unit(const UnitConfig& cfg, const std::function<double(double)>& y1, double t,
                 double quad_step);

}  // namespace ctnn

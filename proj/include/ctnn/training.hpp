// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "ctnn/network.hpp"

namespace ctnn {

// Sampled supervision: input signals plus the intended output at the given
// sample times.
struct Dataset {
  std::vector<Signal> input_signals;
  Signal target;
  std::vector<double> sample_times;  // defaults to the target's sample times

  Dataset(std::vector<Signal> inputs, Signal target_signal);
  Dataset(std::vector<Signal> inputs, Signal target_signal, std::vector<double> times);
};

enum class ParamKind { weight, delay, tau, alpha, omega, phi };

// Identity of one trainable scalar: an edge attribute (weight/delay,
// addressed by edge index) or a unit attribute.
struct ParamKey {
  ParamKind kind = ParamKind::weight;
  int edge = -1;
  std::string unit;

  auto operator<=>(const ParamKey&) const = default;
};

std::string to_string(const ParamKey& key);

// Which parameter kinds gradient/train touch.
struct ParamMask {
  bool weight = true;
  bool delay = false;
  bool tau = false;
  bool alpha = false;
  bool omega = false;
  bool phi = false;

  bool enabled(ParamKind kind) const;
  // Comma-separated kinds, e.g. "w,omega" or "weight,delay,tau,alpha,omega,phi".
  static ParamMask parse(const std::string& spec);
};

struct TrainConfig {
  double eta = 0.01;        // learning rate
  int max_iters = 100;
  double fd_step = 1e-5;    // central-difference step, per parameter
  ParamMask mask{};
  double tol = 0.0;         // stop once E <= tol
  double quad_step = 0.01;  // threaded through to network evaluation
};

// Trainable scalars of `net` selected by `mask`, in deterministic order.
// tau/alpha become parameters only where the stage is engaged; switched-off
// stages are structure, not values.
std::vector<ParamKey> collect_parameters(const Network& net, const ParamMask& mask);
double get_parameter(const Network& net, const ParamKey& key);
void set_parameter(Network& net, const ParamKey& key, double value);

// Halved sum of squared residuals over the sample times.
double error(const Network& net, const Dataset& data, double quad_step = 0.01);

// Central finite differences of `error` for every masked parameter.
std::map<ParamKey, double> gradient(const Network& net, const Dataset& data,
                                    const TrainConfig& cfg);

struct TrainResult {
  Network network;
  std::vector<double> trace;  // E before training, then E after each step
};

// Batch gradient descent: z <- z - eta * dE/dz for all masked parameters,
// clamping delay, tau, and alpha to >= 0 after every step. Stops at
// E <= tol or after max_iters; throws DivergedError past E = 1e12.
TrainResult train(Network net, const Dataset& data, const TrainConfig& cfg);

struct GradientCheckEntry {
  ParamKey key;
  double fd = 0.0;
  double analytic = 0.0;
  double rel_error = 0.0;  // |fd - analytic| / max(1, |analytic|)
  bool flagged = false;    // rel_error > 1e-4
};

struct GradientCheckReport {
  std::vector<GradientCheckEntry> entries;
  bool all_ok = true;
};

// Compares finite-difference gradients against externally supplied analytic
// values (only the keys present in `analytic` are checked).
GradientCheckReport gradient_check(const Network& net, const Dataset& data,
                                   const std::map<ParamKey, double>& analytic,
                                   const TrainConfig& cfg);

}  // namespace ctnn

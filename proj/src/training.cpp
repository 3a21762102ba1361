// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "ctnn/training.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ctnn {

Dataset::Dataset(std::vector<Signal> inputs, Signal target_signal)
    : input_signals(std::move(inputs)),
      target(std::move(target_signal)),
      sample_times(target.times()) {}

Dataset::Dataset(std::vector<Signal> inputs, Signal target_signal, std::vector<double> times)
    : input_signals(std::move(inputs)),
      target(std::move(target_signal)),
      sample_times(std::move(times)) {
  if (sample_times.empty()) {
    throw InvalidArgumentError("Dataset: at least one sample time required");
  }
}

std::string to_string(const ParamKey& key) {
  switch (key.kind) {
    case ParamKind::weight: return "w[" + std::to_string(key.edge) + "]";
    case ParamKind::delay: return "delay[" + std::to_string(key.edge) + "]";
    case ParamKind::tau: return "tau[" + key.unit + "]";
    case ParamKind::alpha: return "alpha[" + key.unit + "]";
    case ParamKind::omega: return "omega[" + key.unit + "]";
    case ParamKind::phi: return "phi[" + key.unit + "]";
  }
  return "?";
}

bool ParamMask::enabled(ParamKind kind) const {
  switch (kind) {
    case ParamKind::weight: return weight;
    case ParamKind::delay: return delay;
    case ParamKind::tau: return tau;
    case ParamKind::alpha: return alpha;
    case ParamKind::omega: return omega;
    case ParamKind::phi: return phi;
  }
  return false;
}

ParamMask ParamMask::parse(const std::string& spec) {
  ParamMask mask{false, false, false, false, false, false};
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "w" || item == "weight") {
      mask.weight = true;
    } else if (item == "delay") {
      mask.delay = true;
    } else if (item == "tau") {
      mask.tau = true;
    } else if (item == "alpha") {
      mask.alpha = true;
    } else if (item == "omega") {
      mask.omega = true;
    } else if (item == "phi") {
      mask.phi = true;
    } else {
      throw InvalidArgumentError("ParamMask: unknown parameter kind '" + item + "'");
    }
  }
  return mask;
}

std::vector<ParamKey> collect_parameters(const Network& net, const ParamMask& mask) {
  std::vector<ParamKey> keys;
  for (int e = 0; e < static_cast<int>(net.edges.size()); ++e) {
    if (mask.weight) keys.push_back({ParamKind::weight, e, {}});
    if (mask.delay) keys.push_back({ParamKind::delay, e, {}});
  }
  for (const auto& [id, cfg] : net.units) {
    if (mask.tau && cfg.tau.has_value()) keys.push_back({ParamKind::tau, -1, id});
    if (mask.alpha && cfg.alpha.has_value()) keys.push_back({ParamKind::alpha, -1, id});
    if (mask.omega) keys.push_back({ParamKind::omega, -1, id});
    if (mask.phi) keys.push_back({ParamKind::phi, -1, id});
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

namespace {

const UnitConfig& unit_of(const Network& net, const ParamKey& key) {
  const auto it = net.units.find(key.unit);
  if (it == net.units.end()) {
    throw InvalidArgumentError("no unit '" + key.unit + "' for parameter " + to_string(key));
  }
  return it->second;
}

void check_edge(const Network& net, const ParamKey& key) {
  if (key.edge < 0 || key.edge >= static_cast<int>(net.edges.size())) {
    throw InvalidArgumentError("edge index out of range for parameter " + to_string(key));
  }
}

}  // namespace

double get_parameter(const Network& net, const ParamKey& key) {
  switch (key.kind) {
    case ParamKind::weight:
      check_edge(net, key);
      return net.edges[key.edge].weight;
    case ParamKind::delay:
      check_edge(net, key);
      return net.edges[key.edge].delay;
    case ParamKind::tau: {
      const auto& cfg = unit_of(net, key);
      if (!cfg.tau) throw InvalidArgumentError(to_string(key) + ": integration is off");
      return *cfg.tau;
    }
    case ParamKind::alpha: {
      const auto& cfg = unit_of(net, key);
      if (!cfg.alpha) throw InvalidArgumentError(to_string(key) + ": activation is off");
      return *cfg.alpha;
    }
    case ParamKind::omega: return unit_of(net, key).omega;
    case ParamKind::phi: return unit_of(net, key).phi;
  }
  throw InvalidArgumentError("bad parameter key");
}

void set_parameter(Network& net, const ParamKey& key, double value) {
  switch (key.kind) {
    case ParamKind::weight:
      check_edge(net, key);
      net.edges[key.edge].weight = value;
      return;
    case ParamKind::delay:
      check_edge(net, key);
      net.edges[key.edge].delay = value;
      return;
    case ParamKind::tau:
      unit_of(net, key);
      net.units[key.unit].tau = value;
      return;
    case ParamKind::alpha:
      unit_of(net, key);
      net.units[key.unit].alpha = value;
      return;
    case ParamKind::omega:
      unit_of(net, key);
      net.units[key.unit].omega = value;
      return;
    case ParamKind::phi:
      unit_of(net, key);
      net.units[key.unit].phi = value;
      return;
  }
  throw InvalidArgumentError("bad parameter key");
}

double error(const Network& net, const Dataset& data, double quad_step) {
  NetworkEvaluator eval(net, data.input_signals, quad_step);
  double acc = 0.0;
  for (const double t : data.sample_times) {
    const double r = data.target.value_at(t) - eval.value_at(t);
    acc += r * r;
  }
  return 0.5 * acc;
}

namespace {

// Central difference, falling back to a forward difference when the negative
// probe would leave the parameter's domain (tau/alpha below zero).
double fd_gradient(const Network& net, const Dataset& data, const TrainConfig& cfg,
                   const ParamKey& key) {
  const double z = get_parameter(net, key);
  const double s = cfg.fd_step;
  const bool nonnegative = key.kind == ParamKind::tau || key.kind == ParamKind::alpha;
  Network probe = net;
  if (nonnegative && z - s < 0.0) {
    set_parameter(probe, key, z + s);
    const double e_plus = error(probe, data, cfg.quad_step);
    const double e_base = error(net, data, cfg.quad_step);
    return (e_plus - e_base) / s;
  }
  set_parameter(probe, key, z + s);
  const double e_plus = error(probe, data, cfg.quad_step);
  set_parameter(probe, key, z - s);
  const double e_minus = error(probe, data, cfg.quad_step);
  return (e_plus - e_minus) / (2.0 * s);
}

}  // namespace

std::map<ParamKey, double> gradient(const Network& net, const Dataset& data,
                                    const TrainConfig& cfg) {
  if (!(cfg.fd_step > 0.0)) throw InvalidArgumentError("gradient: fd_step must be > 0");
  std::map<ParamKey, double> grads;
  for (const auto& key : collect_parameters(net, cfg.mask)) {
    grads[key] = fd_gradient(net, data, cfg, key);
  }
  return grads;
}

TrainResult train(Network net, const Dataset& data, const TrainConfig& cfg) {
  if (!(cfg.eta > 0.0)) throw InvalidArgumentError("train: eta must be > 0");
  if (!(cfg.fd_step > 0.0)) throw InvalidArgumentError("train: fd_step must be > 0");
  constexpr double divergence_limit = 1e12;

  TrainResult result;
  result.network = std::move(net);
  double e = error(result.network, data, cfg.quad_step);
  result.trace.push_back(e);
  for (int iter = 0; iter < cfg.max_iters && e > cfg.tol; ++iter) {
    const auto grads = gradient(result.network, data, cfg);
    for (const auto& [key, g] : grads) {
      double z = get_parameter(result.network, key) - cfg.eta * g;
      const bool nonnegative = key.kind == ParamKind::delay || key.kind == ParamKind::tau ||
                               key.kind == ParamKind::alpha;
      if (nonnegative && z < 0.0) z = 0.0;
      set_parameter(result.network, key, z);
    }
    e = error(result.network, data, cfg.quad_step);
    result.trace.push_back(e);
    if (e > divergence_limit) {
      throw DivergedError("train: E=" + std::to_string(e) + " after iteration " +
                          std::to_string(iter + 1));
    }
  }
  return result;
}

GradientCheckReport gradient_check(const Network& net, const Dataset& data,
                                   const std::map<ParamKey, double>& analytic,
                                   const TrainConfig& cfg) {
  constexpr double flag_threshold = 1e-4;
  GradientCheckReport report;
  for (const auto& [key, g_an] : analytic) {
    GradientCheckEntry entry;
    entry.key = key;
    entry.analytic = g_an;
    entry.fd = fd_gradient(net, data, cfg, key);
    entry.rel_error = std::fabs(entry.fd - g_an) / std::max(1.0, std::fabs(g_an));
    entry.flagged = entry.rel_error > flag_threshold;
    if (entry.flagged) report.all_ok = false;
    report.entries.push_back(entry);
  }
  return report;
}

}  // namespace ctnn

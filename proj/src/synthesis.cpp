// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "ctnn/synthesis.hpp"

#include <cmath>
#include <numbers>

#include "ctnn/csv.hpp"

namespace ctnn {

Network build_sawtooth_network(const SawtoothSpec& spec) {
  if (!(spec.h > 0.0) || !(spec.T > 0.0) || spec.n < 1) {
    throw InvalidSpecError("build_sawtooth_network: need h > 0, T > 0, n >= 1");
  }
  constexpr double pi = std::numbers::pi;
  Network net;
  net.on_neurons["on"] = 1.0;
  net.output = "out";
  net.units["out"] = UnitConfig{};  // plain summation
  for (int k = 1; k <= spec.n; ++k) {
    const std::string id = "osc" + std::to_string(k);
    UnitConfig cfg;
    cfg.omega = 2.0 * pi * static_cast<double>(k) / spec.T;
    cfg.phi = -pi / 2.0;  // cos(w*t - pi/2) = sin(w*t)
    net.units[id] = cfg;
    net.edges.push_back({"on", id, -spec.h / (pi * static_cast<double>(k)), 0.0});
    net.edges.push_back({id, "out", 1.0, 0.0});
  }
  net.edges.push_back({"on", "out", spec.h / 2.0, 0.0});
  return net;
}

std::string to_string(GateName name) {
  switch (name) {
    case GateName::AND: return "AND";
    case GateName::XOR: return "XOR";
    case GateName::ODD: return "ODD";
  }
  return "?";
}

double eval_fourier_gate(const FourierLogicGate& gate, std::span<const double> inputs) {
  if (static_cast<int>(inputs.size()) != gate.arity) {
    throw ArityMismatchError(to_string(gate.name) + ": expected " + std::to_string(gate.arity) +
                             " inputs, got " + std::to_string(inputs.size()));
  }
  double sum = 0.0;
  for (const double v : inputs) {
    if (v != 1.0 && v != -1.0) {
      throw NonBooleanInputError(to_string(gate.name) + ": inputs must be +1 or -1, got " +
                                 csv::format_double(v));
    }
    sum += v;
  }
  return gate.c * std::sin(gate.a * sum + gate.b);
}

std::vector<FourierLogicGate> gate_table(int odd_arity) {
  if (odd_arity < 1) throw InvalidArgumentError("gate_table: odd_arity must be >= 1");
  constexpr double pi = std::numbers::pi;
  return {
      {GateName::AND, 2, pi / 4.0, -pi / 4.0, std::sqrt(2.0)},
      {GateName::XOR, 2, pi / 2.0, -pi / 2.0, 1.0},
      {GateName::ODD, odd_arity, pi / 2.0, static_cast<double>(odd_arity - 1) * pi / 2.0, 1.0},
  };
}

FourierLogicGate xor_gate_corrected() {
  constexpr double pi = std::numbers::pi;
  return {GateName::XOR, 2, pi / 2.0, pi / 2.0, 1.0};
}

void write_gates_csv(const std::string& path, std::span<const FourierLogicGate> gates) {
  std::vector<std::string> lines;
  lines.emplace_back("name,arity,a,b,c");
  for (const auto& g : gates) {
    lines.push_back(to_string(g.name) + "," + std::to_string(g.arity) + "," +
                    csv::format_double(g.a) + "," + csv::format_double(g.b) + "," +
                    csv::format_double(g.c));
  }
  csv::write_text_atomic(path, lines);
}

}  // namespace ctnn

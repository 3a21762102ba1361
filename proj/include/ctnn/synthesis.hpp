// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "ctnn/network.hpp"

namespace ctnn {

// Sawtooth target: height h, episode duration T, truncated after n harmonics.
struct SawtoothSpec {
  double h = 1.0;
  double T = 1.0;
  int n = 1;
};

// Network computing h/2 - (h/pi) * sum_{k=1..n} sin(2*pi*k*t/T)/k: one
// on-neuron, n oscillating units (phase -pi/2 turns the cosine carrier into
// a sine), and an output unit that sums them plus the constant term.
Network build_sawtooth_network(const SawtoothSpec& spec);

// Single-unit logic gates with activation c*sin(a*x + b), x = sum of inputs,
// Boolean true/false encoded as +1/-1.
enum class GateName { AND, XOR, ODD };

std::string to_string(GateName name);

struct FourierLogicGate {
  GateName name;
  int arity = 2;
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
};

// Gate output c*sin(a*sum + b); the Boolean reading is its sign.
double eval_fourier_gate(const FourierLogicGate& gate, std::span<const double> inputs);

// The published parameter table: AND(2, pi/4, -pi/4, sqrt(2)),
// XOR(2, pi/2, -pi/2, 1), ODD(n, pi/2, (n-1)*pi/2, 1). Note that the XOR row
// as printed realizes XNOR under the +1/-1 encoding; see xor_gate_corrected.
std::vector<FourierLogicGate> gate_table(int odd_arity = 2);

// ODD specialized to two inputs (b = +pi/2), which is exclusive-or proper.
FourierLogicGate xor_gate_corrected();

// CSV rows `name,arity,a,b,c`, written atomically.
void write_gates_csv(const std::string& path, std::span<const FourierLogicGate> gates);

}  // namespace ctnn

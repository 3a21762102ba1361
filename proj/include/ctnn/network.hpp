// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ctnn/signal.hpp"
#include "ctnn/unit.hpp"

namespace ctnn {

// Weighted, possibly delayed connection between two units.
struct Edge {
  std::string source;
  std::string target;
  double weight = 1.0;
  double delay = 0.0;  // seconds, >= 0
};

// A feed-forward network of four-stage units. Ids live in one namespace
// shared by configured units, input units, and on-neurons. Input units tap
// the caller-provided signals; on-neurons emit a constant.
struct Network {
  std::map<std::string, UnitConfig> units;
  std::vector<std::string> inputs;       // ordered; arity of eval_network
  std::map<std::string, double> on_neurons;
  std::string output;                    // id of the single output unit
  std::vector<Edge> edges;
};

enum class ViolationKind {
  duplicate_id,
  unknown_unit,
  self_loop,
  negative_delay,
  negative_tau,
  negative_alpha,
  cyclic_network,
  input_has_incoming,
  on_neuron_has_incoming,
  output_has_outgoing,
  missing_output,
  multiple_outputs,
  no_incoming_edge,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;  // unit id or "src->dst" for edges
  std::string message;
};

// Structural checks; returns one entry per violated invariant. An empty
// result means the network is evaluable.
std::vector<Violation> validate(const Network& net);

// Output signal of `net` driven by `inputs`, sampled on `grid`.
//
// Units are evaluated in topological order on an internal grid that shares
// the requested step and extends backwards far enough to cover every delay
// and integration window reachable from the output. Off-grid predecessor
// reads interpolate those internal samples linearly; input signals and
// on-neurons are read exactly. quad_step <= 0 defaults to the grid step.
//
// Deterministic: identical arguments produce bit-identical results.
Signal eval_network(const Network& net, const std::vector<Signal>& inputs, const TimeGrid& grid,
                    double quad_step = 0.0);

// Point evaluator for arbitrary query times (no internal grid): predecessor
// values are computed recursively and memoized, input signals interpolated
// per their rule. Exact where eval_network would interpolate, at the cost of
// re-entering quadratures; intended for training and spot checks.
class NetworkEvaluator {
 public:
  NetworkEvaluator(const Network& net, std::vector<Signal> inputs, double quad_step);
  ~NetworkEvaluator();
  NetworkEvaluator(NetworkEvaluator&&) noexcept;
  NetworkEvaluator& operator=(NetworkEvaluator&&) noexcept;

  double value_at(double t);                              // output unit
  double unit_value(const std::string& id, double t);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ctnn

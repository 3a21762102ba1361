// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctnn/signal.hpp"

namespace ctnn {

// sum_i coeff_i * var_i  (<=|>=)  bound
struct LinearInequality {
  enum class Relation { le, ge };
  std::vector<std::pair<std::string, double>> terms;
  Relation relation = Relation::le;
  double bound = 0.0;

  double lhs(const std::map<std::string, double>& values) const;
  bool satisfied(const std::map<std::string, double>& values, double tolerance = 0.0) const;
};

struct AutomatonState {
  std::string id;
  std::map<std::string, double> flow;        // d(var)/dt; absent vars hold still
  std::vector<LinearInequality> invariant;   // conjunction
};

struct Transition {
  std::string from;
  std::string to;
  LinearInequality guard;
  std::map<std::string, double> resets;      // var := value, applied in zero time
  std::string event;
};

// Linear hybrid automaton: constant-rate flows, linear invariants and
// guards. Constant rates keep trajectories piecewise linear, so invariant
// violation times come out in closed form instead of by root finding.
struct HybridAutomaton {
  std::map<std::string, double> variables;   // initial values
  std::vector<AutomatonState> states;
  std::vector<Transition> transitions;
  std::string initial_state;

  const AutomatonState& state(const std::string& id) const;
};

struct TrajectoryPoint {
  double t;
  std::string state;
  std::map<std::string, double> values;
};

struct TrajectoryEvent {
  double t;
  std::string event;
};

// Jumps produce two points at the same time: the pre-reset and post-reset
// values. Within a state segment each variable moves at its constant rate.
struct Trajectory {
  std::vector<TrajectoryPoint> samples;
  std::vector<TrajectoryEvent> events;
};

// Runs the automaton to t_end, sampling on the step grid plus the exact
// event times. Transitions fire exactly when an invariant would next be
// violated; the jump must then be uniquely enabled (BlockedError /
// NondeterministicChoiceError otherwise).
Trajectory simulate(const HybridAutomaton& ha, double t_end, double step);

// One variable of the trajectory as a Signal. Duplicate times from resets
// are kept by offsetting the post-reset sample 1e-9 s forward, so the signal
// is exact at event times from both sides.
Signal to_signal(const Trajectory& trajectory, const std::string& variable);

// The conveyor-belt arm: raise at rate h_max/T until h = h_max, then drop
// the arm back to 0 in zero time ("lower" events at t = T, 2T, ...).
HybridAutomaton robot_arm_automaton(double h_max, double T);

// Sectioned text format, mirroring the network format:
//
//   [variables]
//   h = 0
//   [initial]
//   raise
//   [states]
//   raise flow h=1 inv h<=1
//   [transitions]
//   raise -> raise guard h>=1 reset h:=0 event lower
//
// Inequalities are sums of `coef*var` terms joined by '+' (no spaces),
// e.g. `2*h+-1*v<=3`.
HybridAutomaton load_automaton(const std::string& path);
void save_automaton(const std::string& path, const HybridAutomaton& ha);
HybridAutomaton parse_automaton(const std::string& text,
                                const std::string& origin = "<string>");
std::string automaton_to_text(const HybridAutomaton& ha);

// Trajectory files: `t,state,<var1>,...` plus `t,event`, written atomically.
void write_trajectory_csv(const std::string& path, const Trajectory& trajectory);
void write_events_csv(const std::string& path, const Trajectory& trajectory);

}  // namespace ctnn

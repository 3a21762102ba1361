// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "ctnn/hybrid.hpp"

using namespace ctnn;

namespace {

// closed form for the arm: h(t) = h_max * (t mod T) / T
double ideal_arm(double h_max, double T, double t) {
  return h_max * (t / T - std::floor(t / T));
}

}  // namespace

TEST_CASE("arm starts at the initial height") {
  const Trajectory traj = simulate(robot_arm_automaton(1.0, 1.0), 2.0, 0.5);
  REQUIRE_FALSE(traj.samples.empty());
  CHECK(traj.samples.front().t == 0.0);
  CHECK(traj.samples.front().values.at("h") == 0.0);
}

TEST_CASE("arm height halfway through the second episode") {
  const Trajectory traj = simulate(robot_arm_automaton(1.0, 1.0), 2.0, 0.25);
  const Signal h = to_signal(traj, "h");
  CHECK(h.value_at(1.5) == 0.5);
  for (double t = 0.05; t < 2.0; t += 0.13) {
    CHECK(std::fabs(h.value_at(t) - ideal_arm(1.0, 1.0, t)) <= 1e-9);
  }
}

TEST_CASE("reset events land exactly on multiples of T") {
  const double h_max = 0.7;
  const double T = 0.3;
  const Trajectory traj = simulate(robot_arm_automaton(h_max, T), 5.0 * T, 0.07);
  REQUIRE(traj.events.size() == 5);
  for (std::size_t k = 0; k < traj.events.size(); ++k) {
    CHECK(std::fabs(traj.events[k].t - static_cast<double>(k + 1) * T) <= 1e-12);
    CHECK(traj.events[k].event == "lower");
  }
}

TEST_CASE("event times do not depend on the sampling step") {
  const Trajectory fine = simulate(robot_arm_automaton(1.0, 1.0), 4.0, 0.001);
  const Trajectory coarse = simulate(robot_arm_automaton(1.0, 1.0), 4.0, 0.9);
  REQUIRE(fine.events.size() == coarse.events.size());
  for (std::size_t i = 0; i < fine.events.size(); ++i) {
    CHECK(fine.events[i].t == coarse.events[i].t);
  }
}

TEST_CASE("samples lie exactly on the per-segment line") {
  const double h_max = 2.0;
  const double T = 0.8;
  const Trajectory traj = simulate(robot_arm_automaton(h_max, T), 4.0 * T, 0.05);
  const double rate = h_max / T;
  double segment_start_t = 0.0;
  double segment_start_h = 0.0;
  for (const auto& sample : traj.samples) {
    const double h = sample.values.at("h");
    if (h == 0.0 && sample.t > 0.0) {  // post-reset sample opens a segment
      segment_start_t = sample.t;
      segment_start_h = 0.0;
      continue;
    }
    const double expected = segment_start_h + rate * (sample.t - segment_start_t);
    CHECK(std::fabs(h - expected) <= 1e-12);
  }
}

TEST_CASE("grid samples and event samples interleave in order") {
  const Trajectory traj = simulate(robot_arm_automaton(1.0, 1.0), 2.2, 0.5);
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    CHECK(traj.samples[i].t >= traj.samples[i - 1].t);
  }
  // grid points 0.5, 1.5 present; events produce duplicate times at 1.0, 2.0
  int duplicates = 0;
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    if (traj.samples[i].t == traj.samples[i - 1].t) ++duplicates;
  }
  CHECK(duplicates == 2);
}

TEST_CASE("to_signal keeps both sides of a jump") {
  const Trajectory traj = simulate(robot_arm_automaton(1.0, 1.0), 2.5, 0.25);
  const Signal h = to_signal(traj, "h");
  CHECK(h.value_at(1.0) == 1.0);            // pre-reset value at the event time
  CHECK(h.value_at(1.0 + 1e-9) == 0.0);     // post-reset value at t+
  for (std::size_t i = 1; i < h.size(); ++i) {
    CHECK(h.times()[i] > h.times()[i - 1]);  // strictly increasing, as Signal requires
  }
}

TEST_CASE("constant-flow state yields a constant signal") {
  HybridAutomaton ha;
  ha.variables["v"] = 1.5;
  ha.initial_state = "hold";
  AutomatonState hold;
  hold.id = "hold";
  ha.states.push_back(hold);  // no flow, no invariant
  const Trajectory traj = simulate(ha, 1.0, 0.2);
  const Signal v = to_signal(traj, "v");
  for (double t = 0.0; t <= 1.0; t += 0.1) {
    CHECK(v.value_at(t) == 1.5);
  }
}

TEST_CASE("querying an undeclared variable fails") {
  const Trajectory traj = simulate(robot_arm_automaton(1.0, 1.0), 1.0, 0.5);
  CHECK_THROWS_AS(to_signal(traj, "nope"), UnknownVariableError);
}

TEST_CASE("an invariant violation with no enabled transition blocks") {
  HybridAutomaton ha = robot_arm_automaton(1.0, 1.0);
  ha.transitions.clear();
  CHECK_THROWS_AS(simulate(ha, 3.0, 0.1), BlockedError);
}

TEST_CASE("two simultaneously enabled transitions are rejected") {
  HybridAutomaton ha = robot_arm_automaton(1.0, 1.0);
  Transition duplicate = ha.transitions.front();
  duplicate.event = "also";
  ha.transitions.push_back(duplicate);
  CHECK_THROWS_AS(simulate(ha, 3.0, 0.1), NondeterministicChoiceError);
}

TEST_CASE("undeclared variables in the model are caught up front") {
  HybridAutomaton ha = robot_arm_automaton(1.0, 1.0);
  ha.states[0].flow["ghost"] = 1.0;
  CHECK_THROWS_AS(simulate(ha, 1.0, 0.1), UnknownVariableError);
}

TEST_CASE("automaton text round trip simulates identically") {
  const HybridAutomaton ha = robot_arm_automaton(0.7, 0.3);
  const HybridAutomaton back = parse_automaton(automaton_to_text(ha));
  const Trajectory a = simulate(ha, 1.0, 0.05);
  const Trajectory b = simulate(back, 1.0, 0.05);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].t == b.samples[i].t);
    CHECK(a.samples[i].values.at("h") == b.samples[i].values.at("h"));
  }
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    CHECK(a.events[i].t == b.events[i].t);
  }
}

TEST_CASE("multi-term inequalities parse and serialize") {
  const LinearInequality ineq = parse_automaton(
      "[variables]\nh = 0\nv = 0\n[initial]\ns\n[states]\ns inv 2*h+-1*v<=3\n")
      .states.front().invariant.front();
  REQUIRE(ineq.terms.size() == 2);
  CHECK(ineq.terms[0].first == "h");
  CHECK(ineq.terms[0].second == 2.0);
  CHECK(ineq.terms[1].first == "v");
  CHECK(ineq.terms[1].second == -1.0);
  CHECK(ineq.bound == 3.0);
}

TEST_CASE("automaton parser rejects malformed text") {
  CHECK_THROWS_AS(parse_automaton("[states]\ns inv h<3\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("[transitions]\na b guard h>=1\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("[transitions]\na -> b reset h:=0\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("junk\n"), ParseError);
}

TEST_CASE("trajectory CSV files") {
  const auto dir = std::filesystem::temp_directory_path() / "ctnn_test_hybrid";
  std::filesystem::create_directories(dir);
  const Trajectory traj = simulate(robot_arm_automaton(1.0, 1.0), 2.0, 0.5);
  const auto traj_path = (dir / "traj.csv").string();
  const auto events_path = (dir / "events.csv").string();
  write_trajectory_csv(traj_path, traj);
  write_events_csv(events_path, traj);
  std::ifstream tin(traj_path);
  std::string line;
  std::getline(tin, line);
  CHECK(line == "t,state,h");
  std::ifstream ein(events_path);
  std::getline(ein, line);
  CHECK(line == "t,event");
  std::getline(ein, line);
  CHECK(line == "1,lower");
}

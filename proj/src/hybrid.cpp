// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "ctnn/hybrid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "ctnn/csv.hpp"

namespace ctnn {

double LinearInequality::lhs(const std::map<std::string, double>& values) const {
  double acc = 0.0;
  for (const auto& [var, coeff] : terms) {
    const auto it = values.find(var);
    if (it == values.end()) throw UnknownVariableError("inequality references '" + var + "'");
    acc += coeff * it->second;
  }
  return acc;
}

bool LinearInequality::satisfied(const std::map<std::string, double>& values,
                                 double tolerance) const {
  const double v = lhs(values);
  return relation == Relation::le ? v <= bound + tolerance : v >= bound - tolerance;
}

const AutomatonState& HybridAutomaton::state(const std::string& id) const {
  for (const auto& s : states) {
    if (s.id == id) return s;
  }
  throw InvalidArgumentError("no automaton state '" + id + "'");
}

namespace {

double rate_along(const LinearInequality& ineq, const AutomatonState& state) {
  double acc = 0.0;
  for (const auto& [var, coeff] : ineq.terms) {
    const auto it = state.flow.find(var);
    if (it != state.flow.end()) acc += coeff * it->second;
  }
  return acc;
}

void check_declared(const HybridAutomaton& ha, const LinearInequality& ineq,
                    const std::string& context) {
  for (const auto& [var, coeff] : ineq.terms) {
    if (ha.variables.find(var) == ha.variables.end()) {
      throw UnknownVariableError(context + " references undeclared variable '" + var + "'");
    }
  }
}

}  // namespace

Trajectory simulate(const HybridAutomaton& ha, double t_end, double step) {
  if (!(t_end > 0.0)) throw InvalidArgumentError("simulate: t_end must be > 0");
  if (!(step > 0.0)) throw InvalidArgumentError("simulate: step must be > 0");
  for (const auto& s : ha.states) {
    for (const auto& [var, rate] : s.flow) {
      if (ha.variables.find(var) == ha.variables.end()) {
        throw UnknownVariableError("state '" + s.id + "' flows undeclared variable '" + var + "'");
      }
    }
    for (const auto& ineq : s.invariant) check_declared(ha, ineq, "invariant of '" + s.id + "'");
  }
  for (const auto& tr : ha.transitions) {
    check_declared(ha, tr.guard, "guard of '" + tr.from + " -> " + tr.to + "'");
    for (const auto& [var, value] : tr.resets) {
      if (ha.variables.find(var) == ha.variables.end()) {
        throw UnknownVariableError("reset of '" + tr.from + "' writes undeclared '" + var + "'");
      }
    }
  }

  constexpr double inf = std::numeric_limits<double>::infinity();
  const double time_eps = 1e-12 * std::max(1.0, std::fabs(t_end));

  Trajectory traj;
  const AutomatonState* state = &ha.state(ha.initial_state);
  std::map<std::string, double> vals = ha.variables;
  double t = 0.0;
  traj.samples.push_back({t, state->id, vals});
  std::size_t grid_next = 1;
  int stalled_jumps = 0;

  const auto advanced = [&](double to_time) {
    std::map<std::string, double> v = vals;
    const double dt = to_time - t;
    for (const auto& [var, rate] : state->flow) v[var] += rate * dt;
    return v;
  };

  while (true) {
    // closed-form time of the next invariant violation in this state
    double s_min = inf;
    for (const auto& ineq : state->invariant) {
      const double lhs = ineq.lhs(vals);
      const double drift = rate_along(ineq, *state);
      const double tolerance = 1e-9 * std::max(1.0, std::fabs(ineq.bound));
      double s = inf;
      if (ineq.relation == LinearInequality::Relation::le) {
        if (lhs > ineq.bound + tolerance) {
          s = 0.0;
        } else if (drift > 0.0) {
          s = (ineq.bound - lhs) / drift;
        }
      } else {
        if (lhs < ineq.bound - tolerance) {
          s = 0.0;
        } else if (drift < 0.0) {
          s = (ineq.bound - lhs) / drift;
        }
      }
      s_min = std::min(s_min, std::max(s, 0.0));
    }
    const double t_viol = t + s_min;
    const double seg_end = std::min(t_viol, t_end);

    // grid samples strictly inside the segment
    while (true) {
      const double tg = static_cast<double>(grid_next) * step;
      if (tg >= seg_end - time_eps) break;
      traj.samples.push_back({tg, state->id, advanced(tg)});
      ++grid_next;
    }

    if (t_viol > t_end) {
      traj.samples.push_back({t_end, state->id, advanced(t_end)});
      break;
    }

    // jump exactly at the violation time
    vals = advanced(t_viol);
    if (t_viol - t < time_eps) {
      if (++stalled_jumps > 1000) {
        throw BlockedError("simulate: no time progress after 1000 jumps at t=" +
                           std::to_string(t));
      }
    } else {
      stalled_jumps = 0;
    }
    t = t_viol;

    const Transition* fired = nullptr;
    for (const auto& tr : ha.transitions) {
      if (tr.from != state->id) continue;
      const double tolerance = 1e-9 * std::max(1.0, std::fabs(tr.guard.bound));
      if (tr.guard.satisfied(vals, tolerance)) {
        if (fired != nullptr) {
          throw NondeterministicChoiceError("simulate: transitions '" + fired->event + "' and '" +
                                            tr.event + "' both enabled at t=" + std::to_string(t));
        }
        fired = &tr;
      }
    }
    if (fired == nullptr) {
      throw BlockedError("simulate: invariant of '" + state->id +
                         "' violated at t=" + std::to_string(t) + " with no enabled transition");
    }

    traj.samples.push_back({t, state->id, vals});
    traj.events.push_back({t, fired->event});
    for (const auto& [var, value] : fired->resets) vals[var] = value;
    state = &ha.state(fired->to);
    traj.samples.push_back({t, state->id, vals});

    while (static_cast<double>(grid_next) * step <= t + time_eps) ++grid_next;
    if (t >= t_end - time_eps) break;
  }
  return traj;
}

Signal to_signal(const Trajectory& trajectory, const std::string& variable) {
  if (trajectory.samples.empty()) {
    throw InvalidArgumentError("to_signal: empty trajectory");
  }
  if (trajectory.samples.front().values.find(variable) ==
      trajectory.samples.front().values.end()) {
    throw UnknownVariableError("to_signal: no variable '" + variable + "'");
  }
  std::vector<double> times;
  std::vector<double> values;
  times.reserve(trajectory.samples.size());
  values.reserve(trajectory.samples.size());
  for (const auto& sample : trajectory.samples) {
    double t = sample.t;
    if (!times.empty() && t <= times.back()) {
      t = times.back() + 1e-9;  // duplicate-time convention at resets
    }
    times.push_back(t);
    values.push_back(sample.values.at(variable));
  }
  return Signal(std::move(times), std::move(values));
}

HybridAutomaton robot_arm_automaton(double h_max, double T) {
  if (!(h_max > 0.0) || !(T > 0.0)) {
    throw InvalidArgumentError("robot_arm_automaton: need h_max > 0 and T > 0");
  }
  HybridAutomaton ha;
  ha.variables["h"] = 0.0;
  ha.initial_state = "raise";
  AutomatonState raise;
  raise.id = "raise";
  raise.flow["h"] = h_max / T;
  raise.invariant.push_back({{{"h", 1.0}}, LinearInequality::Relation::le, h_max});
  ha.states.push_back(raise);
  Transition drop;
  drop.from = "raise";
  drop.to = "raise";
  drop.guard = {{{"h", 1.0}}, LinearInequality::Relation::ge, h_max};
  drop.resets["h"] = 0.0;
  drop.event = "lower";
  ha.transitions.push_back(drop);
  return ha;
}

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

double parse_number(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(where + ": not a number: '" + s + "'");
  }
}

// `2*h+-1*v<=3` or `h>=1`
LinearInequality parse_inequality(const std::string& text, const std::string& where) {
  LinearInequality ineq;
  std::size_t rel_pos = text.find("<=");
  if (rel_pos != std::string::npos) {
    ineq.relation = LinearInequality::Relation::le;
  } else {
    rel_pos = text.find(">=");
    if (rel_pos == std::string::npos) {
      throw ParseError(where + ": inequality needs <= or >=: '" + text + "'");
    }
    ineq.relation = LinearInequality::Relation::ge;
  }
  ineq.bound = parse_number(text.substr(rel_pos + 2), where);
  const std::string lhs = text.substr(0, rel_pos);
  std::size_t pos = 0;
  while (pos < lhs.size()) {
    std::size_t next = lhs.find('+', pos + 1);  // skip a leading sign
    if (next == std::string::npos) next = lhs.size();
    std::string term = lhs.substr(pos, next - pos);
    double coeff = 1.0;
    if (const auto star = term.find('*'); star != std::string::npos) {
      coeff = parse_number(term.substr(0, star), where);
      term = term.substr(star + 1);
    } else if (!term.empty() && term[0] == '-') {
      coeff = -1.0;
      term = term.substr(1);
    }
    if (term.empty() || !std::all_of(term.begin(), term.end(), ident_char)) {
      throw ParseError(where + ": bad term '" + term + "' in inequality");
    }
    ineq.terms.emplace_back(term, coeff);
    pos = next + (next < lhs.size() ? 1 : 0);
  }
  if (ineq.terms.empty()) throw ParseError(where + ": inequality has no variables");
  return ineq;
}

std::string inequality_to_text(const LinearInequality& ineq) {
  std::string out;
  for (std::size_t i = 0; i < ineq.terms.size(); ++i) {
    if (i > 0) out += "+";
    if (ineq.terms[i].second != 1.0) {
      out += csv::format_double(ineq.terms[i].second) + "*";
    }
    out += ineq.terms[i].first;
  }
  out += ineq.relation == LinearInequality::Relation::le ? "<=" : ">=";
  out += csv::format_double(ineq.bound);
  return out;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::pair<std::string, std::string> split_on(const std::string& tok, const std::string& sep,
                                             const std::string& where) {
  const auto pos = tok.find(sep);
  if (pos == std::string::npos || pos == 0 || pos + sep.size() >= tok.size() + 1) {
    throw ParseError(where + ": expected '" + sep + "' in '" + tok + "'");
  }
  return {tok.substr(0, pos), tok.substr(pos + sep.size())};
}

}  // namespace

HybridAutomaton parse_automaton(const std::string& text, const std::string& origin) {
  HybridAutomaton ha;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0].front() == '[') {
      if (toks.size() != 1 || toks[0].back() != ']') {
        throw ParseError(where + ": malformed section header");
      }
      section = toks[0].substr(1, toks[0].size() - 2);
      continue;
    }
    if (section == "variables") {
      if (toks.size() == 3 && toks[1] == "=") {
        ha.variables[toks[0]] = parse_number(toks[2], where);
      } else if (toks.size() == 1) {
        const auto [var, value] = split_on(toks[0], "=", where);
        ha.variables[var] = parse_number(value, where);
      } else {
        throw ParseError(where + ": expected `name = value`");
      }
    } else if (section == "initial") {
      if (toks.size() != 1) throw ParseError(where + ": expected a single state id");
      ha.initial_state = toks[0];
    } else if (section == "states") {
      AutomatonState st;
      st.id = toks[0];
      for (std::size_t i = 1; i + 1 < toks.size(); i += 2) {
        if (toks[i] == "flow") {
          const auto [var, rate] = split_on(toks[i + 1], "=", where);
          st.flow[var] = parse_number(rate, where);
        } else if (toks[i] == "inv") {
          st.invariant.push_back(parse_inequality(toks[i + 1], where));
        } else {
          throw ParseError(where + ": expected `flow` or `inv`, got '" + toks[i] + "'");
        }
      }
      if (toks.size() % 2 == 0) throw ParseError(where + ": dangling keyword");
      ha.states.push_back(st);
    } else if (section == "transitions") {
      if (toks.size() < 3 || toks[1] != "->") {
        throw ParseError(where + ": expected `from -> to ...`");
      }
      Transition tr;
      tr.from = toks[0];
      tr.to = toks[2];
      bool have_guard = false;
      for (std::size_t i = 3; i + 1 < toks.size(); i += 2) {
        if (toks[i] == "guard") {
          tr.guard = parse_inequality(toks[i + 1], where);
          have_guard = true;
        } else if (toks[i] == "reset") {
          const auto [var, value] = split_on(toks[i + 1], ":=", where);
          tr.resets[var] = parse_number(value, where);
        } else if (toks[i] == "event") {
          tr.event = toks[i + 1];
        } else {
          throw ParseError(where + ": expected guard/reset/event, got '" + toks[i] + "'");
        }
      }
      if (toks.size() % 2 == 0) throw ParseError(where + ": dangling keyword");
      if (!have_guard) throw ParseError(where + ": transition needs a guard");
      ha.transitions.push_back(tr);
    } else if (section.empty()) {
      throw ParseError(where + ": content before the first section");
    } else {
      throw ParseError(where + ": unknown section '" + section + "'");
    }
  }
  return ha;
}

std::string automaton_to_text(const HybridAutomaton& ha) {
  std::ostringstream out;
  out << "# ctnn hybrid automaton\n";
  out << "[variables]\n";
  for (const auto& [var, value] : ha.variables) {
    out << var << " = " << csv::format_double(value) << "\n";
  }
  out << "[initial]\n" << ha.initial_state << "\n";
  out << "[states]\n";
  for (const auto& st : ha.states) {
    out << st.id;
    for (const auto& [var, rate] : st.flow) {
      out << " flow " << var << "=" << csv::format_double(rate);
    }
    for (const auto& ineq : st.invariant) {
      out << " inv " << inequality_to_text(ineq);
    }
    out << "\n";
  }
  out << "[transitions]\n";
  for (const auto& tr : ha.transitions) {
    out << tr.from << " -> " << tr.to << " guard " << inequality_to_text(tr.guard);
    for (const auto& [var, value] : tr.resets) {
      out << " reset " << var << ":=" << csv::format_double(value);
    }
    if (!tr.event.empty()) out << " event " << tr.event;
    out << "\n";
  }
  return out.str();
}

HybridAutomaton load_automaton(const std::string& path) {
  return parse_automaton(csv::read_text(path), path);
}

void save_automaton(const std::string& path, const HybridAutomaton& ha) {
  std::istringstream ss(automaton_to_text(ha));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  csv::write_text_atomic(path, lines);
}

void write_trajectory_csv(const std::string& path, const Trajectory& trajectory) {
  if (trajectory.samples.empty()) {
    throw InvalidArgumentError("write_trajectory_csv: empty trajectory");
  }
  std::vector<std::string> lines;
  std::string header = "t,state";
  for (const auto& [var, value] : trajectory.samples.front().values) header += "," + var;
  lines.push_back(header);
  for (const auto& sample : trajectory.samples) {
    std::string row = csv::format_double(sample.t) + "," + sample.state;
    for (const auto& [var, value] : sample.values) row += "," + csv::format_double(value);
    lines.push_back(row);
  }
  csv::write_text_atomic(path, lines);
}

void write_events_csv(const std::string& path, const Trajectory& trajectory) {
  std::vector<std::string> lines;
  lines.emplace_back("t,event");
  for (const auto& ev : trajectory.events) {
    lines.push_back(csv::format_double(ev.t) + "," + ev.event);
  }
  csv::write_text_atomic(path, lines);
}

}  // namespace ctnn

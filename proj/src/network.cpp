// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "ctnn/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace ctnn {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::duplicate_id: return "DuplicateId";
    case ViolationKind::unknown_unit: return "UnknownUnit";
    case ViolationKind::self_loop: return "SelfLoop";
    case ViolationKind::negative_delay: return "NegativeDelay";
    case ViolationKind::negative_tau: return "NegativeTau";
    case ViolationKind::negative_alpha: return "NegativeAlpha";
    case ViolationKind::cyclic_network: return "CyclicNetwork";
    case ViolationKind::input_has_incoming: return "InputHasIncoming";
    case ViolationKind::on_neuron_has_incoming: return "OnNeuronHasIncoming";
    case ViolationKind::output_has_outgoing: return "OutputHasOutgoing";
    case ViolationKind::missing_output: return "MissingOutput";
    case ViolationKind::multiple_outputs: return "MultipleOutputs";
    case ViolationKind::no_incoming_edge: return "NoIncomingEdge";
  }
  return "Unknown";
}

namespace {

bool is_unit(const Network& net, const std::string& id) { return net.units.count(id) != 0; }
bool is_input(const Network& net, const std::string& id) {
  return std::find(net.inputs.begin(), net.inputs.end(), id) != net.inputs.end();
}
bool is_on_neuron(const Network& net, const std::string& id) {
  return net.on_neurons.count(id) != 0;
}

// Topological order of the configured units; empty optional when cyclic.
// Ordering is deterministic (lexicographic among ready units).
std::optional<std::vector<std::string>> topological_order(const Network& net) {
  std::map<std::string, int> indegree;
  std::map<std::string, std::vector<std::string>> out_edges;
  for (const auto& [id, cfg] : net.units) indegree[id] = 0;
  for (const auto& e : net.edges) {
    if (is_unit(net, e.source) && is_unit(net, e.target)) {
      ++indegree[e.target];
      out_edges[e.source].push_back(e.target);
    }
  }
  std::set<std::string> ready;
  for (const auto& [id, deg] : indegree) {
    if (deg == 0) ready.insert(id);
  }
  std::vector<std::string> order;
  order.reserve(indegree.size());
  while (!ready.empty()) {
    const std::string id = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(id);
    for (const auto& next : out_edges[id]) {
      if (--indegree[next] == 0) ready.insert(next);
    }
  }
  if (order.size() != net.units.size()) return std::nullopt;
  return order;
}

}  // namespace

std::vector<Violation> validate(const Network& net) {
  std::vector<Violation> out;
  const auto add = [&](ViolationKind kind, const std::string& subject, const std::string& msg) {
    out.push_back({kind, subject, to_string(kind) + ": " + msg});
  };

  // id namespace must be disjoint across units, inputs, and on-neurons
  std::set<std::string> seen;
  const auto check_id = [&](const std::string& id) {
    if (!seen.insert(id).second) {
      add(ViolationKind::duplicate_id, id, "id '" + id + "' declared more than once");
    }
  };
  for (const auto& [id, cfg] : net.units) check_id(id);
  for (const auto& id : net.inputs) check_id(id);
  for (const auto& [id, c] : net.on_neurons) check_id(id);

  for (const auto& [id, cfg] : net.units) {
    if (cfg.tau.has_value() && *cfg.tau < 0.0) {
      add(ViolationKind::negative_tau, id, "unit '" + id + "' has tau < 0");
    }
    if (cfg.alpha.has_value() && *cfg.alpha < 0.0) {
      add(ViolationKind::negative_alpha, id, "unit '" + id + "' has alpha < 0");
    }
  }

  const auto known = [&](const std::string& id) {
    return is_unit(net, id) || is_input(net, id) || is_on_neuron(net, id);
  };
  std::map<std::string, int> incoming_count;
  std::map<std::string, int> outgoing_count;
  for (const auto& e : net.edges) {
    const std::string subject = e.source + "->" + e.target;
    if (!known(e.source)) {
      add(ViolationKind::unknown_unit, subject, "edge source '" + e.source + "' undeclared");
    }
    if (!known(e.target)) {
      add(ViolationKind::unknown_unit, subject, "edge target '" + e.target + "' undeclared");
    }
    if (e.source == e.target) {
      add(ViolationKind::self_loop, subject, "self loop on '" + e.source + "'");
    }
    if (e.delay < 0.0) {
      add(ViolationKind::negative_delay, subject, "edge " + subject + " has delay < 0");
    }
    ++incoming_count[e.target];
    ++outgoing_count[e.source];
    if (is_input(net, e.target)) {
      add(ViolationKind::input_has_incoming, e.target,
          "input unit '" + e.target + "' has an incoming edge");
    }
    if (is_on_neuron(net, e.target)) {
      add(ViolationKind::on_neuron_has_incoming, e.target,
          "on-neuron '" + e.target + "' has an incoming edge");
    }
  }

  if (!is_unit(net, net.output)) {
    add(ViolationKind::missing_output, net.output,
        "output '" + net.output + "' is not a configured unit");
  } else if (outgoing_count[net.output] > 0) {
    add(ViolationKind::output_has_outgoing, net.output,
        "output unit '" + net.output + "' has outgoing edges");
  }

  for (const auto& [id, cfg] : net.units) {
    if (id != net.output && outgoing_count[id] == 0) {
      add(ViolationKind::multiple_outputs, id,
          "unit '" + id + "' is a sink besides the declared output");
    }
    if (incoming_count[id] == 0) {
      add(ViolationKind::no_incoming_edge, id, "unit '" + id + "' has no incoming edge");
    }
  }

  if (!topological_order(net).has_value()) {
    add(ViolationKind::cyclic_network, "", "the edge graph contains a cycle");
  }
  return out;
}

namespace {

void throw_on_violations(const std::vector<Violation>& violations) {
  if (violations.empty()) return;
  for (const auto& v : violations) {
    if (v.kind == ViolationKind::cyclic_network) throw CyclicNetworkError(v.message);
  }
  std::ostringstream msg;
  msg << "invalid network:";
  for (const auto& v : violations) msg << " [" << v.message << "]";
  throw InvalidNetworkError(msg.str());
}

// Resolved predecessor reference for one incoming edge.
struct Term {
  enum class Kind { input, on_neuron, unit } kind;
  std::size_t index = 0;   // input index or topo index of the source unit
  double constant = 0.0;   // on-neuron value
  double weight = 1.0;
  double delay = 0.0;
};

struct Prepared {
  std::vector<std::string> order;                  // topological unit order
  std::map<std::string, std::size_t> unit_index;   // id -> position in order
  std::vector<const UnitConfig*> configs;          // by topo index
  std::vector<std::vector<Term>> terms;            // incoming terms by topo index
  std::size_t output_index = 0;
};

Prepared prepare(const Network& net, std::size_t n_inputs) {
  throw_on_violations(validate(net));
  if (n_inputs != net.inputs.size()) {
    throw ArityMismatchError("expected " + std::to_string(net.inputs.size()) +
                             " input signals, got " + std::to_string(n_inputs));
  }
  Prepared p;
  p.order = *topological_order(net);
  for (std::size_t i = 0; i < p.order.size(); ++i) p.unit_index[p.order[i]] = i;
  p.configs.resize(p.order.size());
  p.terms.resize(p.order.size());
  for (std::size_t i = 0; i < p.order.size(); ++i) {
    p.configs[i] = &net.units.at(p.order[i]);
  }
  std::map<std::string, std::size_t> input_index;
  for (std::size_t i = 0; i < net.inputs.size(); ++i) input_index[net.inputs[i]] = i;
  for (const auto& e : net.edges) {
    Term term;
    term.weight = e.weight;
    term.delay = e.delay;
    if (auto it = input_index.find(e.source); it != input_index.end()) {
      term.kind = Term::Kind::input;
      term.index = it->second;
    } else if (auto on = net.on_neurons.find(e.source); on != net.on_neurons.end()) {
      term.kind = Term::Kind::on_neuron;
      term.constant = on->second;
    } else {
      term.kind = Term::Kind::unit;
      term.index = p.unit_index.at(e.source);
    }
    p.terms[p.unit_index.at(e.target)].push_back(term);
  }
  p.output_index = p.unit_index.at(net.output);
  return p;
}

// Integration window of a unit, or 0 when the stage is off or degenerate.
double window_of(const UnitConfig& cfg) {
  return (cfg.tau.has_value() && *cfg.tau > 0.0) ? *cfg.tau : 0.0;
}

}  // namespace

Signal eval_network(const Network& net, const std::vector<Signal>& inputs, const TimeGrid& grid,
                    double quad_step) {
  if (quad_step <= 0.0) quad_step = grid.step;
  const Prepared p = prepare(net, inputs.size());
  const std::size_t n_units = p.order.size();

  // How far before grid.t_start each unit must be known: delays plus
  // integration windows accumulated along paths towards the output.
  std::vector<double> need(n_units, 0.0);
  for (std::size_t r = n_units; r-- > 0;) {
    // walk targets in reverse topological order so `need` is final
    const std::size_t target = r;
    for (const auto& term : p.terms[target]) {
      if (term.kind == Term::Kind::unit) {
        need[term.index] = std::max(need[term.index],
                                    need[target] + window_of(*p.configs[target]) + term.delay);
      }
    }
  }

  // Per-unit sample storage on the shared internal grid; index j holds the
  // value at grid.t_start + (j - back_steps)*step.
  std::vector<std::size_t> back_steps(n_units, 0);
  std::vector<std::vector<double>> samples(n_units);
  const std::size_t n_out = grid.size();
  for (std::size_t u = 0; u < n_units; ++u) {
    back_steps[u] = static_cast<std::size_t>(std::ceil(need[u] / grid.step - 1e-12)) + 2;
  }

  const auto unit_value_at = [&](std::size_t u, double t) -> double {
    const auto& vals = samples[u];
    const double pos =
        (t - grid.t_start) / grid.step + static_cast<double>(back_steps[u]);
    if (pos <= 0.0) return vals.front();
    const auto last = static_cast<double>(vals.size() - 1);
    if (pos >= last) return vals.back();
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return vals[i] + frac * (vals[i + 1] - vals[i]);
  };

  for (std::size_t u = 0; u < n_units; ++u) {
    const UnitConfig& cfg = *p.configs[u];
    const auto y1 = [&](double t) -> double {
      double acc = 0.0;
      for (const auto& term : p.terms[u]) {
        const double s = t - term.delay;
        switch (term.kind) {
          case Term::Kind::input: acc += term.weight * inputs[term.index].value_at(s); break;
          case Term::Kind::on_neuron: acc += term.weight * term.constant; break;
          case Term::Kind::unit: acc += term.weight * unit_value_at(term.index, s); break;
        }
      }
      return acc;
    };
    const std::size_t total = back_steps[u] + n_out;
    auto& vals = samples[u];
    vals.resize(total);
    for (std::size_t j = 0; j < total; ++j) {
      const double t =
          grid.t_start + (static_cast<double>(j) - static_cast<double>(back_steps[u])) * grid.step;
      vals[j] = eval_unit(cfg, y1, t, quad_step);
    }
  }

  std::vector<double> out_times(n_out);
  std::vector<double> out_values(n_out);
  const auto& out_samples = samples[p.output_index];
  for (std::size_t i = 0; i < n_out; ++i) {
    out_times[i] = grid.time(i);
    out_values[i] = out_samples[back_steps[p.output_index] + i];
  }
  return Signal(std::move(out_times), std::move(out_values));
}

struct NetworkEvaluator::Impl {
  Network net;
  std::vector<Signal> inputs;
  double quad_step;
  Prepared prepared;
  std::vector<std::unordered_map<double, double>> cache;

  Impl(const Network& n, std::vector<Signal> ins, double qs)
      : net(n), inputs(std::move(ins)), quad_step(qs), prepared(prepare(net, inputs.size())) {
    if (!(quad_step > 0.0)) {
      throw InvalidArgumentError("NetworkEvaluator: quad_step must be > 0");
    }
    cache.resize(prepared.order.size());
  }

  double y1_of(std::size_t u, double t) {
    double acc = 0.0;
    for (const auto& term : prepared.terms[u]) {
      const double s = t - term.delay;
      switch (term.kind) {
        case Term::Kind::input: acc += term.weight * inputs[term.index].value_at(s); break;
        case Term::Kind::on_neuron: acc += term.weight * term.constant; break;
        case Term::Kind::unit: acc += term.weight * value_of(term.index, s); break;
      }
    }
    return acc;
  }

  double value_of(std::size_t u, double t) {
    auto& memo = cache[u];
    if (const auto it = memo.find(t); it != memo.end()) return it->second;
    const double v = eval_unit(*prepared.configs[u], [&](double s) { return y1_of(u, s); }, t,
                               quad_step);
    memo.emplace(t, v);
    return v;
  }
};

NetworkEvaluator::NetworkEvaluator(const Network& net, std::vector<Signal> inputs,
                                   double quad_step)
    : impl_(std::make_unique<Impl>(net, std::move(inputs), quad_step)) {}

NetworkEvaluator::~NetworkEvaluator() = default;
NetworkEvaluator::NetworkEvaluator(NetworkEvaluator&&) noexcept = default;
NetworkEvaluator& NetworkEvaluator::operator=(NetworkEvaluator&&) noexcept = default;

double NetworkEvaluator::value_at(double t) {
  return impl_->value_of(impl_->prepared.output_index, t);
}

double NetworkEvaluator::unit_value(const std::string& id, double t) {
  const auto it = impl_->prepared.unit_index.find(id);
  if (it == impl_->prepared.unit_index.end()) {
    throw InvalidArgumentError("no unit '" + id + "'");
  }
  return impl_->value_of(it->second, t);
}

}  // namespace ctnn

// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: evaluation, synthesis, periodicity analysis,
// training, logic demos, and hybrid simulation over CSV/text files.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ctnn/csv.hpp"
#include "ctnn/hybrid.hpp"
#include "ctnn/network_io.hpp"
#include "ctnn/periodicity.hpp"
#include "ctnn/synthesis.hpp"
#include "ctnn/training.hpp"

namespace {

using namespace ctnn;

TimeGrid parse_grid(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = spec.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw InvalidGridError("grid must be start:end:step, got '" + spec + "'");
  }
  try {
    return TimeGrid(std::stod(spec.substr(0, first)),
                    std::stod(spec.substr(first + 1, second - first - 1)),
                    std::stod(spec.substr(second + 1)));
  } catch (const std::invalid_argument&) {
    throw InvalidGridError("grid must be numeric start:end:step, got '" + spec + "'");
  }
}

void require_files(const std::vector<std::string>& paths) {
  for (const auto& p : paths) {
    if (!std::filesystem::exists(p)) throw IoError("no such file: " + p);
  }
}

// Output locations are checked before any compute starts.
void require_writable(const std::vector<std::string>& paths) {
  for (const auto& p : paths) {
    if (p.empty()) continue;
    const auto parent = std::filesystem::path(p).parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent)) {
      throw IoError("output directory does not exist: " + parent.string());
    }
  }
}

std::vector<Signal> read_inputs(const std::vector<std::string>& paths) {
  std::vector<Signal> inputs;
  for (const auto& p : paths) {
    for (auto& ch : csv::read_channels(p)) inputs.push_back(std::move(ch));
  }
  return inputs;
}

int thread_budget() {
  if (const char* env = std::getenv("CTNN_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void print_gate(std::ostream& os, const FourierLogicGate& gate, const std::string& label) {
  os << label << ": c*sin(a*x+b) with a=" << csv::format_double(gate.a)
     << " b=" << csv::format_double(gate.b) << " c=" << csv::format_double(gate.c)
     << " arity=" << gate.arity << "\n";
  std::vector<double> inputs(gate.arity, -1.0);
  const int rows = 1 << gate.arity;
  for (int row = 0; row < rows; ++row) {
    for (int i = 0; i < gate.arity; ++i) {
      inputs[i] = (row >> (gate.arity - 1 - i)) & 1 ? 1.0 : -1.0;
    }
    const double out = eval_fourier_gate(gate, inputs);
    os << "  (";
    for (int i = 0; i < gate.arity; ++i) os << (i ? "," : "") << (inputs[i] > 0 ? "+1" : "-1");
    os << ") -> " << csv::format_double(out) << (out > 0 ? "  true" : "  false") << "\n";
  }
}

struct EvalArgs {
  std::string net_path, grid_spec, out_path;
  std::vector<std::string> in_paths;
  double quad_step = 0.0;
};

struct SawtoothArgs {
  double h = 1.0, T = 1.0;
  int n = 1;
  std::string out_path;
};

struct AnalyzeArgs {
  std::string in_path, out_path, minima_path;
  double tmin = 0.0, tmax = 0.0, step = 0.0, window = 0.0, quad_step = 0.0;
  std::optional<double> anchor;
};

struct TrainArgs {
  std::string net_path, target_path, out_path, trace_path, params = "w";
  std::vector<std::string> in_paths;
  double eta = 0.01, tol = 0.0, fd_step = 1e-5, quad_step = 0.01;
  int iters = 100;
};

struct LogicArgs {
  int n = 3;
  std::string out_path;
};

struct HybridArgs {
  std::string model_path, out_path, events_path, var = "h", signal_path;
  double hmax = 1.0, T = 1.0, tend = 1.0, step = 0.01;
  bool builtin_arm = false;
};

int run_eval(const EvalArgs& args) {
  require_writable({args.out_path});
  require_files([&] {
    auto v = args.in_paths;
    v.push_back(args.net_path);
    return v;
  }());
  const TimeGrid grid = parse_grid(args.grid_spec);
  const Network net = load_network(args.net_path);
  const Signal out = eval_network(net, read_inputs(args.in_paths), grid, args.quad_step);
  csv::write_signal(args.out_path, out);
  return 0;
}

int run_sawtooth(const SawtoothArgs& args) {
  require_writable({args.out_path});
  save_network(args.out_path, build_sawtooth_network({args.h, args.T, args.n}));
  return 0;
}

int run_analyze(const AnalyzeArgs& args) {
  require_writable({args.out_path, args.minima_path});
  require_files({args.in_path});
  const Signal x = csv::read_signal(args.in_path);
  const PeriodScan scan = scan_periods(x, args.tmin, args.tmax, args.step, args.window,
                                       args.quad_step, args.anchor, thread_budget());
  std::vector<std::string> lines{"T,E"};
  for (const auto& [T, E] : scan.candidates) {
    lines.push_back(csv::format_double(T) + "," + csv::format_double(E));
  }
  csv::write_text_atomic(args.out_path, lines);
  if (!args.minima_path.empty()) {
    std::vector<std::string> rows{"T,E,rank"};
    for (std::size_t i = 0; i < scan.minima.size(); ++i) {
      rows.push_back(csv::format_double(scan.minima[i].first) + "," +
                     csv::format_double(scan.minima[i].second) + "," + std::to_string(i + 1));
    }
    csv::write_text_atomic(args.minima_path, rows);
  }
  return 0;
}

int run_train(const TrainArgs& args) {
  require_writable({args.out_path, args.trace_path});
  require_files([&] {
    auto v = args.in_paths;
    v.push_back(args.net_path);
    v.push_back(args.target_path);
    return v;
  }());
  const Network net = load_network(args.net_path);
  const Dataset data(read_inputs(args.in_paths), csv::read_signal(args.target_path));
  TrainConfig cfg;
  cfg.eta = args.eta;
  cfg.max_iters = args.iters;
  cfg.fd_step = args.fd_step;
  cfg.tol = args.tol;
  cfg.quad_step = args.quad_step;
  cfg.mask = ParamMask::parse(args.params);
  const TrainResult result = train(net, data, cfg);
  save_network(args.out_path, result.network);
  if (!args.trace_path.empty()) {
    std::vector<std::string> lines{"iter,E"};
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
      lines.push_back(std::to_string(i) + "," + csv::format_double(result.trace[i]));
    }
    csv::write_text_atomic(args.trace_path, lines);
  }
  std::cout << "final E = " << csv::format_double(result.trace.back()) << " after "
            << result.trace.size() - 1 << " iterations\n";
  return 0;
}

int run_logic(const LogicArgs& args) {
  require_writable({args.out_path});
  const auto table = gate_table(args.n);
  print_gate(std::cout, table[0], "AND");
  print_gate(std::cout, table[1], "XOR (as published)");
  std::cout << "note: under the +1/-1 encoding the published XOR row computes XNOR;\n"
               "the ODD row with n=2 is exclusive-or proper:\n";
  print_gate(std::cout, xor_gate_corrected(), "XOR (ODD n=2)");
  print_gate(std::cout, table[2], "ODD n=" + std::to_string(args.n));
  if (!args.out_path.empty()) {
    write_gates_csv(args.out_path, table);
  }
  return 0;
}

int run_hybrid(const HybridArgs& args) {
  require_writable({args.out_path, args.events_path, args.signal_path});
  HybridAutomaton ha;
  if (args.builtin_arm) {
    ha = robot_arm_automaton(args.hmax, args.T);
  } else {
    require_files({args.model_path});
    ha = load_automaton(args.model_path);
  }
  const Trajectory traj = simulate(ha, args.tend, args.step);
  if (!args.out_path.empty()) write_trajectory_csv(args.out_path, traj);
  if (!args.events_path.empty()) write_events_csv(args.events_path, traj);
  if (!args.signal_path.empty()) csv::write_signal(args.signal_path, to_signal(traj, args.var));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous-time neural network toolkit"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a network over input signals");
  eval_cmd->add_option("--net", eval_args.net_path, "network file")->required();
  eval_cmd->add_option("--in", eval_args.in_paths, "input signal CSV (repeatable)");
  eval_cmd->add_option("--grid", eval_args.grid_spec, "output grid start:end:step")->required();
  eval_cmd->add_option("--out", eval_args.out_path, "output CSV")->required();
  eval_cmd->add_option("--quad-step", eval_args.quad_step,
                       "integration quadrature step (default: grid step)");

  SawtoothArgs saw_args;
  auto* saw_cmd = app.add_subcommand("synth-sawtooth", "compile a sawtooth network");
  saw_cmd->set_help_flag("--help", "print help");  // frees -h for the height flag
  saw_cmd->add_option("-h,--h,--height", saw_args.h, "sawtooth height")->required();
  saw_cmd->add_option("--T,--period", saw_args.T, "episode duration")->required();
  saw_cmd->add_option("--n", saw_args.n, "number of harmonics")->required();
  saw_cmd->add_option("--out", saw_args.out_path, "network file to write")->required();

  AnalyzeArgs ana_args;
  auto* ana_cmd = app.add_subcommand("analyze-period", "comb-filter period scan");
  ana_cmd->add_option("--in", ana_args.in_path, "signal CSV")->required();
  ana_cmd->add_option("--tmin", ana_args.tmin, "smallest candidate delay")->required();
  ana_cmd->add_option("--tmax", ana_args.tmax, "largest candidate delay")->required();
  ana_cmd->add_option("--step", ana_args.step, "candidate grid step")->required();
  ana_cmd->add_option("--window", ana_args.window, "integration window (s)")->required();
  ana_cmd->add_option("--out", ana_args.out_path, "scan CSV (T,E)")->required();
  ana_cmd->add_option("--minima", ana_args.minima_path, "minima CSV (T,E,rank)");
  ana_cmd->add_option("--quad-step", ana_args.quad_step,
                      "quadrature step (default: signal sample spacing)");
  ana_cmd->add_option("--anchor", ana_args.anchor,
                      "window start t0 (default: signal start + tmax)");

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "gradient-descent parameter fitting");
  train_cmd->add_option("--net", train_args.net_path, "initial network file")->required();
  train_cmd->add_option("--in", train_args.in_paths, "input signal CSV (repeatable)");
  train_cmd->add_option("--target", train_args.target_path, "target signal CSV")->required();
  train_cmd->add_option("--out", train_args.out_path, "trained network file")->required();
  train_cmd->add_option("--trace", train_args.trace_path, "error trace CSV (iter,E)");
  train_cmd->add_option("--eta", train_args.eta, "learning rate");
  train_cmd->add_option("--iters", train_args.iters, "maximum iterations");
  train_cmd->add_option("--tol", train_args.tol, "stop once E <= tol");
  train_cmd->add_option("--fd-step", train_args.fd_step, "finite-difference step");
  train_cmd->add_option("--params", train_args.params,
                        "trainable kinds, e.g. w,delay,tau,alpha,omega,phi");
  train_cmd->add_option("--quad-step", train_args.quad_step, "quadrature step");

  LogicArgs logic_args;
  auto* logic_cmd = app.add_subcommand("logic-demo", "single-unit Fourier logic gates");
  logic_cmd->add_option("--n", logic_args.n, "arity of the ODD gate");
  logic_cmd->add_option("--out", logic_args.out_path, "gate table CSV");

  HybridArgs hyb_args;
  auto* hyb_cmd = app.add_subcommand("hybrid-sim", "simulate a hybrid automaton");
  auto* model_opt = hyb_cmd->add_option("--model", hyb_args.model_path, "automaton file");
  auto* arm_opt = hyb_cmd->add_flag("--arm", hyb_args.builtin_arm, "built-in robot arm model");
  hyb_cmd->add_option("--hmax", hyb_args.hmax, "arm height (with --arm)");
  hyb_cmd->add_option("--T", hyb_args.T, "episode duration (with --arm)");
  hyb_cmd->add_option("--tend", hyb_args.tend, "simulation horizon")->required();
  hyb_cmd->add_option("--step", hyb_args.step, "sampling step");
  hyb_cmd->add_option("--out", hyb_args.out_path, "trajectory CSV");
  hyb_cmd->add_option("--events", hyb_args.events_path, "events CSV");
  hyb_cmd->add_option("--var", hyb_args.var, "variable for --signal");
  hyb_cmd->add_option("--signal", hyb_args.signal_path, "variable time series CSV");
  model_opt->excludes(arm_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(eval_args);
    if (saw_cmd->parsed()) return run_sawtooth(saw_args);
    if (ana_cmd->parsed()) return run_analyze(ana_args);
    if (train_cmd->parsed()) return run_train(train_args);
    if (logic_cmd->parsed()) return run_logic(logic_args);
    if (hyb_cmd->parsed()) {
      if (!hyb_args.builtin_arm && hyb_args.model_path.empty()) {
        std::cerr << "hybrid-sim: need --model or --arm\n";
        return 1;
      }
      return run_hybrid(hyb_args);
    }
  } catch (const ctnn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

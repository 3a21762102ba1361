// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "ctnn/csv.hpp"
#include "ctnn/network_io.hpp"
#include "ctnn/signal.hpp"

using namespace ctnn;
namespace fs = std::filesystem;

namespace {

const std::string cli = CTNN_CLI_PATH;

fs::path work_dir() {
  const auto dir = fs::temp_directory_path() / "ctnn_test_cli";
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) { return csv::read_text(p.string()); }

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run("no-such-command") == 1);
  CHECK(run("eval --bogus-flag 1") == 1);
  CHECK(run("synth-sawtooth --h 1 --T 1 --n 3") == 1);  // missing --out
}

TEST_CASE("compute errors exit with code 2") {
  const auto dir = work_dir();
  const auto out = (dir / "never.csv").string();
  CHECK(run("eval --net /does/not/exist.ctnn --grid 0:1:0.1 --out " + out) == 2);
  // invalid sawtooth spec
  CHECK(run("synth-sawtooth --h -1 --T 1 --n 3 --out " + (dir / "bad.ctnn").string()) == 2);
}

TEST_CASE("eval writes the expected header and is idempotent") {
  const auto dir = work_dir();
  const auto net_path = (dir / "saw.ctnn").string();
  const auto out1 = (dir / "y1.csv").string();
  const auto out2 = (dir / "y2.csv").string();
  REQUIRE(run("synth-sawtooth --h 1 --T 1 --n 5 --out " + net_path) == 0);
  REQUIRE(run("eval --net " + net_path + " --grid 0:2:0.01 --out " + out1) == 0);
  REQUIRE(run("eval --net " + net_path + " --grid 0:2:0.01 --out " + out2) == 0);
  const std::string body = slurp(out1);
  CHECK(body.substr(0, 8) == "t,value\n");
  CHECK(body == slurp(out2));  // byte identical
}

TEST_CASE("CLI eval of a saved network matches the in-process evaluation") {
  const auto dir = work_dir();
  const auto net_path = (dir / "wire.ctnn").string();
  const auto in_path = (dir / "x.csv").string();
  const auto out_path = (dir / "y.csv").string();

  Network net;
  net.inputs = {"x"};
  UnitConfig u;
  u.alpha = 1.7;
  net.units["u"] = u;
  net.output = "u";
  net.edges.push_back({"x", "u", 0.9, 0.1});
  save_network(net_path, net);

  const Signal x = Signal::from_function([](double t) { return std::sin(2.0 * t); },
                                         TimeGrid(-1.0, 3.0, 0.01));
  csv::write_signal(in_path, x);

  REQUIRE(run("eval --net " + net_path + " --in " + in_path + " --grid 0:1:0.1 --out " +
              out_path) == 0);
  const Signal via_cli = csv::read_signal(out_path);
  const Signal direct = eval_network(load_network(net_path), {csv::read_signal(in_path)},
                                     TimeGrid(0.0, 1.0, 0.1));
  REQUIRE(via_cli.size() == direct.size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    CHECK(via_cli.values()[i] == direct.values()[i]);  // 17 digits round-trip
  }
}

TEST_CASE("analyze-period emits scan and minima files") {
  const auto dir = work_dir();
  const auto in_path = (dir / "tone.csv").string();
  const auto scan_path = (dir / "scan.csv").string();
  const auto minima_path = (dir / "minima.csv").string();
  csv::write_signal(in_path,
                    Signal::from_function([](double t) { return std::cos(2.0 * 3.14159265358979 * t); },
                                          TimeGrid(0.0, 12.0, 0.01)));
  REQUIRE(run("analyze-period --in " + in_path +
              " --tmin 0.5 --tmax 2.5 --step 0.05 --window 6 --out " + scan_path + " --minima " +
              minima_path) == 0);
  const std::string scan = slurp(scan_path);
  CHECK(scan.substr(0, 4) == "T,E\n");
  const std::string minima = slurp(minima_path);
  CHECK(minima.substr(0, 9) == "T,E,rank\n");
  // best minimum on the first data row, T close to 1
  const auto line_end = minima.find('\n', 9);
  const std::string first_row = minima.substr(9, line_end - 9);
  const double T_best = std::stod(first_row.substr(0, first_row.find(',')));
  CHECK(std::fabs(T_best - 1.0) <= 0.01);
}

TEST_CASE("train fits the ramp and writes a trace") {
  const auto dir = work_dir();
  const auto net_path = (dir / "lin.ctnn").string();
  const auto in_path = (dir / "xin.csv").string();
  const auto target_path = (dir / "target.csv").string();
  const auto out_path = (dir / "trained.ctnn").string();
  const auto trace_path = (dir / "trace.csv").string();

  Network net;
  net.inputs = {"x"};
  net.units["u"] = UnitConfig{};
  net.output = "u";
  net.edges.push_back({"x", "u", 0.0, 0.0});
  save_network(net_path, net);
  csv::write_signal(in_path, Signal({0.0, 1.0}, {1.0, 2.0}));
  csv::write_signal(target_path, Signal({0.0, 1.0}, {2.0, 4.0}));

  REQUIRE(run("train --net " + net_path + " --in " + in_path + " --target " + target_path +
              " --out " + out_path + " --trace " + trace_path +
              " --eta 0.05 --iters 500 --params w") == 0);
  const Network trained = load_network(out_path);
  CHECK(std::fabs(trained.edges[0].weight - 2.0) <= 1e-3);
  CHECK(slurp(trace_path).substr(0, 7) == "iter,E\n");
}

TEST_CASE("logic-demo writes the gate table") {
  const auto dir = work_dir();
  const auto gates_path = (dir / "gates.csv").string();
  REQUIRE(run("logic-demo --n 4 --out " + gates_path) == 0);
  const std::string gates = slurp(gates_path);
  CHECK(gates.substr(0, 15) == "name,arity,a,b,");
  CHECK(gates.find("AND,2,") != std::string::npos);
  CHECK(gates.find("ODD,4,") != std::string::npos);
}

TEST_CASE("hybrid-sim from a model file equals the built-in arm") {
  const auto dir = work_dir();
  const auto model_path = (dir / "arm.ha").string();
  const auto sig_a = (dir / "ha.csv").string();
  const auto sig_b = (dir / "hb.csv").string();
  {
    std::ofstream out(model_path);
    out << "[variables]\nh = 0\n[initial]\nraise\n[states]\nraise flow h=2 inv h<=1\n"
           "[transitions]\nraise -> raise guard h>=1 reset h:=0 event lower\n";
  }
  REQUIRE(run("hybrid-sim --model " + model_path + " --tend 2 --step 0.1 --signal " + sig_a) ==
          0);
  REQUIRE(run("hybrid-sim --arm --hmax 1 --T 0.5 --tend 2 --step 0.1 --signal " + sig_b) == 0);
  CHECK(slurp(sig_a) == slurp(sig_b));
}

TEST_CASE("hybrid-sim without a model choice is a usage error") {
  CHECK(run("hybrid-sim --tend 1") == 1);
}

// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "ctnn/network_io.hpp"

#include <charconv>
#include <sstream>

#include "ctnn/csv.hpp"

namespace ctnn {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double parse_number(const std::string& s, const std::string& where) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(where + ": not a number: '" + s + "'");
  }
  return v;
}

// "key=value" -> (key, value)
std::pair<std::string, std::string> split_kv(const std::string& tok, const std::string& where) {
  const auto eq = tok.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size()) {
    throw ParseError(where + ": expected key=value, got '" + tok + "'");
  }
  return {tok.substr(0, eq), tok.substr(eq + 1)};
}

}  // namespace

Network parse_network(const std::string& text, const std::string& origin) {
  Network net;
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
    if (section == "units") {
      UnitConfig cfg;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto [key, value] = split_kv(toks[i], where);
        if (key == "tau") {
          cfg.tau = value == "off" ? std::optional<double>{} : parse_number(value, where);
        } else if (key == "alpha") {
          cfg.alpha = value == "off" ? std::optional<double>{} : parse_number(value, where);
        } else if (key == "omega") {
          cfg.omega = parse_number(value, where);
        } else if (key == "phi") {
          cfg.phi = parse_number(value, where);
        } else {
          throw ParseError(where + ": unknown unit field '" + key + "'");
        }
      }
      net.units[toks[0]] = cfg;
    } else if (section == "on_neurons") {
      if (toks.size() != 2) throw ParseError(where + ": expected `id c=<value>`");
      const auto [key, value] = split_kv(toks[1], where);
      if (key != "c") throw ParseError(where + ": expected field 'c'");
      net.on_neurons[toks[0]] = parse_number(value, where);
    } else if (section == "inputs") {
      for (const auto& tok : toks) net.inputs.push_back(tok);
    } else if (section == "output") {
      if (toks.size() != 1) throw ParseError(where + ": expected a single unit id");
      net.output = toks[0];
    } else if (section == "edges") {
      if (toks.size() < 3 || toks[1] != "->") {
        throw ParseError(where + ": expected `source -> target [w=...] [delay=...]`");
      }
      Edge e;
      e.source = toks[0];
      e.target = toks[2];
      for (std::size_t i = 3; i < toks.size(); ++i) {
        const auto [key, value] = split_kv(toks[i], where);
        if (key == "w") {
          e.weight = parse_number(value, where);
        } else if (key == "delay") {
          e.delay = parse_number(value, where);
        } else {
          throw ParseError(where + ": unknown edge field '" + key + "'");
        }
      }
      net.edges.push_back(e);
    } else if (section.empty()) {
      throw ParseError(where + ": content before the first section");
    } else {
      throw ParseError(where + ": unknown section '" + section + "'");
    }
  }
  return net;
}

std::string network_to_text(const Network& net) {
  using csv::format_double;
  std::ostringstream out;
  out << "# ctnn network\n";
  out << "[units]\n";
  for (const auto& [id, cfg] : net.units) {
    out << id;
    out << " tau=" << (cfg.tau ? format_double(*cfg.tau) : "off");
    out << " alpha=" << (cfg.alpha ? format_double(*cfg.alpha) : "off");
    out << " omega=" << format_double(cfg.omega);
    out << " phi=" << format_double(cfg.phi);
    out << "\n";
  }
  out << "[on_neurons]\n";
  for (const auto& [id, c] : net.on_neurons) {
    out << id << " c=" << format_double(c) << "\n";
  }
  out << "[inputs]\n";
  for (const auto& id : net.inputs) out << id << "\n";
  out << "[output]\n" << net.output << "\n";
  out << "[edges]\n";
  for (const auto& e : net.edges) {
    out << e.source << " -> " << e.target << " w=" << format_double(e.weight)
        << " delay=" << format_double(e.delay) << "\n";
  }
  return out.str();
}

Network load_network(const std::string& path) {
  return parse_network(csv::read_text(path), path);
}

void save_network(const std::string& path, const Network& net) {
  std::istringstream ss(network_to_text(net));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  csv::write_text_atomic(path, lines);
}

}  // namespace ctnn

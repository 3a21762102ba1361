// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "ctnn/csv.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ctnn::csv {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim spaces and stray carriage returns
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& path, std::size_t lineno) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(path + ":" + std::to_string(lineno) + ": not a number: '" + s + "'");
  }
  return v;
}

// Reads all rows as columns of doubles; returns (times, channels).
std::pair<std::vector<double>, std::vector<std::vector<double>>> read_table(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::vector<double> times;
  std::vector<std::vector<double>> channels;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_fields(line);
    if (!header_seen) {
      header_seen = true;  // first non-empty line is the header
      if (fields.size() < 2) {
        throw ParseError(path + ": expected header `t,value` or `t,x1,...,xn`");
      }
      channels.resize(fields.size() - 1);
      continue;
    }
    if (fields.size() != channels.size() + 1) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(channels.size() + 1) + " columns, got " +
                       std::to_string(fields.size()));
    }
    times.push_back(parse_double(fields[0], path, lineno));
    for (std::size_t c = 0; c < channels.size(); ++c) {
      channels[c].push_back(parse_double(fields[c + 1], path, lineno));
    }
  }
  if (times.empty()) throw ParseError(path + ": no samples");
  return {std::move(times), std::move(channels)};
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Signal read_signal(const std::string& path, Interpolation interpolation,
                   OutOfRangePolicy out_of_range) {
  auto [times, channels] = read_table(path);
  if (channels.size() != 1) {
    throw ParseError(path + ": expected a single value column, got " +
                     std::to_string(channels.size()));
  }
  return Signal(std::move(times), std::move(channels[0]), interpolation, out_of_range);
}

std::vector<Signal> read_channels(const std::string& path, Interpolation interpolation,
                                  OutOfRangePolicy out_of_range) {
  auto [times, channels] = read_table(path);
  std::vector<Signal> out;
  out.reserve(channels.size());
  for (auto& ch : channels) {
    out.emplace_back(times, std::move(ch), interpolation, out_of_range);
  }
  return out;
}

void write_signal(const std::string& path, const Signal& s) {
  std::vector<std::string> lines;
  lines.reserve(s.size() + 1);
  lines.emplace_back("t,value");
  for (std::size_t i = 0; i < s.size(); ++i) {
    lines.push_back(format_double(s.times()[i]) + "," + format_double(s.values()[i]));
  }
  write_text_atomic(path, lines);
}

void write_text_atomic(const std::string& path, const std::vector<std::string>& lines) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    for (const auto& l : lines) out << l << '\n';
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("rename " + tmp.string() + " -> " + path + ": " + ec.message());
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ctnn::csv

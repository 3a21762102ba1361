// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ctnn/signal.hpp"

namespace ctnn::csv {

// Shortest decimal representation that round-trips a double (17 significant
// digits); all numeric file output goes through this.
std::string format_double(double v);

// Time-series files: header `t,value`, one sample per row. The multi-channel
// variant has header `t,x1,x2,...,xn`.
Signal read_signal(const std::string& path,
                   Interpolation interpolation = Interpolation::linear,
                   OutOfRangePolicy out_of_range = OutOfRangePolicy::zero);
std::vector<Signal> read_channels(const std::string& path,
                                  Interpolation interpolation = Interpolation::linear,
                                  OutOfRangePolicy out_of_range = OutOfRangePolicy::zero);
void write_signal(const std::string& path, const Signal& s);

// Writes lines joined with '\n' (plus trailing newline) atomically: the file
// appears either complete or not at all.
void write_text_atomic(const std::string& path, const std::vector<std::string>& lines);

std::string read_text(const std::string& path);

}  // namespace ctnn::csv

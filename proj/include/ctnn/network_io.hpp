// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "ctnn/network.hpp"

namespace ctnn {

// Text format for networks, sectioned key/value lines:
//
//   [units]
//   osc1 tau=off alpha=off omega=6.2831853071795862 phi=-1.5707963267948966
//   [on_neurons]
//   bias c=1
//   [inputs]
//   x
//   [output]
//   out
//   [edges]
//   bias -> osc1 w=-0.31830988618379069 delay=0
//
// `#` starts a comment; ids must not contain whitespace. Numbers are written
// with 17 significant digits, so save/load round-trips are lossless.
Network load_network(const std::string& path);
void save_network(const std::string& path, const Network& net);

Network parse_network(const std::string& text, const std::string& origin = "<string>");
std::string network_to_text(const Network& net);

}  // namespace ctnn

// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ctnn/network.hpp"

namespace ctnn {

// Comb-filter energy curve over candidate delays.
struct PeriodScan {
  std::vector<std::pair<double, double>> candidates;  // (T, E) in T order
  std::vector<std::pair<double, double>> minima;      // refined, sorted by E ascending
  double window = 0.0;
  double grid_step = 0.0;
};

// The 2-edge comb unit: the input minus a copy of itself delayed by T, fed
// through the integration stage with window `window`.
Network make_comb_network(double T, double window);

// Residual energy sqrt( (1/window) * integral_{t0}^{t0+window} (x(u) - x(u-T))^2 du ),
// realized by evaluating the comb network at time t0 + window. Zero for
// signals that are exactly T-periodic over the window. The anchor t0
// defaults to x.first_time() + T, the earliest point where the delayed copy
// stays inside the sampled span. quad_step <= 0 uses the signal's own
// leading sample spacing.
double comb_energy(const Signal& x, double T, double window, double quad_step = 0.0,
                   std::optional<double> anchor = std::nullopt);

// Evaluates comb_energy on the delay grid T_min, T_min+step, ..., detects
// strict interior local minima, and refines each by golden-section search to
// step/100. One anchor (x.first_time() + T_max by default) is used for the
// whole scan so that every delayed copy stays in range. `threads` > 1
// parallelizes the grid sweep; results do not depend on the thread count.
PeriodScan scan_periods(const Signal& x, double T_min, double T_max, double step, double window,
                        double quad_step = 0.0, std::optional<double> anchor = std::nullopt,
                        int threads = 1);

// Best rational approximations of a positive real.
struct RatioApprox {
  double target = 0.0;
  std::vector<std::pair<std::int64_t, std::int64_t>> convergents;  // (p, q), lowest terms
};

// Descends the Stern-Brocot tree by mediants, keeping each mediant p/q with
// q <= max_denominator that improves |q*target - p|. For irrational targets
// this emits exactly the continued-fraction convergents.
RatioApprox stern_brocot(double target, std::int64_t max_denominator);

// Candidate overall period lengths q * (2*pi/omega1) for each convergent
// p/q of omega2/omega1: the delays at which both components complete close
// to whole numbers of cycles. Consecutive duplicates are dropped.
std::vector<double> predict_period_candidates(double omega1, double omega2,
                                              std::int64_t max_denominator);

}  // namespace ctnn

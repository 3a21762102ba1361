// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ctnn/errors.hpp"

namespace ctnn {

enum class Interpolation { linear, zero_order_hold };

// What value_at does for queries outside the sampled span.
enum class OutOfRangePolicy { error, zero, clamp };

// Uniform grid [t_start, t_end] with the given step.
// Number of points is floor((t_end - t_start)/step) + 1.
struct TimeGrid {
  double t_start;
  double t_end;
  double step;

  TimeGrid(double t_start, double t_end, double step);

  std::size_t size() const { return size_; }
  double time(std::size_t i) const { return t_start + static_cast<double>(i) * step; }

 private:
  std::size_t size_;
};

// A continuous-time real-valued signal, realized as finite samples plus an
// interpolation rule. Immutable after construction; safe to share across
// threads.
class Signal {
 public:
  // Sample times must be strictly increasing and non-empty.
  Signal(std::vector<double> times, std::vector<double> values,
         Interpolation interpolation = Interpolation::linear,
         OutOfRangePolicy out_of_range = OutOfRangePolicy::zero);

  static Signal from_function(const std::function<double(double)>& f, const TimeGrid& grid,
                              Interpolation interpolation = Interpolation::linear,
                              OutOfRangePolicy out_of_range = OutOfRangePolicy::zero);

  // Exact at sample times; interpolated in between; outside the span the
  // out-of-range policy applies.
  double value_at(double t) const;

  // Restriction to [t0, t1] (clipped to the sampled span), with the boundary
  // values added as samples when they fall between existing ones.
  Signal window(double t0, double t1) const;

  // Same signal displaced in time by dt.
  Signal shifted(double dt) const;

  double first_time() const { return times_.front(); }
  double last_time() const { return times_.back(); }
  std::size_t size() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }
  Interpolation interpolation() const { return interpolation_; }
  OutOfRangePolicy out_of_range() const { return out_of_range_; }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  Interpolation interpolation_;
  OutOfRangePolicy out_of_range_;
};

}  // namespace ctnn

// Copyright 2026 The ctnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "ctnn/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ctnn {

namespace {

// Tolerance for snapping a query that is a few ulps outside the span back
// onto the boundary. Must stay well below the 1e-9 s duplicate-sample offset
// used by the hybrid module.
double edge_tolerance(double first, double last) {
  const double scale = std::max({1.0, std::fabs(first), std::fabs(last)});
  return 32.0 * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace

TimeGrid::TimeGrid(double t_start, double t_end, double step)
    : t_start(t_start), t_end(t_end), step(step) {
  if (!(step > 0.0)) {
    throw InvalidGridError("TimeGrid: step must be > 0, got " + std::to_string(step));
  }
  if (t_end < t_start) {
    throw InvalidGridError("TimeGrid: t_end < t_start");
  }
  // The 1e-9 guard keeps spans like 1.0/0.1 from losing their end point to
  // representation error.
  size_ = static_cast<std::size_t>(std::floor((t_end - t_start) / step + 1e-9)) + 1;
}

Signal::Signal(std::vector<double> times, std::vector<double> values,
               Interpolation interpolation, OutOfRangePolicy out_of_range)
    : times_(std::move(times)),
      values_(std::move(values)),
      interpolation_(interpolation),
      out_of_range_(out_of_range) {
  if (times_.empty()) {
    throw InvalidSignalError("Signal: at least one sample required");
  }
  if (times_.size() != values_.size()) {
    throw InvalidSignalError("Signal: times/values length mismatch");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw InvalidSignalError("Signal: sample times must be strictly increasing (index " +
                               std::to_string(i) + ")");
    }
  }
}

Signal Signal::from_function(const std::function<double(double)>& f, const TimeGrid& grid,
                             Interpolation interpolation, OutOfRangePolicy out_of_range) {
  std::vector<double> ts(grid.size());
  std::vector<double> vs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ts[i] = grid.time(i);
    vs[i] = f(ts[i]);
  }
  return Signal(std::move(ts), std::move(vs), interpolation, out_of_range);
}

double Signal::value_at(double t) const {
  const double first = times_.front();
  const double last = times_.back();
  if (t < first || t > last) {
    const double edge = edge_tolerance(first, last);
    if (t >= first - edge && t <= last + edge) {
      return t < first ? values_.front() : values_.back();
    }
    switch (out_of_range_) {
      case OutOfRangePolicy::error:
        throw OutOfRangeError("Signal::value_at: t=" + std::to_string(t) + " outside [" +
                              std::to_string(first) + ", " + std::to_string(last) + "]");
      case OutOfRangePolicy::zero:
        return 0.0;
      case OutOfRangePolicy::clamp:
        return t < first ? values_.front() : values_.back();
    }
  }
  // Index of the last sample with time <= t.
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
  if (times_[i] == t || i + 1 == times_.size()) {
    return values_[i];
  }
  if (interpolation_ == Interpolation::zero_order_hold) {
    return values_[i];
  }
  const double u = (t - times_[i]) / (times_[i + 1] - times_[i]);
  return values_[i] + u * (values_[i + 1] - values_[i]);
}

Signal Signal::window(double t0, double t1) const {
  if (!(t0 < t1)) {
    throw InvalidArgumentError("Signal::window: t0 must be < t1");
  }
  const double lo = std::max(t0, first_time());
  const double hi = std::min(t1, last_time());
  if (!(lo < hi)) {
    throw OutOfRangeError("Signal::window: [t0, t1] does not overlap the sampled span");
  }
  std::vector<double> ts;
  std::vector<double> vs;
  ts.push_back(lo);
  vs.push_back(value_at(lo));
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (times_[i] > lo && times_[i] < hi) {
      ts.push_back(times_[i]);
      vs.push_back(values_[i]);
    }
  }
  ts.push_back(hi);
  vs.push_back(value_at(hi));
  return Signal(std::move(ts), std::move(vs), interpolation_, out_of_range_);
}

Signal Signal::shifted(double dt) const {
  std::vector<double> ts(times_);
  for (double& t : ts) t += dt;
  return Signal(std::move(ts), values_, interpolation_, out_of_range_);
}

}  // namespace ctnn

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace hhelm {

/// A uniformly sampled real time series.
struct Signal {
  std::vector<double> samples;
  double fs = 256.0;

  void validate() const {
    if (samples.size() < 4) {
      fail(ErrorCode::InvalidArgument,
           "signal needs at least 4 samples, got " + std::to_string(samples.size()));
    }
    if (!(fs > 0.0) || !std::isfinite(fs)) fail(ErrorCode::InvalidArgument, "sampling rate must be > 0");
    for (double x : samples) {
      if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "signal has non-finite samples");
    }
  }
};

}  // namespace hhelm

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hht/signal.hpp"

namespace hhelm {

enum class BoundaryPolicy {
  Mirror,  // reflect the two nearest extrema across each edge
  None,    // fit the extrema only; linear extrapolation past the outermost knots
};

struct EmdConfig {
  double sd_threshold = 0.2;
  std::size_t max_siftings = 100;
  std::size_t max_imfs = 6;
  BoundaryPolicy boundary = BoundaryPolicy::Mirror;

  void validate() const;
};

struct Extrema {
  std::vector<std::size_t> maxima;
  std::vector<std::size_t> minima;
};

struct ImfSet {
  std::vector<std::vector<double>> imfs;  // highest frequency first
  std::vector<double> residual;
};

/// Interior local extrema by three-point comparison. A flat run bounded by
/// lower (higher) neighbours on both sides counts once, at its midpoint.
Extrema find_extrema(std::span<const double> x);

/// Natural cubic spline through (positions, values) sampled at 0..n-1.
std::vector<double> spline_envelope(std::span<const std::size_t> positions,
                                    std::span<const double> values, std::size_t n,
                                    BoundaryPolicy boundary);

/// Empirical mode decomposition by envelope-mean sifting. Sifting stops once
/// SD = Σmean²/Σh² is below the threshold and extrema and zero-crossing
/// counts differ by at most one, or after max_siftings. The residual is
/// computed by subtraction, so sum(imfs) + residual reproduces the input to
/// rounding.
ImfSet emd(const Signal& signal, const EmdConfig& config = {});

std::size_t count_zero_crossings(std::span<const double> x);

}  // namespace hhelm

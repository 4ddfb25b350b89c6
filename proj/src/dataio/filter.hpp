#pragma once

#include <cstddef>
#include <vector>

#include "hht/signal.hpp"

namespace hhelm {

struct FilterSpec {
  double cutoff = 10.0;  // Hz
  std::size_t taps = 257;

  void validate(double fs) const;
};

/// Hamming-windowed sinc low-pass kernel, normalized to unit DC gain.
std::vector<double> design_lowpass(const FilterSpec& spec, double fs);

/// Zero-phase FIR low-pass. The symmetric kernel is centred on each output
/// sample (group-delay compensated); samples beyond the ends are filled by
/// point reflection, x[-i] = 2·x[0] − x[i], which keeps linear trends exact.
Signal lowpass_filter(const Signal& signal, const FilterSpec& spec);

}  // namespace hhelm

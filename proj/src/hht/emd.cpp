#include "hht/emd.hpp"

#include <algorithm>
#include <string>

namespace hhelm {

namespace {

// Natural cubic spline over strictly increasing knots.
class NaturalSpline {
 public:
  NaturalSpline(std::vector<double> xs, std::vector<double> ys)
      : xs_(std::move(xs)), ys_(std::move(ys)), m_(xs_.size(), 0.0) {
    const std::size_t k = xs_.size();
    if (k < 3) return;
    // Tridiagonal system for interior second derivatives (Thomas algorithm).
    const std::size_t n = k - 2;
    std::vector<double> sub(n), diag(n), sup(n), rhs(n);
    for (std::size_t i = 1; i + 1 < k; ++i) {
      const double h0 = xs_[i] - xs_[i - 1];
      const double h1 = xs_[i + 1] - xs_[i];
      sub[i - 1] = h0;
      diag[i - 1] = 2.0 * (h0 + h1);
      sup[i - 1] = h1;
      rhs[i - 1] = 6.0 * ((ys_[i + 1] - ys_[i]) / h1 - (ys_[i] - ys_[i - 1]) / h0);
    }
    for (std::size_t i = 1; i < n; ++i) {
      const double w = sub[i] / diag[i - 1];
      diag[i] -= w * sup[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    m_[n] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
      m_[i + 1] = (rhs[i] - sup[i] * m_[i + 2]) / diag[i];
    }
  }

  // Evaluates at 0..count-1 in one forward pass over the knot intervals.
  std::vector<double> sample(std::size_t count) const {
    std::vector<double> out(count);
    const std::size_t last = xs_.size() - 1;
    std::size_t seg = 0;
    for (std::size_t t = 0; t < count; ++t) {
      const double x = static_cast<double>(t);
      if (x <= xs_.front()) {
        out[t] = ys_.front() + slope_at(0) * (x - xs_.front());
        continue;
      }
      if (x >= xs_.back()) {
        out[t] = ys_.back() + slope_at(last) * (x - xs_.back());
        continue;
      }
      while (xs_[seg + 1] < x) ++seg;
      out[t] = eval_segment(seg, x);
    }
    return out;
  }

 private:
  double eval_segment(std::size_t i, double x) const {
    const double h = xs_[i + 1] - xs_[i];
    const double a = (xs_[i + 1] - x) / h;
    const double b = (x - xs_[i]) / h;
    return a * ys_[i] + b * ys_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
  }

  double slope_at(std::size_t knot) const {
    if (knot == 0) {
      const double h = xs_[1] - xs_[0];
      return (ys_[1] - ys_[0]) / h - h * (2.0 * m_[0] + m_[1]) / 6.0;
    }
    const std::size_t i = knot - 1;
    const double h = xs_[knot] - xs_[i];
    return (ys_[knot] - ys_[i]) / h + h * (m_[i] + 2.0 * m_[knot]) / 6.0;
  }

  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> m_;
};

// Extrema and zero-crossing counts differ by at most one.
bool is_proto_imf(std::span<const double> h) {
  const Extrema e = find_extrema(h);
  const std::size_t extrema = e.maxima.size() + e.minima.size();
  const std::size_t crossings = count_zero_crossings(h);
  return (extrema > crossings ? extrema - crossings : crossings - extrema) <= 1;
}

bool can_envelope(const Extrema& e) { return !e.maxima.empty() && !e.minima.empty(); }

std::vector<double> envelope_of(std::span<const double> x, const std::vector<std::size_t>& idx,
                                BoundaryPolicy boundary) {
  std::vector<double> values(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) values[i] = x[idx[i]];
  return spline_envelope(idx, values, x.size(), boundary);
}

}  // namespace

void EmdConfig::validate() const {
  if (!(sd_threshold > 0.0)) fail(ErrorCode::InvalidConfig, "sd_threshold must be > 0");
  if (max_siftings < 1) fail(ErrorCode::InvalidConfig, "max_siftings must be >= 1");
  if (max_imfs < 1) fail(ErrorCode::InvalidConfig, "max_imfs must be >= 1");
}

Extrema find_extrema(std::span<const double> x) {
  Extrema out;
  const std::size_t n = x.size();
  // Skip the run touching the left edge; it is never interior.
  std::size_t i = 1;
  while (i < n && x[i] == x[0]) ++i;
  while (i + 1 < n) {
    std::size_t j = i;
    while (j + 1 < n && x[j + 1] == x[i]) ++j;
    if (j + 1 >= n) break;
    const double left = x[i - 1];
    const double right = x[j + 1];
    const std::size_t mid = (i + j) / 2;
    if (x[i] > left && x[i] > right) {
      out.maxima.push_back(mid);
    } else if (x[i] < left && x[i] < right) {
      out.minima.push_back(mid);
    }
    i = j + 1;
  }
  return out;
}

std::vector<double> spline_envelope(std::span<const std::size_t> positions,
                                    std::span<const double> values, std::size_t n,
                                    BoundaryPolicy boundary) {
  if (positions.size() != values.size()) {
    fail(ErrorCode::ShapeMismatch, "extrema positions and values differ in length");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(positions.size() + 4);
  ys.reserve(positions.size() + 4);
  const std::size_t k = positions.size();
  const double right_edge = static_cast<double>(n) - 1.0;

  if (boundary == BoundaryPolicy::Mirror && k > 0) {
    for (std::size_t i = std::min<std::size_t>(2, k); i-- > 0;) {
      xs.push_back(-static_cast<double>(positions[i]));
      ys.push_back(values[i]);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    xs.push_back(static_cast<double>(positions[i]));
    ys.push_back(values[i]);
  }
  if (boundary == BoundaryPolicy::Mirror && k > 0) {
    for (std::size_t i = 0; i < std::min<std::size_t>(2, k); ++i) {
      xs.push_back(2.0 * right_edge - static_cast<double>(positions[k - 1 - i]));
      ys.push_back(values[k - 1 - i]);
    }
  }
  if (xs.size() < 2) {
    fail(ErrorCode::InsufficientExtrema,
         "spline envelope needs at least 2 knots, got " + std::to_string(xs.size()));
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) fail(ErrorCode::InvalidArgument, "extrema positions must increase");
  }
  return NaturalSpline(std::move(xs), std::move(ys)).sample(n);
}

std::size_t count_zero_crossings(std::span<const double> x) {
  std::size_t crossings = 0;
  int last_sign = 0;
  for (double v : x) {
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) ++crossings;
    last_sign = s;
  }
  return crossings;
}

ImfSet emd(const Signal& signal, const EmdConfig& config) {
  signal.validate();
  config.validate();
  const std::size_t n = signal.samples.size();

  ImfSet out;
  out.residual = signal.samples;
  while (out.imfs.size() < config.max_imfs) {
    const Extrema ext = find_extrema(out.residual);
    if (ext.maxima.size() + ext.minima.size() < 2 || !can_envelope(ext)) break;

    std::vector<double> h = out.residual;
    for (std::size_t sift = 0; sift < config.max_siftings; ++sift) {
      const Extrema e = find_extrema(h);
      if (!can_envelope(e)) break;
      const std::vector<double> upper = envelope_of(h, e.maxima, config.boundary);
      const std::vector<double> lower = envelope_of(h, e.minima, config.boundary);

      double change = 0.0;
      double energy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double mean = 0.5 * (upper[i] + lower[i]);
        energy += h[i] * h[i];
        change += mean * mean;
        h[i] -= mean;
      }
      if (energy == 0.0) break;
      if (change / energy < config.sd_threshold && is_proto_imf(h)) break;
    }

    for (std::size_t i = 0; i < n; ++i) out.residual[i] -= h[i];
    out.imfs.push_back(std::move(h));
  }
  return out;
}

}  // namespace hhelm

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "core/error.hpp"
#include "hht/emd.hpp"
#include "hht/hilbert.hpp"
#include "support/expect.hpp"
#include "support/oracles.hpp"

using namespace hhelm;
using testing::code_of;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> tone(std::size_t n, double fs, double f, double amp = 1.0, double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = amp * std::sin(2.0 * kPi * f * static_cast<double>(i) / fs + phase);
  return x;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

double reconstruction_error(const std::vector<double>& x, const ImfSet& s) {
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double sum = s.residual[i];
    for (const auto& imf : s.imfs) sum += imf[i];
    worst = std::max(worst, std::fabs(x[i] - sum));
    scale = std::max(scale, std::fabs(x[i]));
  }
  return worst / scale;
}

}  // namespace

TEST_CASE("find_extrema examples") {
  std::vector<double> ramp(50);
  std::iota(ramp.begin(), ramp.end(), 0.0);
  const Extrema none = find_extrema(ramp);
  CHECK(none.maxima.empty());
  CHECK(none.minima.empty());

  const Extrema one = find_extrema(tone(16, 16.0, 1.0));
  REQUIRE(one.maxima.size() == 1);
  REQUIRE(one.minima.size() == 1);
  CHECK(one.maxima[0] == 4);
  CHECK(one.minima[0] == 12);

  // A plateau counts once at its midpoint.
  const Extrema plateau = find_extrema(std::vector<double>{0, 1, 3, 3, 3, 1, 0, -2, -2, 0});
  CHECK(plateau.maxima == std::vector<std::size_t>{3});
  CHECK(plateau.minima == std::vector<std::size_t>{7});
}

TEST_CASE("find_extrema agrees with a brute-force scan") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<double> x(256);
    for (double& v : x) v = g(rng);
    const Extrema e = find_extrema(x);
    for (std::size_t i : e.maxima) CHECK(oracle::is_local_max(x, i));
    for (std::size_t i : e.minima) CHECK(oracle::is_local_min(x, i));
    // Continuous noise has no ties, so every strict scan hit must be found.
    std::vector<std::size_t> maxima, minima;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
      if (x[i] > x[i - 1] && x[i] > x[i + 1]) maxima.push_back(i);
      if (x[i] < x[i - 1] && x[i] < x[i + 1]) minima.push_back(i);
    }
    CHECK(e.maxima == maxima);
    CHECK(e.minima == minima);
  }
}

TEST_CASE("spline_envelope examples") {
  SUBCASE("two equal extrema give a constant") {
    const std::size_t pos[] = {10, 40};
    const double val[] = {2.5, 2.5};
    for (auto b : {BoundaryPolicy::Mirror, BoundaryPolicy::None}) {
      const auto env = spline_envelope(pos, val, 64, b);
      for (double v : env) CHECK(v == doctest::Approx(2.5).epsilon(1e-12));
    }
  }
  SUBCASE("collinear extrema reproduce the line without mirroring") {
    const std::size_t pos[] = {5, 17, 30, 52, 80};
    std::vector<double> val;
    for (std::size_t p : pos) val.push_back(0.3 * static_cast<double>(p) - 4.0);
    const auto env = spline_envelope(pos, val, 100, BoundaryPolicy::None);
    for (std::size_t i = 0; i < env.size(); ++i) CHECK(std::fabs(env[i] - (0.3 * static_cast<double>(i) - 4.0)) < 1e-10);
  }
  SUBCASE("upper envelope of a pure tone is flat") {
    const auto x = tone(1000, 100.0, 1.0);
    const Extrema e = find_extrema(x);
    std::vector<double> val;
    for (std::size_t p : e.maxima) val.push_back(x[p]);
    const auto env = spline_envelope(e.maxima, val, x.size(), BoundaryPolicy::Mirror);
    for (std::size_t i = 50; i < 950; ++i) CHECK(std::fabs(env[i] - 1.0) < 0.02);
  }
  SUBCASE("too few knots") {
    const std::size_t pos[] = {3};
    const double val[] = {1.0};
    CHECK(code_of([&] { spline_envelope(pos, val, 10, BoundaryPolicy::None); }) == ErrorCode::InsufficientExtrema);
  }
}

TEST_CASE("emd examples") {
  SUBCASE("linear ramp has no IMFs") {
    Signal s;
    s.samples.resize(512);
    for (std::size_t i = 0; i < 512; ++i) s.samples[i] = 0.01 * static_cast<double>(i) - 1.0;
    const ImfSet r = emd(s);
    CHECK(r.imfs.empty());
    CHECK(r.residual == s.samples);
  }
  SUBCASE("2 Hz + 20 Hz: first IMF follows the 20 Hz tone") {
    const double fs = 256.0;
    const std::size_t n = 2048;
    const auto fast = tone(n, fs, 20.0);
    const auto slow = tone(n, fs, 2.0);
    Signal s{std::vector<double>(n), fs};
    for (std::size_t i = 0; i < n; ++i) s.samples[i] = fast[i] + slow[i];
    const ImfSet r = emd(s);
    REQUIRE(!r.imfs.empty());
    const std::size_t lo = n / 20, hi = n - n / 20;
    const std::span<const double> imf(r.imfs[0].data() + lo, hi - lo);
    const std::span<const double> ref(fast.data() + lo, hi - lo);
    CHECK(pearson(imf, ref) >= 0.95);
  }
  SUBCASE("EEG-like noise decomposes into several IMFs plus residual") {
    Signal s{oracle::multitone(2048, 256.0, 5, 0.5), 256.0};
    const ImfSet r = emd(s);
    CHECK(r.imfs.size() >= 3);
    CHECK(r.residual.size() == 2048);
  }
  SUBCASE("max_imfs caps the decomposition") {
    Signal s{oracle::multitone(1024, 256.0, 8, 1.0), 256.0};
    EmdConfig cfg;
    cfg.max_imfs = 2;
    CHECK(emd(s, cfg).imfs.size() == 2);
  }
  SUBCASE("invalid configuration and signal") {
    Signal s{oracle::multitone(64, 256.0, 1), 256.0};
    EmdConfig cfg;
    cfg.sd_threshold = 0.0;
    CHECK(code_of([&] { emd(s, cfg); }) == ErrorCode::InvalidConfig);
    cfg = EmdConfig{};
    cfg.max_imfs = 0;
    CHECK(code_of([&] { emd(s, cfg); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { emd(Signal{{1.0, 2.0, 3.0}, 256.0}); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("EMD completeness and IMF well-formedness on random multi-tone signals") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto x = oracle::multitone(2048, 256.0, seed);
    const ImfSet r = emd(Signal{x, 256.0});
    CHECK(reconstruction_error(x, r) <= 1e-8);
    for (const auto& imf : r.imfs) {
      REQUIRE(imf.size() == x.size());
      const Extrema e = find_extrema(imf);
      const long extrema = static_cast<long>(e.maxima.size() + e.minima.size());
      const long crossings = static_cast<long>(count_zero_crossings(imf));
      CHECK(std::labs(extrema - crossings) <= 2);
    }
  }
}

TEST_CASE("IMFs come out in decreasing frequency order") {
  int ordered = 0;
  const int total = 30;
  for (int seed = 1; seed <= total; ++seed) {
    const auto x = oracle::multitone(2048, 256.0, static_cast<std::uint64_t>(seed));
    const ImfSet r = emd(Signal{x, 256.0});
    std::vector<double> mean_freq;
    for (const auto& imf : r.imfs) {
      const auto h = hilbert_spectrum(imf, 256.0);
      double sum = 0.0;
      for (std::size_t i = 100; i + 100 < imf.size(); ++i) sum += h.inst_freq[i];
      mean_freq.push_back(sum / static_cast<double>(imf.size() - 200));
    }
    ordered += std::is_sorted(mean_freq.rbegin(), mean_freq.rend()) ? 1 : 0;
  }
  CHECK(ordered >= total * 9 / 10);
}

TEST_CASE("count_zero_crossings") {
  CHECK(count_zero_crossings(std::vector<double>{1, -1, 1, -1}) == 3);
  CHECK(count_zero_crossings(std::vector<double>{1, 0, 0, -1}) == 1);
  CHECK(count_zero_crossings(std::vector<double>{0, 0, 0}) == 0);
}

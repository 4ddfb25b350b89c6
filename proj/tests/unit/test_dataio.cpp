#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "core/error.hpp"
#include "dataio/csv.hpp"
#include "dataio/filter.hpp"
#include "dataio/synth.hpp"
#include "dataio/trials.hpp"
#include "support/expect.hpp"

using namespace hhelm;
using testing::code_of;
using testing::message_of;

namespace {

constexpr double kPi = std::numbers::pi;

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hhelm_dataio_" + name)).string();
}

TrialSet small_set(std::size_t n, double fs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 20.0);
  TrialSet set;
  set.fs = fs;
  for (std::size_t i = 0; i < n; ++i) {
    TrialRecord t;
    t.id = "t" + std::to_string(i);
    t.session = static_cast<int>(i % 8) + 1;
    t.label = i % 3 == 0 ? Label::Positivity : Label::Negativity;
    t.fs = fs;
    t.samples.resize(standard_length(fs));
    for (double& v : t.samples) v = g(rng);
    set.trials.push_back(std::move(t));
  }
  return set;
}

std::vector<double> tone(std::size_t n, double fs, double f) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(2.0 * kPi * f * static_cast<double>(i) / fs);
  return x;
}

double peak_abs(const std::vector<double>& x, std::size_t lo, std::size_t hi) {
  double m = 0.0;
  for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

double active_mean(const TrialRecord& t) {
  const auto a = segment_phases(t).active;
  double s = 0.0;
  for (double v : a) s += v;
  return s / static_cast<double>(a.size());
}

// Fraction of trials whose active-phase mean has the sign of their class.
double threshold_accuracy(const TrialSet& set) {
  std::size_t ok = 0;
  for (const auto& t : set.trials) {
    const Label guess = active_mean(t) < 0.0 ? Label::Negativity : Label::Positivity;
    ok += guess == t.label;
  }
  return 100.0 * static_cast<double>(ok) / static_cast<double>(set.size());
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double v : {0.0, -0.0, 1.0, 0.1, -3.25e-300, 1.7976931348623157e308, 123456.789, 1.0 / 3.0}) {
    const auto back = parse_double(format_double(v));
    REQUIRE(back);
    CHECK(*back == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(!parse_double("1.5x"));
  CHECK(!parse_double(""));
  CHECK(split_fields("a,,b") == std::vector<std::string_view>{"a", "", "b"});
  CHECK(split_lines("x\r\ny\n") == std::vector<std::string_view>{"x", "y"});
}

TEST_CASE("trials CSV round-trip") {
  SUBCASE("save then load") {
    const TrialSet set = small_set(12, 32.0, 1);
    const std::string path = temp_path("roundtrip.csv");
    const std::vector<std::string> comments{"generated for a test", "seed=1"};
    save_trials_csv(set, path, comments);
    CHECK(load_trials_csv(path) == set);
    const std::string text = read_file(path);
    CHECK(text.rfind("# generated for a test\n# seed=1\ntrial_id,session,label,fs,s0,", 0) == 0);
    std::filesystem::remove(path);
  }
  SUBCASE("empty set gives a header-only file") {
    const std::string text = format_trials_csv(TrialSet{});
    CHECK(text == "trial_id,session,label,fs\n");
    CHECK(parse_trials_csv(text).size() == 0);
  }
  SUBCASE("bit-stable output") {
    const TrialSet set = small_set(5, 16.0, 2);
    CHECK(format_trials_csv(set) == format_trials_csv(parse_trials_csv(format_trials_csv(set))));
  }
  SUBCASE("class totals of a large file") {
    TrialSet set;
    set.fs = 4.0;
    for (std::size_t i = 0; i < 8000; ++i) {
      TrialRecord t;
      t.id = "r" + std::to_string(i);
      t.label = i < 5000 ? Label::Negativity : Label::Positivity;
      t.fs = 4.0;
      t.samples.assign(standard_length(4.0), static_cast<double>(i % 17));
      set.trials.push_back(std::move(t));
    }
    const TrialSet back = parse_trials_csv(format_trials_csv(set));
    CHECK(back.size() == 8000);
    CHECK(back.count(Label::Negativity) == 5000);
    CHECK(back.count(Label::Positivity) == 3000);
  }
}

TEST_CASE("trials CSV rejection paths") {
  const std::string header = "trial_id,session,label,fs,s0,s1,s2,s3\n";
  CHECK(code_of([&] { parse_trials_csv(header + "a,1,negativity,0.5,1,2,x,4\n"); }) == ErrorCode::ParseError);
  CHECK(message_of([&] { parse_trials_csv("# note\n" + header + "a,1,negativity,0.5,1,2,3,4\nb,1,negativity,0.5,1,2,nan,4\n"); })
            .find("row 4") != std::string::npos);
  CHECK(code_of([&] { parse_trials_csv(header + "a,one,negativity,0.5,1,2,3,4\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse_trials_csv(header + "a,1,neutral,0.5,1,2,3,4\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse_trials_csv(header + "a,1,negativity,-2,1,2,3,4\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse_trials_csv(header + "a,1,negativity,0.5,1,2,3\n"); }) == ErrorCode::FormatError);
  CHECK(code_of([&] { parse_trials_csv("id,session,label,fs\n"); }) == ErrorCode::FormatError);
  CHECK(code_of([&] { parse_trials_csv(""); }) == ErrorCode::FormatError);
  CHECK(code_of([&] { parse_trials_csv(header + "a,9,negativity,0.5,1,2,3,4\n"); }) == ErrorCode::FormatError);
  CHECK(code_of([&] {
          parse_trials_csv(header + "a,1,negativity,0.5,1,2,3,4\nb,1,negativity,0.25,1,2,3,4\n");
        }) == ErrorCode::FormatError);
  CHECK(code_of([] { load_trials_csv(temp_path("does_not_exist.csv")); }) == ErrorCode::IoError);
  CHECK(code_of([] { save_trials_csv(TrialSet{}, "/nonexistent_dir/x/y.csv"); }) == ErrorCode::IoError);
}

TEST_CASE("find by id") {
  const TrialSet set = small_set(4, 16.0, 3);
  CHECK(set.find("t2") == 2);
  CHECK(code_of([&] { set.find("t9"); }) == ErrorCode::NotFound);
}

TEST_CASE("segment_phases") {
  for (auto [fs, base, active] : {std::tuple{256.0, 512u, 1536u}, std::tuple{128.0, 256u, 768u}}) {
    TrialRecord t;
    t.fs = fs;
    t.samples.resize(standard_length(fs));
    for (std::size_t i = 0; i < t.samples.size(); ++i) t.samples[i] = static_cast<double>(i);
    const PhaseViews v = segment_phases(t);
    CHECK(v.baseline.size() == base);
    CHECK(v.active.size() == active);
    std::vector<double> joined(v.baseline.begin(), v.baseline.end());
    joined.insert(joined.end(), v.active.begin(), v.active.end());
    CHECK(joined == t.samples);
  }
  TrialRecord odd;
  odd.samples.resize(100);
  CHECK(code_of([&] { segment_phases(odd); }) == ErrorCode::FormatError);
}

TEST_CASE("lowpass filter examples") {
  const double fs = 256.0;
  const std::size_t n = 2048;
  const FilterSpec spec;
  SUBCASE("constant signal unchanged") {
    const Signal y = lowpass_filter(Signal{std::vector<double>(n, -4.2), fs}, spec);
    for (double v : y.samples) CHECK(std::fabs(v + 4.2) <= 1e-9);
  }
  SUBCASE("2 Hz passes") {
    const Signal y = lowpass_filter(Signal{tone(n, fs, 2.0), fs}, spec);
    CHECK(y.samples.size() == n);
    CHECK(std::fabs(peak_abs(y.samples, 300, n - 300) - 1.0) <= 0.02);
  }
  SUBCASE("40 Hz is attenuated by 40 dB") {
    const Signal y = lowpass_filter(Signal{tone(n, fs, 40.0), fs}, spec);
    CHECK(peak_abs(y.samples, 300, n - 300) <= 0.01);
  }
  SUBCASE("zero phase") {
    const auto x = tone(n, fs, 3.0);
    const Signal y = lowpass_filter(Signal{x, fs}, spec);
    for (std::size_t i = 300; i < n - 300; ++i) CHECK(std::fabs(y.samples[i] - x[i]) < 0.02);
  }
  SUBCASE("linear trends pass exactly") {
    std::vector<double> ramp(n);
    for (std::size_t i = 0; i < n; ++i) ramp[i] = 0.01 * static_cast<double>(i) - 3.0;
    const Signal y = lowpass_filter(Signal{ramp, fs}, spec);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(y.samples[i] - ramp[i]) <= 1e-9);
  }
  SUBCASE("kernel has unit DC gain and is symmetric") {
    const auto h = design_lowpass(spec, fs);
    REQUIRE(h.size() == 257);
    double sum = 0.0;
    for (double v : h) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t i = 0; i < h.size(); ++i) CHECK(h[i] == h[h.size() - 1 - i]);
  }
}

TEST_CASE("lowpass filter is linear") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<double> x(1000), y(1000), mix(1000);
    const double a = g(rng), b = g(rng);
    for (std::size_t i = 0; i < 1000; ++i) {
      x[i] = g(rng);
      y[i] = g(rng);
      mix[i] = a * x[i] + b * y[i];
    }
    const auto fx = lowpass_filter(Signal{x, 256.0}, {}).samples;
    const auto fy = lowpass_filter(Signal{y, 256.0}, {}).samples;
    const auto fm = lowpass_filter(Signal{mix, 256.0}, {}).samples;
    for (std::size_t i = 0; i < 1000; ++i) CHECK(std::fabs(fm[i] - (a * fx[i] + b * fy[i])) <= 1e-9);
  }
}

TEST_CASE("filter validation") {
  CHECK(code_of([] { FilterSpec{128.0, 257}.validate(256.0); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { FilterSpec{0.0, 257}.validate(256.0); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { FilterSpec{10.0, 256}.validate(256.0); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { FilterSpec{10.0, 31}.validate(256.0); }) == ErrorCode::InvalidConfig);
  CHECK_NOTHROW(FilterSpec{10.0, 33}.validate(256.0));
  CHECK(code_of([] { lowpass_filter(Signal{std::vector<double>(100, 1.0), 16.0}, {}); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("synth_scp examples") {
  SUBCASE("noiseless classes sit at plus and minus the drift") {
    SynthConfig c;
    c.n_per_class = 4;
    c.noise_sigma = 0.0;
    c.alpha_amplitude = 0.0;
    c.drift_amplitude = 7.5;
    const TrialSet set = synth_scp(c);
    REQUIRE(set.size() == 8);
    for (const auto& t : set.trials) {
      const double want = t.label == Label::Negativity ? -7.5 : 7.5;
      CHECK(active_mean(t) == doctest::Approx(want).epsilon(1e-12));
      for (double v : segment_phases(t).baseline.first(384)) CHECK(v == 0.0);
    }
  }
  SUBCASE("layout") {
    const TrialSet set = synth_scp({});
    CHECK(set.size() == 200);
    CHECK(set.count(Label::Negativity) == 100);
    CHECK(set.trials[0].label == Label::Negativity);
    CHECK(set.trials[1].label == Label::Positivity);
    CHECK(set.trials[0].id == "trial_00001");
    CHECK(set.sample_count() == 2048);
    CHECK_NOTHROW(set.validate());
  }
  SUBCASE("default config is separable by a threshold") {
    CHECK(threshold_accuracy(synth_scp({})) >= 99.0);
  }
  SUBCASE("determinism") {
    SynthConfig c;
    c.n_per_class = 10;
    c.seed = 42;
    CHECK(synth_scp(c) == synth_scp(c));
    SynthConfig other = c;
    other.seed = 43;
    CHECK(!(synth_scp(c) == synth_scp(other)));
  }
  SUBCASE("invalid config") {
    SynthConfig c;
    c.n_per_class = 0;
    CHECK(code_of([&] { synth_scp(c); }) == ErrorCode::InvalidConfig);
    c = SynthConfig{};
    c.noise_sigma = -1.0;
    CHECK(code_of([&] { synth_scp(c); }) == ErrorCode::InvalidConfig);
  }
}

TEST_CASE("synth separability degrades as noise grows") {
  std::vector<double> acc;
  for (double sigma : {10.0, 100.0, 200.0, 400.0, 800.0}) {
    SynthConfig c;
    c.n_per_class = 500;
    c.noise_sigma = sigma;
    acc.push_back(threshold_accuracy(synth_scp(c)));
  }
  for (std::size_t i = 1; i < acc.size(); ++i) CHECK(acc[i] <= acc[i - 1]);
  CHECK(acc.front() > acc.back());
}

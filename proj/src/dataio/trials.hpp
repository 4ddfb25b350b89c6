#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/label.hpp"

namespace hhelm {

inline constexpr double kTrialSeconds = 8.0;
inline constexpr double kBaselineSeconds = 2.0;

struct TrialRecord {
  std::string id;
  int session = 1;
  Label label = Label::Negativity;
  double fs = 256.0;
  std::vector<double> samples;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct TrialSet {
  std::vector<TrialRecord> trials;
  double fs = 0.0;  // shared rate; 0 only for an empty set

  std::size_t size() const { return trials.size(); }
  std::size_t sample_count() const { return trials.empty() ? 0 : trials.front().samples.size(); }
  std::size_t count(Label l) const;
  /// Index of the trial with this id; throws NotFound.
  std::size_t find(std::string_view id) const;
  /// Homogeneous rate and length, valid ids and sessions; throws FormatError.
  void validate() const;

  friend bool operator==(const TrialSet&, const TrialSet&) = default;
};

/// Number of samples in a standard 8 s trial at this rate.
std::size_t standard_length(double fs);

struct PhaseViews {
  std::span<const double> baseline;  // [0, 2 s)
  std::span<const double> active;    // [2 s, 8 s)
};

/// Throws FormatError unless the trial has the standard 8 s length.
PhaseViews segment_phases(const TrialRecord& trial);

/// Header `trial_id,session,label,fs,s0,...,s{N-1}`, one trial per row.
/// Lines starting with '#' before the header are treated as comments.
TrialSet parse_trials_csv(std::string_view text);
TrialSet load_trials_csv(const std::string& path);
std::string format_trials_csv(const TrialSet& set, std::span<const std::string> comments = {});
void save_trials_csv(const TrialSet& set, const std::string& path,
                     std::span<const std::string> comments = {});

}  // namespace hhelm

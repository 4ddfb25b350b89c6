#include "dataio/trials.hpp"

#include <charconv>
#include <cmath>

#include "dataio/csv.hpp"

namespace hhelm {

namespace {

constexpr std::size_t kFixedColumns = 4;

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorCode::ParseError, "row " + std::to_string(line) + ": " + what);
}

}  // namespace

std::size_t TrialSet::count(Label l) const {
  std::size_t n = 0;
  for (const auto& t : trials) n += t.label == l ? 1 : 0;
  return n;
}

std::size_t TrialSet::find(std::string_view id) const {
  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (trials[i].id == id) return i;
  }
  fail(ErrorCode::NotFound, "no trial with id '" + std::string(id) + "'");
}

void TrialSet::validate() const {
  if (trials.empty()) return;
  if (!(fs > 0.0)) fail(ErrorCode::FormatError, "trial set sampling rate must be > 0");
  const std::size_t n = trials.front().samples.size();
  for (const auto& t : trials) {
    if (t.id.empty() || t.id.find_first_of(",\n\r#") != std::string::npos) {
      fail(ErrorCode::FormatError, "invalid trial id '" + t.id + "'");
    }
    if (t.session < 1 || t.session > 8) {
      fail(ErrorCode::FormatError, "trial '" + t.id + "' has session " + std::to_string(t.session));
    }
    if (t.fs != fs) fail(ErrorCode::FormatError, "trial '" + t.id + "' has a different sampling rate");
    if (t.samples.size() != n) fail(ErrorCode::FormatError, "trial '" + t.id + "' has a different length");
  }
}

std::size_t standard_length(double fs) {
  return static_cast<std::size_t>(std::llround(kTrialSeconds * fs));
}

PhaseViews segment_phases(const TrialRecord& trial) {
  const std::size_t n = standard_length(trial.fs);
  if (trial.samples.size() != n) {
    fail(ErrorCode::FormatError, "trial '" + trial.id + "' has " + std::to_string(trial.samples.size()) +
                                     " samples; a standard trial has " + std::to_string(n));
  }
  const auto split = static_cast<std::size_t>(std::llround(kBaselineSeconds * trial.fs));
  std::span<const double> all(trial.samples);
  return {all.first(split), all.subspan(split)};
}

TrialSet parse_trials_csv(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && (lines[i].empty() || lines[i].front() == '#')) ++i;
  if (i == lines.size()) fail(ErrorCode::FormatError, "missing header row");

  const auto header = split_fields(lines[i]);
  if (header.size() < kFixedColumns || header[0] != "trial_id" || header[1] != "session" ||
      header[2] != "label" || header[3] != "fs") {
    fail(ErrorCode::FormatError, "header must start with trial_id,session,label,fs");
  }
  for (std::size_t c = kFixedColumns; c < header.size(); ++c) {
    if (header[c] != "s" + std::to_string(c - kFixedColumns)) {
      fail(ErrorCode::FormatError, "unexpected header column '" + std::string(header[c]) + "'");
    }
  }
  const std::size_t sample_count = header.size() - kFixedColumns;

  TrialSet set;
  for (++i; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty()) continue;
    const auto fields = split_fields(lines[i]);
    if (fields.size() != header.size()) {
      fail(ErrorCode::FormatError, "row " + std::to_string(line_no) + " has " +
                                       std::to_string(fields.size()) + " fields, header has " +
                                       std::to_string(header.size()));
    }
    TrialRecord t;
    t.id = std::string(fields[0]);
    if (t.id.empty()) parse_fail(line_no, "empty trial id");
    const auto sess = fields[1];
    const auto res = std::from_chars(sess.data(), sess.data() + sess.size(), t.session);
    if (res.ec != std::errc() || res.ptr != sess.data() + sess.size()) {
      parse_fail(line_no, "session '" + std::string(sess) + "' is not an integer");
    }
    const auto label = parse_label(fields[2]);
    if (!label) parse_fail(line_no, "unknown label '" + std::string(fields[2]) + "'");
    t.label = *label;
    const auto fs = parse_double(fields[3]);
    if (!fs || !(*fs > 0.0) || !std::isfinite(*fs)) parse_fail(line_no, "invalid fs '" + std::string(fields[3]) + "'");
    t.fs = *fs;
    t.samples.resize(sample_count);
    for (std::size_t c = 0; c < sample_count; ++c) {
      const auto v = parse_double(fields[kFixedColumns + c]);
      if (!v || !std::isfinite(*v)) {
        parse_fail(line_no, "sample s" + std::to_string(c) + " = '" +
                                std::string(fields[kFixedColumns + c]) + "' is not a finite number");
      }
      t.samples[c] = *v;
    }
    if (set.trials.empty()) set.fs = t.fs;
    set.trials.push_back(std::move(t));
  }
  set.validate();
  return set;
}

TrialSet load_trials_csv(const std::string& path) { return parse_trials_csv(read_file(path)); }

std::string format_trials_csv(const TrialSet& set, std::span<const std::string> comments) {
  set.validate();
  std::string out;
  for (const auto& c : comments) {
    out += "# ";
    out += c;
    out += '\n';
  }
  out += "trial_id,session,label,fs";
  for (std::size_t c = 0; c < set.sample_count(); ++c) {
    out += ",s";
    out += std::to_string(c);
  }
  out += '\n';
  for (const auto& t : set.trials) {
    out += t.id;
    out += ',';
    out += std::to_string(t.session);
    out += ',';
    out += label_name(t.label);
    out += ',';
    append_double(out, t.fs);
    for (double v : t.samples) {
      out += ',';
      append_double(out, v);
    }
    out += '\n';
  }
  return out;
}

void save_trials_csv(const TrialSet& set, const std::string& path, std::span<const std::string> comments) {
  write_file_atomic(path, format_trials_csv(set, comments));
}

}  // namespace hhelm

#pragma once

// Time-series ingestion: `date,NODE1,NODE2,...` CSV files, log-prices and
// single-step relative changes.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "graph_core.hpp"

namespace smoothnet {

/// Malformed or unreadable input file.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Sample {
  std::string timestamp;
  Vector values;
};

struct SignalStream {
  std::vector<std::string> node_names;
  std::vector<Sample> samples;

  std::size_t n_nodes() const noexcept { return node_names.size(); }
  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }

  std::vector<Vector> signals() const {
    std::vector<Vector> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.values);
    return out;
  }
};

/// Shortest text that parses back to exactly `v`.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

inline bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

/// Timestamp order: numeric when both parse as numbers (sample indices),
/// lexicographic otherwise (ISO-8601 dates).
inline bool timestamp_less(std::string_view a, std::string_view b) {
  double x = 0.0;
  double y = 0.0;
  if (parse_double(a, x) && parse_double(b, y)) return x < y;
  return a < b;
}

}  // namespace detail

struct LoadReport {
  std::size_t dropped_rows = 0;
  std::vector<std::size_t> dropped_lines;  // 1-based file line numbers
};

/// Reads a header row `label,NODE1,...` followed by `timestamp,v1,...` rows.
/// Rows with a missing or non-numeric cell are dropped with a warning on
/// std::clog. Blank lines are skipped.
inline SignalStream load_csv(std::istream& in, LoadReport* report = nullptr) {
  std::string line;
  std::size_t line_no = 0;
  SignalStream stream;
  bool have_header = false;
  LoadReport local;

  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv_line(line);
    if (!have_header) {
      if (cells.size() < 2) throw input_error("CSV header needs a timestamp column and at least one node column");
      for (std::size_t c = 1; c < cells.size(); ++c) {
        if (cells[c].empty()) throw input_error("CSV header has an empty node name in column " + std::to_string(c + 1));
        stream.node_names.emplace_back(cells[c]);
      }
      have_header = true;
      continue;
    }
    bool ok = cells.size() == stream.n_nodes() + 1 && !cells[0].empty();
    Vector values(static_cast<Eigen::Index>(stream.n_nodes()));
    for (std::size_t c = 1; ok && c < cells.size(); ++c) {
      ok = detail::parse_double(cells[c], values[static_cast<Eigen::Index>(c - 1)]);
    }
    if (!ok) {
      ++local.dropped_rows;
      local.dropped_lines.push_back(line_no);
      std::clog << "warning: dropping CSV line " << line_no << " (missing or non-numeric value)\n";
      continue;
    }
    std::string ts(cells[0]);
    if (!stream.samples.empty() && !detail::timestamp_less(stream.samples.back().timestamp, ts)) {
      throw input_error("CSV timestamps are not strictly increasing at line " + std::to_string(line_no));
    }
    stream.samples.push_back({std::move(ts), std::move(values)});
  }
  if (!have_header) throw input_error("CSV input is empty");
  if (local.dropped_rows > 0) {
    std::clog << "warning: dropped " << local.dropped_rows << " CSV row(s)\n";
  }
  if (report) *report = std::move(local);
  return stream;
}

inline SignalStream load_csv(const std::string& path, LoadReport* report = nullptr) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  return load_csv(in, report);
}

inline void write_csv(std::ostream& out, const SignalStream& s, std::string_view time_label = "date") {
  out << time_label;
  for (const auto& name : s.node_names) out << ',' << name;
  out << '\n';
  for (const auto& sample : s.samples) {
    out << sample.timestamp;
    for (Eigen::Index i = 0; i < sample.values.size(); ++i) out << ',' << format_double(sample.values[i]);
    out << '\n';
  }
}

inline void write_csv(const std::string& path, const SignalStream& s, std::string_view time_label = "date") {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write " + path);
  write_csv(out, s, time_label);
}

/// Entry-wise natural log; every value must be positive.
inline SignalStream log_transform(const SignalStream& s) {
  SignalStream out{s.node_names, {}};
  out.samples.reserve(s.size());
  for (const auto& sample : s.samples) {
    for (Eigen::Index i = 0; i < sample.values.size(); ++i) {
      if (!(sample.values[i] > 0.0)) {
        throw std::invalid_argument("log_transform: non-positive value " + format_double(sample.values[i]) +
                                    " at " + sample.timestamp + ", column " +
                                    s.node_names[static_cast<std::size_t>(i)]);
      }
    }
    out.samples.push_back({sample.timestamp, sample.values.array().log().matrix()});
  }
  return out;
}

enum class ReturnKind { simple, log };

/// Single-step relative changes (p_t - p_{t-1}) / p_{t-1}, or log(p_t / p_{t-1})
/// for ReturnKind::log. Output sample t carries the timestamp of input t;
/// the stream loses its first sample.
inline SignalStream discrete_gradient(const SignalStream& s, ReturnKind kind = ReturnKind::simple) {
  if (s.size() < 2) throw std::invalid_argument("discrete_gradient: need at least two samples");
  SignalStream out{s.node_names, {}};
  out.samples.reserve(s.size() - 1);
  for (std::size_t t = 1; t < s.size(); ++t) {
    const Vector& prev = s.samples[t - 1].values;
    const Vector& cur = s.samples[t].values;
    Vector g(cur.size());
    for (Eigen::Index i = 0; i < cur.size(); ++i) {
      if (prev[i] == 0.0) {
        throw std::invalid_argument("discrete_gradient: zero value at " + s.samples[t - 1].timestamp +
                                    ", column " + s.node_names[static_cast<std::size_t>(i)]);
      }
      if (kind == ReturnKind::log) {
        if (!(cur[i] / prev[i] > 0.0)) {
          throw std::invalid_argument("discrete_gradient: log return of a sign change at " + s.samples[t].timestamp);
        }
        g[i] = std::log(cur[i] / prev[i]);
      } else {
        g[i] = (cur[i] - prev[i]) / prev[i];
      }
    }
    out.samples.push_back({s.samples[t].timestamp, std::move(g)});
  }
  return out;
}

}  // namespace smoothnet

#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/materials.hpp"
#include "casimir/stats.hpp"

// File ingestion and emission.  CSV files use `#` comment lines and an
// optional header; doubles are serialized with shortest round-trip
// formatting so emitted files re-ingest bit-identically.  File writes go
// through a temporary file plus rename.

namespace casimir::io {

// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ingest_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw ingest_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw ingest_error("rename to " + path + " failed: " + ec.message());
}

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return fields;
}

inline bool is_comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

inline double parse_field(const std::string& s, const std::string& context) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ingest_error("malformed number '" + s + "' in " + context);
  }
}

inline bool looks_like_header(const std::vector<std::string>& fields) {
  for (const auto& f : fields) {
    try {
      std::size_t pos = 0;
      (void)std::stod(f, &pos);
      if (pos == f.size()) return false;
    } catch (const std::exception&) {
    }
  }
  return true;
}

// Numeric rows of a CSV file, skipping comments and one optional header.
inline std::vector<std::vector<double>> load_numeric_csv(const std::string& path,
                                                         std::size_t min_cols,
                                                         std::size_t max_cols) {
  std::ifstream in(path);
  if (!in) throw ingest_error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first_content = true;
  while (std::getline(in, line)) {
    if (is_comment_or_blank(line)) continue;
    auto fields = split_csv_row(line);
    if (first_content && looks_like_header(fields)) {
      first_content = false;
      continue;
    }
    first_content = false;
    if (fields.size() < min_cols || fields.size() > max_cols) {
      throw ingest_error(path + ": expected " + std::to_string(min_cols) + ".." +
                         std::to_string(max_cols) + " columns, got " +
                         std::to_string(fields.size()));
    }
    std::vector<double> row;
    for (const auto& f : fields) row.push_back(parse_field(f, path));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ingest_error(path + ": no data rows");
  return rows;
}

}  // namespace detail

// Measurement series: a_nm, mean, d_rand, d_syst, s_mean[, d_sep_nm].
inline stats::MeasurementSeries load_measurement_series(const std::string& path) {
  stats::MeasurementSeries series;
  for (const auto& row : detail::load_numeric_csv(path, 5, 6)) {
    stats::MeasurementPoint p;
    p.separation_nm = row[0];
    p.mean = row[1];
    p.random_error = row[2];
    p.systematic_error = row[3];
    p.mean_variance = row[4];
    if (row.size() > 5) p.separation_error_nm = row[5];
    p.validate();
    series.push_back(p);
  }
  return series;
}

// Theory band: a_nm, lo, hi.
inline stats::TheoryBand load_theory_band(const std::string& path) {
  stats::TheoryBand band;
  for (const auto& row : detail::load_numeric_csv(path, 3, 3)) {
    band.separation_nm.push_back(row[0]);
    band.lower.push_back(row[1]);
    band.upper.push_back(row[2]);
  }
  band.validate();
  return band;
}

// Optical data: omega_eV, Im eps.  The Drude tail is attached by the caller.
inline std::vector<materials::OpticalDataTable::Sample> load_optical_samples(
    const std::string& path) {
  std::vector<materials::OpticalDataTable::Sample> samples;
  for (const auto& row : detail::load_numeric_csv(path, 2, 2)) {
    samples.push_back({row[0], row[1]});
  }
  return samples;
}

// CSV emission: header plus rows of shortest-round-trip doubles.
inline std::string csv_document(const std::string& header,
                                const std::vector<std::vector<double>>& rows) {
  std::string out = header + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace casimir::io

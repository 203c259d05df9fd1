#pragma once

// CSV ingestion/export.  Comma-separated, optional single header row,
// decimal-point reals; y is the last column unless a separate y file is
// given.  Export uses 17 significant digits so round-trips are bit-exact.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qrr/errors.hpp"
#include "qrr/ridge.hpp"

namespace qrr::io {

using numkit::RMatrix;
using numkit::RVector;

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline bool parse_cell(const std::string& cell, double* out) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0') || errno == ERANGE) return false;
  if (!std::isfinite(v)) return false;
  *out = v;
  return true;
}

inline std::vector<std::vector<double>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    std::vector<double> row(cells.size());
    bool ok = true;
    int bad_col = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_cell(cells[c], &row[c])) {
        ok = false;
        bad_col = static_cast<int>(c) + 1;
        break;
      }
    }
    if (!ok) {
      if (header_allowed) {  // a single leading header row is tolerated
        header_allowed = false;
        continue;
      }
      throw input_error(path + ": non-numeric cell at line " + std::to_string(lineno) +
                        ", column " + std::to_string(bad_col));
    }
    header_allowed = false;
    if (!rows.empty() && row.size() != rows.front().size())
      throw input_error(path + ": ragged row at line " + std::to_string(lineno) +
                        " (expected " + std::to_string(rows.front().size()) + " columns)");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw input_error(path + ": no numeric rows");
  return rows;
}

}  // namespace detail

/// Dataset from CSV.  Without y_path the last column is y; with it the whole
/// body is X and y_path holds one value per line.
inline ridge::Dataset ingest_csv(const std::string& path, const std::string& y_path = "") {
  const auto rows = detail::read_table(path);
  const std::size_t n = rows.size();
  if (n < 2) throw input_error(path + ": need at least 2 data rows");
  RVector y(n);
  std::size_t m = rows.front().size();
  if (y_path.empty()) {
    if (m < 2) throw input_error(path + ": need at least one feature column plus y");
    --m;
    for (std::size_t i = 0; i < n; ++i) y(i) = rows[i][m];
  } else {
    const auto yrows = detail::read_table(y_path);
    if (yrows.size() != n)
      throw input_error(y_path + ": y row count does not match the design matrix");
    for (std::size_t i = 0; i < n; ++i) {
      if (yrows[i].size() != 1) throw input_error(y_path + ": expected one value per line");
      y(i) = yrows[i][0];
    }
  }
  RMatrix x(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) x(i, j) = rows[i][j];
  return ridge::Dataset(x, y);
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Writes X with y appended as the last column; bit-exact on re-ingest.
inline void export_csv(const ridge::Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write '" + path + "'");
  for (Eigen::Index i = 0; i < d.n(); ++i) {
    for (Eigen::Index j = 0; j < d.m(); ++j) out << format_double(d.X(i, j)) << ',';
    out << format_double(d.y(i)) << '\n';
  }
  if (!out) throw input_error("write failed for '" + path + "'");
}

}  // namespace qrr::io

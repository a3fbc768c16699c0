#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "spgomp/errors.hpp"
#include "spgomp/matrix.hpp"

// Plain numeric CSV, no header row, no quoting. Parsing and formatting go
// through std::from_chars / std::to_chars so the current locale can never
// change what a file means. Values are written with the shortest
// representation that round-trips.

namespace spgomp::linalg {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline double parse_field(std::string_view field, std::size_t line_no) {
  field = trim(field);
  double value = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || field.empty())
    throw CsvFormatError("line " + std::to_string(line_no) + ": bad field '" +
                         std::string(field) + "'");
  if (!std::isfinite(value))
    throw CsvFormatError("line " + std::to_string(line_no) + ": non-finite field");
  return value;
}

inline void append_value(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace detail

inline DenseMatrix read_matrix_csv(std::istream& in) {
  DenseMatrix a;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = detail::trim(line);
    if (rest.empty()) continue;
    std::vector<double> row;
    for (;;) {
      auto comma = rest.find(',');
      row.push_back(detail::parse_field(rest.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (a.cols == 0) a.cols = row.size();
    if (row.size() != a.cols)
      throw CsvFormatError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(a.cols) + " fields, got " + std::to_string(row.size()));
    a.data.insert(a.data.end(), row.begin(), row.end());
    ++a.rows;
  }
  if (a.rows == 0) throw CsvFormatError("empty input");
  return a;
}

inline DenseMatrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return read_matrix_csv(in);
  } catch (const CsvFormatError& e) {
    throw CsvFormatError(path + ": " + e.what());
  }
}

// A vector file is a matrix with a single column or a single row.
inline DenseVector read_vector_csv(std::istream& in) {
  DenseMatrix a = read_matrix_csv(in);
  if (a.cols != 1 && a.rows != 1)
    throw CsvFormatError("expected a single row or column, got " + std::to_string(a.rows) + "x" +
                         std::to_string(a.cols));
  return a.data;
}

inline DenseVector read_vector_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return read_vector_csv(in);
  } catch (const CsvFormatError& e) {
    throw CsvFormatError(path + ": " + e.what());
  }
}

inline void write_matrix_csv(std::ostream& out, const DenseMatrix& a) {
  std::string buf;
  for (std::size_t i = 0; i < a.rows; ++i) {
    buf.clear();
    for (std::size_t j = 0; j < a.cols; ++j) {
      if (j) buf.push_back(',');
      detail::append_value(buf, a(i, j));
    }
    buf.push_back('\n');
    out << buf;
  }
}

inline void write_matrix_csv(const std::string& path, const DenseMatrix& a) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_matrix_csv(out, a);
}

// Written one value per line, so the file reads back as an m x 1 matrix.
inline void write_vector_csv(std::ostream& out, const DenseVector& v) {
  std::string buf;
  for (double x : v) {
    detail::append_value(buf, x);
    buf.push_back('\n');
  }
  out << buf;
}

inline void write_vector_csv(const std::string& path, const DenseVector& v) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_vector_csv(out, v);
}

}  // namespace spgomp::linalg

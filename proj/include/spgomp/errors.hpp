#pragma once

#include <stdexcept>
#include <string>

namespace spgomp {

// Shape or length disagreement between operands.
struct DimensionError : std::invalid_argument {
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// A column to be admitted lies (numerically) in the span of the columns
// admitted so far. Callers stop or skip; recovery loops treat this as a
// graceful stop, not a failure of the library.
struct RankDeficientError : std::runtime_error {
  explicit RankDeficientError(const std::string& what) : std::runtime_error(what) {}
};

// Brute-force support enumeration would exceed the hard cap.
struct EnumerationLimitError : std::runtime_error {
  explicit EnumerationLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed CSV input (ragged rows, unparsable or non-finite fields).
struct CsvFormatError : std::runtime_error {
  explicit CsvFormatError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spgomp

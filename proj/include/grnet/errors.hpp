#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grnet {

/// Base class for every error thrown by this library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two sequences that must have equal length do not.
class length_mismatch : public error {
public:
  using error::error;
};

/// A vector or matrix column is numerically constant where variation is required.
class zero_variance : public error {
public:
  using error::error;
};

/// The regression target appears in its own parent list.
class target_in_parents : public error {
public:
  using error::error;
};

/// The search target appears in its own candidate list.
class target_in_candidates : public error {
public:
  using error::error;
};

/// A learner was asked to pick parents where none can exist.
class no_candidates : public error {
public:
  using error::error;
};

/// A gene reference does not resolve inside the matrix at hand.
class unknown_gene : public error {
public:
  using error::error;
};

/// Structured input (CSV, JSON) could not be decoded.
/// Coordinates are 1-based file positions; (0, 0) means "no position".
class parse_error : public error {
public:
  parse_error(std::size_t row, std::size_t column, const std::string& what_arg)
      : error(row == 0 && column == 0
                  ? "parse error: " + what_arg
                  : "parse error at row " + std::to_string(row) + ", column " +
                        std::to_string(column) + ": " + what_arg),
        row_(row),
        column_(column) {}

  explicit parse_error(const std::string& what_arg) : parse_error(0, 0, what_arg) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t row_;
  std::size_t column_;
};

/// A structurally loaded matrix violates a domain invariant.
class validation_error : public error {
public:
  using error::error;
};

/// The input held no data at all.
class empty_input : public error {
public:
  using error::error;
};

}  // namespace grnet

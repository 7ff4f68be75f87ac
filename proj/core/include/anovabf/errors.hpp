#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anovabf {

/// Structurally valid input on which the requested statistic is undefined
/// (e.g. zero residual variance, so no F ratio exists).
class degenerate_data_error : public std::runtime_error {
 public:
  explicit degenerate_data_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// Summary-string rejection. `offset` is the 1-based byte position of the
/// offending input byte; `expected` names the token the grammar wanted there.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t offset, std::string expected, const std::string& what)
      : std::runtime_error(what),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

/// Batch CSV header problem: a required column is missing or duplicated.
class schema_error : public std::runtime_error {
 public:
  schema_error(std::string column, const std::string& what)
      : std::runtime_error(what), column_(std::move(column)) {}

  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

}  // namespace anovabf

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsh {

/// Operands live over different alphabets (or the wrong one for an operation).
struct alphabet_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input outside the domain of an evaluator or identity (e.g. a word not in h^0).
struct not_admissible : std::domain_error {
  using std::domain_error::domain_error;
};

struct not_decomposable : std::domain_error {
  using std::domain_error::domain_error;
};

struct unknown_name : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct missing_entry : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Syntax error with the byte offset of the offending token and what the
/// parser would have accepted there.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::string message, std::size_t offset,
              std::vector<std::string> expected = {})
      : std::runtime_error(std::move(message)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace qsh

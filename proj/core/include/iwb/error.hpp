#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace iwb {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Malformed input sequent or proof, or a rule applied where it has no instance.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A split proof tree whose split annotation does not propagate through a rule.
class InvalidSplit : public Error {
 public:
  using Error::Error;
};

// Rule that the extraction procedure has no case for (e.g. unrestricted cut).
class UnsupportedRule : public Error {
 public:
  using Error::Error;
};

// The requested combination of logic, calculus and mode is not offered.
class UnsupportedMode : public Error {
 public:
  using Error::Error;
};

// An extracted interpolant failed its own verification.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

// Rule-table text with a metavariable used at the wrong kind.
class KindError : public Error {
 public:
  using Error::Error;
};

}  // namespace iwb

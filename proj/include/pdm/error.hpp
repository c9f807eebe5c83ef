#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdm {

/// Base for every error raised by the library. The CLI maps subclasses onto
/// exit codes through `exit_code()`.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 1; }
};

/// Malformed formula, sequent, rules file or JSON document.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t offset, std::string expected = {})
      : Error(format(message, offset, expected)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }
  int exit_code() const override { return 2; }

 private:
  static std::string format(const std::string& message, std::size_t offset,
                            const std::string& expected) {
    std::string out = message + " at byte " + std::to_string(offset);
    if (!expected.empty()) out += " (expected " + expected + ")";
    return out;
  }

  std::size_t offset_;
  std::string expected_;
};

/// Valuation is not total on the atoms of the evaluated formula.
class MissingAtom : public Error {
 public:
  explicit MissingAtom(const std::string& name)
      : Error("valuation has no value for atom '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Input violates a structural precondition (bad identifier, duplicate rule, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

/// Resource bounds: CNF clause limit, truth-table atom limit, reduction budget.
class ResourceError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

class SizeLimit : public ResourceError {
 public:
  explicit SizeLimit(std::size_t limit)
      : ResourceError("clausal form exceeds " + std::to_string(limit) + " clauses") {}
};

class TooManyAtoms : public ResourceError {
 public:
  TooManyAtoms(std::size_t count, std::size_t limit)
      : ResourceError(std::to_string(count) + " atoms exceed the exhaustive bound of " +
                      std::to_string(limit)) {}
};

/// The theory handed to the compiler has no model.
class Inconsistent : public Error {
 public:
  Inconsistent() : Error("theory is inconsistent: no model of its clausal form") {}
};

}  // namespace pdm

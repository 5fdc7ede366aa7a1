#pragma once

// Exception hierarchy shared by every module. Each class maps one-to-one to a
// named failure of a workbench operation, so callers (the CLI in particular)
// can branch on the dynamic type.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace g0wb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition that is not one of the named domain errors below.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class NotCoprime : public Error {
 public:
  NotCoprime(std::int64_t m, std::int64_t n)
      : Error("gcd(" + std::to_string(m) + ", " + std::to_string(n) + ") != 1") {}
};

class NonIntegralInput : public Error {
 public:
  using Error::Error;
};

class InsufficientTruncation : public Error {
 public:
  // `required` is the truncation (in whole q-exponents) the caller must supply,
  // when the operation can compute it.
  InsufficientTruncation(const std::string& what, std::optional<std::int64_t> required = {})
      : Error(what), required_(required) {}
  std::optional<std::int64_t> required() const { return required_; }

 private:
  std::optional<std::int64_t> required_;
};

// A failure located at a specific q-exponent (numerator over denom) with the
// coefficient that should have vanished. Used by the modeq build path.
class LocatedFailure : public Error {
 public:
  LocatedFailure(const std::string& what, std::int64_t num, std::int64_t den, std::string actual)
      : Error(what), num_(num), den_(den), actual_(std::move(actual)) {}
  std::int64_t exponent_num() const { return num_; }
  std::int64_t exponent_den() const { return den_; }
  const std::string& actual() const { return actual_; }

 private:
  std::int64_t num_;
  std::int64_t den_;
  std::string actual_;
};

class NotInvariant : public LocatedFailure {
 public:
  using LocatedFailure::LocatedFailure;
};

class ExpressFailure : public LocatedFailure {
 public:
  using LocatedFailure::LocatedFailure;
};

class BootstrapStalled : public Error {
 public:
  using Error::Error;
};

class InconsistentSeries : public Error {
 public:
  using Error::Error;
};

class InsufficientSeed : public Error {
 public:
  using Error::Error;
};

class NotUnimodular : public Error {
 public:
  NotUnimodular() : Error("matrix determinant is not 1") {}
};

class MaslovUndefined : public Error {
 public:
  MaslovUndefined() : Error("Maslov residue is 2 mod 4") {}
};

class RequiresPositiveC : public Error {
 public:
  RequiresPositiveC() : Error("multiplier formula requires c > 0") {}
};

class NonConvergent : public Error {
 public:
  using Error::Error;
};

class CorruptCorpus : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

}  // namespace g0wb

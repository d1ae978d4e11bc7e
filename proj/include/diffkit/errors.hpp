#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace diffkit {

enum class ErrorKind {
  Usage,
  Commutation,
  DivisionByZero,
  PrecisionLoss,
  PrecisionSemanticsRequired,
  NotAUnit,
  ConstantPolynomial,
  NotAutoreduced,
  OrderExceeded,
  PoleError,
  UndefinedGenerator,
  InconsistentSystem,
  MissingInitial,
  NotExplicit,
  ResourceLimit,
  DimensionMismatch,
  WitnessNotOnX,
  IntegrabilityError,
  SyntaxError,
  ArityError,
};

std::string_view error_kind_name(ErrorKind kind);

/// Base of every library error. `kind()` is what the CLI maps to exit codes.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// A derivation table whose brackets do not vanish on a generator.
class CommutationError : public Error {
public:
  CommutationError(std::size_t i, std::size_t j, std::string generator, std::string value)
      : Error(ErrorKind::Commutation,
              "derivations " + std::to_string(i) + " and " + std::to_string(j) +
                  " do not commute on " + generator + ": bracket = " + value),
        i_(i), j_(j), generator_(std::move(generator)), value_(std::move(value)) {}

  std::size_t first() const noexcept { return i_; }
  std::size_t second() const noexcept { return j_; }
  const std::string& generator() const noexcept { return generator_; }
  const std::string& value() const noexcept { return value_; }

private:
  std::size_t i_, j_;
  std::string generator_, value_;
};

/// Two derivation paths produce different values for the same jet coordinate.
class InconsistentSystem : public Error {
public:
  InconsistentSystem(std::string witness, std::string first, std::string second)
      : Error(ErrorKind::InconsistentSystem,
              "inconsistent values for " + witness + ": " + first + " vs " + second),
        witness_(std::move(witness)), first_(std::move(first)), second_(std::move(second)) {}

  const std::string& witness() const noexcept { return witness_; }
  const std::string& first_value() const noexcept { return first_; }
  const std::string& second_value() const noexcept { return second_; }

private:
  std::string witness_, first_, second_;
};

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorKind::SyntaxError, message + " at line " + std::to_string(line) +
                                          ", column " + std::to_string(column)),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_, column_;
};

}  // namespace diffkit

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracfront {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A theorem hypothesis the requested quantity depends on does not hold.
class HypothesisViolation : public Error {
 public:
  HypothesisViolation(const std::string& what, double margin)
      : Error(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

// Series or quadrature failed to reach the requested tolerance.
class EvaluationFailure : public Error {
 public:
  EvaluationFailure(const std::string& what, double partial, std::size_t terms)
      : Error(what), partial_(partial), terms_(terms) {}
  double partial_value() const noexcept { return partial_; }
  std::size_t terms() const noexcept { return terms_; }

 private:
  double partial_;
  std::size_t terms_;
};

// The lattice cannot resolve the requested quantity.
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, double suggested_dx)
      : Error(what), suggested_dx_(suggested_dx) {}
  double suggested_dx() const noexcept { return suggested_dx_; }

 private:
  double suggested_dx_;
};

// The requested evaluation route does not apply to these parameters.
class UnsupportedRoute : public Error {
 public:
  using Error::Error;
};

// The inputs make the result trivial or undefined (for example Lip = 0).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// A statistical estimate could not be formed from the data supplied.
class EstimationError : public Error {
 public:
  using Error::Error;
};

// A simulated field became non-finite.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double time, std::size_t replicate)
      : Error(what), time_(time), replicate_(replicate) {}
  double time() const noexcept { return time_; }
  std::size_t replicate() const noexcept { return replicate_; }

 private:
  double time_;
  std::size_t replicate_;
};

// Malformed config, CSV or JSON input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::string field)
      : Error(what), line_(line), field_(std::move(field)) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace fracfront

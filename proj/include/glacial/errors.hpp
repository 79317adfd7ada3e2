#pragma once

#include <stdexcept>
#include <string>

namespace glacial {

// Base class for every failure this library can raise.  name() returns a
// stable machine-readable identifier (used by the CLI for exit reporting);
// what() carries the human-readable detail.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& detail) : std::runtime_error(detail) {}
  [[nodiscard]] virtual const char* name() const noexcept { return "error"; }
};

// A constructor argument violates a documented domain constraint.
class invalid_parameter : public error {
 public:
  using error::error;
  [[nodiscard]] const char* name() const noexcept override { return "invalid_parameter"; }
};

// A matrix handed to the Hopf eigendata routine is not a linear center
// (trace not zero within tolerance, or determinant not positive).
class not_a_hopf_point : public error {
 public:
  using error::error;
  [[nodiscard]] const char* name() const noexcept override { return "not_a_hopf_point"; }
};

// A state handed to classify() is not an equilibrium within tolerance.
class not_an_equilibrium : public error {
 public:
  using error::error;
  [[nodiscard]] const char* name() const noexcept override { return "not_an_equilibrium"; }
};

// Manifold shooting asked for eigendirections of an equilibrium that is not
// a saddle (needs real eigenvalues of opposite sign).
class not_a_saddle : public error {
 public:
  using error::error;
  [[nodiscard]] const char* name() const noexcept override { return "not_a_saddle"; }
};

// No qualifying section crossing was found within the time/step budget.
class no_crossing : public error {
 public:
  using error::error;
  [[nodiscard]] const char* name() const noexcept override { return "no_crossing"; }
};

// A bisection search was started on a bracket whose endpoint values do not
// straddle zero.
class no_sign_change : public error {
 public:
  using error::error;
  [[nodiscard]] const char* name() const noexcept override { return "no_sign_change"; }
};

// The displacement map had no fixed point inside the requested radius bracket.
class no_cycle_in_bracket : public error {
 public:
  using error::error;
  [[nodiscard]] const char* name() const noexcept override { return "no_cycle_in_bracket"; }
};

// A sampling request with an empty or inverted range.
class empty_range : public error {
 public:
  using error::error;
  [[nodiscard]] const char* name() const noexcept override { return "empty_range"; }
};

// Quadrature could not reach the requested tolerance within its budget.
class quadrature_failure : public error {
 public:
  using error::error;
  [[nodiscard]] const char* name() const noexcept override { return "quadrature_failure"; }
};

// An integration that had to succeed (inside a search) stopped early.
class integration_failure : public error {
 public:
  using error::error;
  [[nodiscard]] const char* name() const noexcept override { return "integration_failure"; }
};

}  // namespace glacial

#pragma once

#include <stdexcept>
#include <string>

namespace quadwalk {

// Library error hierarchy. Each concrete type maps to one structured CLI
// error code.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
  virtual const char* code() const { return "error"; }
};

struct invalid_field_error : error {
  using error::error;
  const char* code() const override { return "invalid-field"; }
};

struct rational_input_error : error {
  using error::error;
  const char* code() const override { return "rational-input"; }
};

struct invalid_discriminant_error : error {
  using error::error;
  const char* code() const override { return "invalid-discriminant"; }
};

struct invalid_matrix_error : error {
  using error::error;
  const char* code() const override { return "invalid-matrix"; }
};

struct domain_error : error {
  using error::error;
  const char* code() const override { return "domain"; }
};

struct precondition_error : error {
  using error::error;
  const char* code() const override { return "precondition"; }
};

struct parse_error : error {
  using error::error;
  const char* code() const override { return "parse"; }
};

struct overflow_guard_error : error {
  using error::error;
  const char* code() const override { return "overflow-guard"; }
};

}  // namespace quadwalk

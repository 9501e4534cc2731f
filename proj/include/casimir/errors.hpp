#pragma once

#include <stdexcept>
#include <string>

// Error taxonomy shared by all modules.  The CLI maps these onto process
// exit codes: config_error -> 2, ingest_error -> 3, convergence_error -> 4,
// invariant_error -> 5.

namespace casimir {

// A model was asked for a value outside its mathematical domain
// (e.g. a permittivity with a pole evaluated at zero frequency).
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Signal that the caller should use the analytic zero-frequency limit
// instead of evaluating the model at xi = 0.
class zero_frequency_error : public domain_error {
 public:
  explicit zero_frequency_error(const std::string& what) : domain_error(what) {}
};

// A mode sum would exceed its configured term budget.
class budget_exceeded_error : public std::runtime_error {
 public:
  budget_exceeded_error(const std::string& what, long long budget)
      : std::runtime_error(what), budget_(budget) {}
  long long budget() const { return budget_; }

 private:
  long long budget_;
};

// A quadrature, series or extrapolation failed to reach its tolerance.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Bad user-supplied configuration (CLI flags, config files).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data (CSV tables, measurement series).
class ingest_error : public std::runtime_error {
 public:
  explicit ingest_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency check failed.
class invariant_error : public std::logic_error {
 public:
  explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace casimir

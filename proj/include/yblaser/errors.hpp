#pragma once

#include <stdexcept>
#include <string>

namespace yblaser {

// Invalid physical parameters or violated preconditions.
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Solver failures: singular systems, refinement non-convergence, diverged
// integrations.  The message carries the diagnostics (iterates, residuals).
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A bisection bracket that does not straddle the lasing boundary.
struct no_threshold_error : numerical_error {
  explicit no_threshold_error(const std::string& msg) : numerical_error(msg) {}
};

// Malformed configuration input; carries line numbers where known.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace yblaser

#pragma once

#include <atomic>
#include <iostream>
#include <stdexcept>
#include <string>

namespace besselw {

/// Malformed user input: rational literals, seed lists, flag values.
class parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A construction was requested for a seed set that failed certification.
class inadmissible_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An integral on the half-line does not converge.
class divergence_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The numeric eigensolver failed or returned inconsistent data.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using warning_handler = void (*)(const std::string&);

namespace detail {
inline void default_warning(const std::string& msg) {
  std::cerr << "besselw: warning: " << msg << '\n';
}
inline std::atomic<warning_handler>& warning_slot() {
  static std::atomic<warning_handler> slot{&default_warning};
  return slot;
}
}  // namespace detail

/// Installs a process-wide sink for non-fatal diagnostics and returns the previous one.
inline warning_handler set_warning_handler(warning_handler h) {
  return detail::warning_slot().exchange(h ? h : &detail::default_warning);
}

inline void warn(const std::string& msg) { detail::warning_slot().load()(msg); }

}  // namespace besselw

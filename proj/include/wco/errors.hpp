#ifndef WCO_ERRORS_HPP
#define WCO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wco {

// Malformed or inconsistent input (dimension mismatch, bad indices, ...).
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A structural invariant of the data failed (window not phi-invariant, ...).
struct invariant_error : std::runtime_error {
  explicit invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two independent computations of the same quantity disagree.
struct oracle_error : std::runtime_error {
  explicit oracle_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wco

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace multsys {

// Precondition violation on otherwise well-formed inputs.
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input documents (bad JSON fields, invalid
// prime-class partitions, ...).
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Configured limits exceeded (sieve limit, character modulus bound, ...).
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace multsys

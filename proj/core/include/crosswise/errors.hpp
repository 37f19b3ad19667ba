#pragma once

#include <stdexcept>
#include <string>

namespace crosswise {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A numerical routine failed to reach its tolerance within the iteration cap.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// The privacy constraint cannot be met (gamma <= pi0).
class InfeasibleDesign : public std::domain_error {
 public:
  explicit InfeasibleDesign(const std::string& what) : std::domain_error(what) {}
};

// Sample-size search ran past its configured cap.
class SearchExhausted : public std::runtime_error {
 public:
  explicit SearchExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crosswise

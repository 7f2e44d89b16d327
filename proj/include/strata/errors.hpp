#pragma once

#include <stdexcept>
#include <string>

namespace strata {

/// Raised when an operation is called outside its admissible parameter range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a probabilistic certification cannot be completed
/// (e.g. modular ranks never agree within the retry budget).
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace strata

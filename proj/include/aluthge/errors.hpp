#pragma once

#include <stdexcept>
#include <string>

namespace aluthge {

/// Argument outside the mathematical domain of an operation (|ω| ≥ 1, α ≤ −1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two operands live on different spaces (different α).
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A product of weights would leave the principal branch of (·)^{α+2}.
class BranchError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The symbolic Aluthge step only exists when T*T is recognised as c·A_t.
class NotInPolarFamily : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Failure inside a dense eigen/singular value solve.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aluthge

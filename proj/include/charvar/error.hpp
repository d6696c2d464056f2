#ifndef CHARVAR_ERROR_HPP
#define CHARVAR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace charvar {

enum class ErrorCode {
  invalid_argument,
  not_traceless,
  product_not_identity,
  constraint_violated,
  not_binary_dihedral,
  abelian_input,
  precondition_violated,
  internal_inconsistency,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::not_traceless: return "not-traceless";
    case ErrorCode::product_not_identity: return "product-not-identity";
    case ErrorCode::constraint_violated: return "constraint-violated";
    case ErrorCode::not_binary_dihedral: return "not-binary-dihedral";
    case ErrorCode::abelian_input: return "abelian-input";
    case ErrorCode::precondition_violated: return "precondition-violated";
    case ErrorCode::internal_inconsistency: return "internal-inconsistency";
  }
  return "unknown";
}

/// Every failure raised by the library. `index` names the offending
/// meridian when there is one (-1 otherwise); `residual` carries the
/// measured violation for relation-type errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, int index = -1, double residual = 0.0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        index_(index),
        residual_(residual) {}

  ErrorCode code() const noexcept { return code_; }
  int index() const noexcept { return index_; }
  double residual() const noexcept { return residual_; }

 private:
  ErrorCode code_;
  int index_;
  double residual_;
};

}  // namespace charvar

#endif  // CHARVAR_ERROR_HPP

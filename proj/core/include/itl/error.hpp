#ifndef ITL_ERROR_HPP
#define ITL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace itl {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Ill-typed construction, application mismatch, = on unequal types, ...
struct TypeError : Error {
  explicit TypeError(const std::string& what) : Error(what) {}
};

struct UndeclaredConstant : TypeError {
  explicit UndeclaredConstant(const std::string& name)
      : TypeError("undeclared constant: " + name), name(name) {}
  std::string name;
};

// apply_subst refuses to substitute under a capturing binder.
struct CaptureError : Error {
  CaptureError(const std::string& binder, const std::string& var)
      : Error("substitution would capture: binder " + binder + " captures free " + var),
        binder(binder), var(var) {}
  std::string binder, var;
};

struct SyntaxError : Error {
  SyntaxError(const std::string& what, size_t pos)
      : Error(what + " (at offset " + std::to_string(pos) + ")"), pos(pos) {}
  size_t pos;
};

struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

// A term consulted an intension the finite carrier does not table.
struct CarrierEscape : Error {
  explicit CarrierEscape(const std::string& what) : Error("carrier escape: " + what) {}
};

struct ExpansionError : Error {
  explicit ExpansionError(const std::string& what) : Error(what) {}
};

struct CoherenceError : Error {
  explicit CoherenceError(const std::string& what) : Error(what) {}
};

struct ValidationFailed : Error {
  explicit ValidationFailed(const std::string& stage) : Error("validation failed: " + stage) {}
};

}  // namespace itl

#endif

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcorr {

inline constexpr const char* kVersion = "0.1.0";

/// Dimensions of a bipartite system. Composite basis ordering is A-major:
/// the composite index of |a>_A |b>_B is k = a*dim_b + b.
struct BipartiteDims {
  int dim_a = 1;  // M
  int dim_b = 1;  // N

  int side() const { return dim_a * dim_b; }
  bool operator==(const BipartiteDims& o) const {
    return dim_a == o.dim_a && dim_b == o.dim_b;
  }
  bool operator!=(const BipartiteDims& o) const { return !(*this == o); }
};

enum class Subsystem { A, B };

inline const char* subsystem_name(Subsystem s) {
  return s == Subsystem::A ? "A" : "B";
}

/// Numerical tolerances used throughout. Defaults are tuned for
/// double-precision eigensolvers on matrices of side <= 64.
struct Tolerances {
  double herm = 1e-9;         // max |x[j,k] - conj(x[k,j])|
  double trace = 1e-9;        // |Tr - 1|
  double psd = 1e-8;          // smallest eigenvalue >= -psd
  double eig = 1e-10;         // eigenvalue zero threshold (entropy, support)
  double basis = 1e-9;        // Gram defect of a measurement basis
  double support = 1e-9;      // support-containment slack in relative entropy
  double spectrum = 1e-10;    // sign threshold for N+/N- counting
  double sipt_scale = 1e-10;  // SIPT witness threshold = sipt_scale * side
  double moment_scale = 1e-9; // moment gap threshold at order n = moment_scale * n

  /// Named profiles: "default", "strict" (100x tighter), "loose" (100x wider).
  static Tolerances profile(const std::string& name);
  /// Profile selected by the QCORR_TOL_PROFILE environment variable,
  /// falling back to "default".
  static Tolerances from_env();
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

class LengthMismatch : public Error {
 public:
  explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};

/// Validation failure carrying the measured defect.
class DefectError : public Error {
 public:
  DefectError(const std::string& msg, double defect)
      : Error(msg), defect_(defect) {}
  double defect() const { return defect_; }

 private:
  double defect_;
};

class NotHermitian : public DefectError {
 public:
  using DefectError::DefectError;
};

class NotUnitTrace : public DefectError {
 public:
  using DefectError::DefectError;
};

class NotPositive : public DefectError {
 public:
  using DefectError::DefectError;
};

class TraceNotOne : public DefectError {
 public:
  using DefectError::DefectError;
};

class NonOrthonormalBasis : public DefectError {
 public:
  using DefectError::DefectError;
};

class EigensolverFailure : public Error {
 public:
  explicit EigensolverFailure(const std::string& msg) : Error(msg) {}
};

class ParameterOutOfRange : public Error {
 public:
  explicit ParameterOutOfRange(const std::string& msg) : Error(msg) {}
};

}  // namespace qcorr

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qcorr/spectra.hpp"
#include "qcorr/types.hpp"

namespace qcorr {

using cd = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;

/// Hermitian square matrix; no trace or positivity requirement (partial
/// transposes of entangled states are indefinite).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(cmat entries, double eps_herm = Tolerances{}.herm);

  const cmat& entries() const { return entries_; }
  int side() const { return static_cast<int>(entries_.rows()); }

 private:
  cmat entries_;
};

/// Validated density matrix: Hermitian, unit trace, positive semidefinite
/// within tolerance, with bipartite dimensions attached. Entries are stored
/// exactly Hermitian (input is symmetrized as (raw + raw^dag)/2).
class DensityMatrix {
 public:
  const cmat& entries() const { return entries_; }
  const BipartiteDims& dims() const { return dims_; }
  int side() const { return static_cast<int>(entries_.rows()); }
  double hermiticity_defect() const { return herm_defect_; }
  double min_eigenvalue() const { return min_eig_; }
  double trace_defect() const { return trace_defect_; }

  HermitianMatrix as_hermitian() const;

  friend DensityMatrix validate_density(const cmat& raw, BipartiteDims dims,
                                        const Tolerances& tol);

 private:
  DensityMatrix() = default;
  cmat entries_;
  BipartiteDims dims_;
  double herm_defect_ = 0;
  double min_eig_ = 0;
  double trace_defect_ = 0;
};

/// An orthonormal rank-1 projective measurement basis on one subsystem.
struct Measurement {
  std::vector<cvec> basis_vectors;
  Subsystem subsystem = Subsystem::A;
};

/// Checks raw for hermiticity, unit trace and positivity (in that order,
/// after symmetrization) and wraps it with defect metadata.
DensityMatrix validate_density(const cmat& raw, BipartiteDims dims,
                               const Tolerances& tol = Tolerances{});

/// Entry permutation transposing the chosen subsystem's indices. A pure
/// permutation of matrix entries, hence a bit-exact involution.
cmat partial_transpose_raw(const cmat& in, BipartiteDims dims, Subsystem sub);

HermitianMatrix partial_transpose(const DensityMatrix& rho, Subsystem sub);
HermitianMatrix partial_transpose(const HermitianMatrix& h, BipartiteDims dims,
                                  Subsystem sub);

/// All eigenvalues, sorted descending.
Spectrum spectrum(const HermitianMatrix& h, const Tolerances& tol = Tolerances{});
Spectrum spectrum(const DensityMatrix& rho, const Tolerances& tol = Tolerances{});

/// Moments Tr(H^n) for n = 1..n_max, by repeated matrix multiplication.
std::vector<double> moments(const HermitianMatrix& h, int n_max);
std::vector<double> moments(const DensityMatrix& rho, int n_max);

/// Squared Hilbert-Schmidt (Frobenius) distance, entrywise.
double hs_distance_sq(const cmat& x, const cmat& y);
double hs_distance_sq(const HermitianMatrix& x, const HermitianMatrix& y);
double hs_distance_sq(const DensityMatrix& x, const DensityMatrix& y);

/// Sum of singular values; for a Hermitian matrix the sum of |eigenvalues|.
double trace_norm(const HermitianMatrix& x);

/// Von Neumann entropy in bits; eigenvalues below tol.eig contribute zero.
double entropy(const DensityMatrix& rho, const Tolerances& tol = Tolerances{});

/// Quantum relative entropy S(rho||sigma) in bits. Returns +infinity when
/// rho has support outside sigma's (mass above tol.support), rather than
/// throwing.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const Tolerances& tol = Tolerances{});

/// Dephasing in the given basis: zeroes all blocks off-diagonal with
/// respect to the measurement projectors on the chosen subsystem.
/// basis_cols holds the basis vectors as matrix columns.
cmat pinched_raw(const cmat& entries, BipartiteDims dims, const cmat& basis_cols,
                 Subsystem sub);

DensityMatrix pinch(const DensityMatrix& rho, const Measurement& m,
                    const Tolerances& tol = Tolerances{});

/// Kronecker product respecting the composite index contract k = a*N + b.
cmat tensor(const cmat& x, const cmat& y);

/// Columns of m as a Measurement on the given subsystem.
Measurement measurement_from_columns(const cmat& m, Subsystem sub);
/// Basis vectors as matrix columns.
cmat measurement_columns(const Measurement& m);

/// Throws NonOrthonormalBasis unless m is a complete orthonormal rank-1
/// basis for a subsystem of dimension `dim`.
void check_measurement(const Measurement& m, int dim, double eps_basis);

}  // namespace qcorr

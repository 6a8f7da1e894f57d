#include "qcorr/qmat.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qcorr {

namespace {

double hermiticity_defect_of(const cmat& x) {
  return (x - x.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd hermitian_eigenvalues(const cmat& x) {
  Eigen::SelfAdjointEigenSolver<cmat> solver(x, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigensolverFailure("eigensolver did not converge on side " +
                             std::to_string(x.rows()));
  }
  return solver.eigenvalues();
}

}  // namespace

HermitianMatrix::HermitianMatrix(cmat entries, double eps_herm) {
  if (entries.rows() != entries.cols()) {
    throw DimensionMismatch("HermitianMatrix: " + std::to_string(entries.rows()) +
                            "x" + std::to_string(entries.cols()) + " is not square");
  }
  const double defect = hermiticity_defect_of(entries);
  if (defect > eps_herm) {
    throw NotHermitian("HermitianMatrix: hermiticity defect " +
                           std::to_string(defect),
                       defect);
  }
  entries_ = std::move(entries);
}

HermitianMatrix DensityMatrix::as_hermitian() const {
  return HermitianMatrix(entries_);
}

DensityMatrix validate_density(const cmat& raw, BipartiteDims dims,
                               const Tolerances& tol) {
  if (dims.dim_a < 1 || dims.dim_b < 1) {
    throw DimensionMismatch("validate_density: dims must be positive");
  }
  if (raw.rows() != raw.cols() || raw.rows() != dims.side()) {
    throw DimensionMismatch("validate_density: side " + std::to_string(raw.rows()) +
                            "x" + std::to_string(raw.cols()) + " does not match dims " +
                            std::to_string(dims.dim_a) + "x" + std::to_string(dims.dim_b));
  }

  const double herm_defect = hermiticity_defect_of(raw);
  if (herm_defect > tol.herm) {
    throw NotHermitian("validate_density: hermiticity defect " +
                           std::to_string(herm_defect),
                       herm_defect);
  }
  cmat sym = (raw + raw.adjoint()) / 2.0;

  const double trace_defect = std::abs(sym.trace().real() - 1.0);
  if (trace_defect > tol.trace) {
    throw NotUnitTrace("validate_density: trace defect " +
                           std::to_string(trace_defect),
                       trace_defect);
  }

  const Eigen::VectorXd eig = hermitian_eigenvalues(sym);
  const double min_eig = eig.minCoeff();
  if (min_eig < -tol.psd) {
    throw NotPositive("validate_density: smallest eigenvalue " +
                          std::to_string(min_eig),
                      min_eig);
  }

  DensityMatrix out;
  out.entries_ = std::move(sym);
  out.dims_ = dims;
  out.herm_defect_ = herm_defect;
  out.min_eig_ = min_eig;
  out.trace_defect_ = trace_defect;
  return out;
}

cmat partial_transpose_raw(const cmat& in, BipartiteDims dims, Subsystem sub) {
  const int m = dims.dim_a;
  const int n = dims.dim_b;
  if (in.rows() != in.cols() || in.rows() != dims.side()) {
    throw DimensionMismatch("partial_transpose: side does not match dims");
  }
  cmat out(in.rows(), in.cols());
  for (int ar = 0; ar < m; ++ar)
    for (int ac = 0; ac < m; ++ac)
      for (int br = 0; br < n; ++br)
        for (int bc = 0; bc < n; ++bc) {
          const cd v = in(ar * n + br, ac * n + bc);
          if (sub == Subsystem::A) {
            out(ac * n + br, ar * n + bc) = v;
          } else {
            out(ar * n + bc, ac * n + br) = v;
          }
        }
  return out;
}

HermitianMatrix partial_transpose(const DensityMatrix& rho, Subsystem sub) {
  return HermitianMatrix(partial_transpose_raw(rho.entries(), rho.dims(), sub));
}

HermitianMatrix partial_transpose(const HermitianMatrix& h, BipartiteDims dims,
                                  Subsystem sub) {
  return HermitianMatrix(partial_transpose_raw(h.entries(), dims, sub));
}

Spectrum spectrum(const HermitianMatrix& h, const Tolerances& tol) {
  Eigen::VectorXd eig = hermitian_eigenvalues(h.entries());
  return make_spectrum(eig.reverse(), tol.spectrum);
}

Spectrum spectrum(const DensityMatrix& rho, const Tolerances& tol) {
  Eigen::VectorXd eig = hermitian_eigenvalues(rho.entries());
  return make_spectrum(eig.reverse(), tol.spectrum);
}

std::vector<double> moments(const HermitianMatrix& h, int n_max) {
  if (n_max < 1) throw ParameterOutOfRange("moments: n_max must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n_max));
  cmat power = h.entries();
  out.push_back(power.trace().real());
  for (int n = 2; n <= n_max; ++n) {
    power = power * h.entries();
    out.push_back(power.trace().real());
  }
  return out;
}

std::vector<double> moments(const DensityMatrix& rho, int n_max) {
  return moments(rho.as_hermitian(), n_max);
}

double hs_distance_sq(const cmat& x, const cmat& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DimensionMismatch("hs_distance_sq: shape mismatch");
  }
  return (x - y).squaredNorm();
}

double hs_distance_sq(const HermitianMatrix& x, const HermitianMatrix& y) {
  return hs_distance_sq(x.entries(), y.entries());
}

double hs_distance_sq(const DensityMatrix& x, const DensityMatrix& y) {
  return hs_distance_sq(x.entries(), y.entries());
}

double trace_norm(const HermitianMatrix& x) {
  return hermitian_eigenvalues(x.entries()).cwiseAbs().sum();
}

double entropy(const DensityMatrix& rho, const Tolerances& tol) {
  const Eigen::VectorXd eig = hermitian_eigenvalues(rho.entries());
  double s = 0.0;
  for (int i = 0; i < eig.size(); ++i) {
    if (eig[i] > tol.eig) s -= eig[i] * std::log2(eig[i]);
  }
  return s;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const Tolerances& tol) {
  if (rho.side() != sigma.side()) {
    throw DimensionMismatch("relative_entropy: side mismatch");
  }
  Eigen::SelfAdjointEigenSolver<cmat> sr(rho.entries());
  Eigen::SelfAdjointEigenSolver<cmat> ss(sigma.entries());
  if (sr.info() != Eigen::Success || ss.info() != Eigen::Success) {
    throw EigensolverFailure("relative_entropy: eigensolver did not converge");
  }
  const Eigen::VectorXd lam = sr.eigenvalues();
  const Eigen::VectorXd mu = ss.eigenvalues();
  // overlap(i, j) = |<u_i|v_j>|^2
  const cmat cross = sr.eigenvectors().adjoint() * ss.eigenvectors();
  const Eigen::MatrixXd overlap = cross.cwiseAbs2();

  double value = 0.0;
  double escaped_mass = 0.0;  // rho-mass on sigma's kernel
  for (int i = 0; i < lam.size(); ++i) {
    if (lam[i] <= tol.eig) continue;
    value += lam[i] * std::log2(lam[i]);
    for (int j = 0; j < mu.size(); ++j) {
      const double w = lam[i] * overlap(i, j);
      if (mu[j] > tol.eig) {
        value -= w * std::log2(mu[j]);
      } else {
        escaped_mass += w;
      }
    }
  }
  if (escaped_mass > tol.support) {
    return std::numeric_limits<double>::infinity();
  }
  return value;
}

cmat pinched_raw(const cmat& entries, BipartiteDims dims, const cmat& basis_cols,
                 Subsystem sub) {
  const int m = dims.dim_a;
  const int n = dims.dim_b;
  cmat out = cmat::Zero(entries.rows(), entries.cols());
  if (sub == Subsystem::A) {
    for (int i = 0; i < basis_cols.cols(); ++i) {
      const cvec v = basis_cols.col(i);
      // block(b, b') = <v b| rho |v b'>
      cmat block = cmat::Zero(n, n);
      for (int ar = 0; ar < m; ++ar)
        for (int ac = 0; ac < m; ++ac) {
          const cd w = std::conj(v[ar]) * v[ac];
          if (w == cd(0.0, 0.0)) continue;
          block += w * entries.block(ar * n, ac * n, n, n);
        }
      const cmat proj = v * v.adjoint();
      for (int ar = 0; ar < m; ++ar)
        for (int ac = 0; ac < m; ++ac)
          out.block(ar * n, ac * n, n, n) += proj(ar, ac) * block;
    }
  } else {
    for (int i = 0; i < basis_cols.cols(); ++i) {
      const cvec v = basis_cols.col(i);
      cmat block = cmat::Zero(m, m);
      for (int ar = 0; ar < m; ++ar)
        for (int ac = 0; ac < m; ++ac) {
          cd acc(0.0, 0.0);
          for (int br = 0; br < n; ++br)
            for (int bc = 0; bc < n; ++bc)
              acc += std::conj(v[br]) * entries(ar * n + br, ac * n + bc) * v[bc];
          block(ar, ac) = acc;
        }
      const cmat proj = v * v.adjoint();
      for (int ar = 0; ar < m; ++ar)
        for (int ac = 0; ac < m; ++ac)
          out.block(ar * n, ac * n, n, n) += block(ar, ac) * proj;
    }
  }
  return out;
}

DensityMatrix pinch(const DensityMatrix& rho, const Measurement& m,
                    const Tolerances& tol) {
  const int dim = m.subsystem == Subsystem::A ? rho.dims().dim_a : rho.dims().dim_b;
  check_measurement(m, dim, tol.basis);
  const cmat cols = measurement_columns(m);
  cmat out = pinched_raw(rho.entries(), rho.dims(), cols, m.subsystem);
  return validate_density(out, rho.dims(), tol);
}

cmat tensor(const cmat& x, const cmat& y) {
  cmat out(x.rows() * y.rows(), x.cols() * y.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

Measurement measurement_from_columns(const cmat& m, Subsystem sub) {
  Measurement out;
  out.subsystem = sub;
  out.basis_vectors.reserve(static_cast<size_t>(m.cols()));
  for (int i = 0; i < m.cols(); ++i) out.basis_vectors.push_back(m.col(i));
  return out;
}

cmat measurement_columns(const Measurement& m) {
  if (m.basis_vectors.empty()) {
    throw NonOrthonormalBasis("measurement has no basis vectors", 1.0);
  }
  const int dim = static_cast<int>(m.basis_vectors.front().size());
  cmat cols(dim, static_cast<int>(m.basis_vectors.size()));
  for (size_t i = 0; i < m.basis_vectors.size(); ++i) {
    if (m.basis_vectors[i].size() != dim) {
      throw DimensionMismatch("measurement basis vectors have mixed lengths");
    }
    cols.col(static_cast<int>(i)) = m.basis_vectors[i];
  }
  return cols;
}

void check_measurement(const Measurement& m, int dim, double eps_basis) {
  if (static_cast<int>(m.basis_vectors.size()) != dim) {
    throw NonOrthonormalBasis("measurement has " +
                                  std::to_string(m.basis_vectors.size()) +
                                  " vectors, subsystem dimension is " +
                                  std::to_string(dim),
                              1.0);
  }
  const cmat cols = measurement_columns(m);
  if (cols.rows() != dim) {
    throw NonOrthonormalBasis("measurement vectors have length " +
                                  std::to_string(cols.rows()) +
                                  ", subsystem dimension is " + std::to_string(dim),
                              1.0);
  }
  const cmat gram = cols.adjoint() * cols;
  const double defect =
      (gram - cmat::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (defect > eps_basis) {
    throw NonOrthonormalBasis("measurement Gram defect " + std::to_string(defect),
                              defect);
  }
}

}  // namespace qcorr

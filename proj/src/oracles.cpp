#include "qcorr/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>

#include <Eigen/Dense>

namespace qcorr {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Compass searches stop shrinking once the step reaches this floor; the
// objective is locally quadratic, so the residual value error is O(floor^2).
constexpr double kStepFloor = 1e-6;

std::string format(const char* pattern, ...) {
  char buf[192];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

}  // namespace

double Rng::uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  do {
    u = uniform();
  } while (u <= 0.0);
  const double v = uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  spare_ = r * std::sin(2.0 * kPi * v);
  has_spare_ = true;
  return r * std::cos(2.0 * kPi * v);
}

cd Rng::cnormal() {
  const double re = normal();
  const double im = normal();
  return cd(re, im);
}

namespace {

cmat ginibre_matrix(int rows, int cols, Rng& rng) {
  cmat g(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) g(r, c) = rng.cnormal();
  return g;
}

// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal
// rephased to be positive, which removes the QR gauge freedom.
cmat haar_unitary(int dim, Rng& rng) {
  const cmat g = ginibre_matrix(dim, dim, rng);
  Eigen::HouseholderQR<cmat> qr(g);
  cmat q = qr.householderQ();
  const cmat r = qr.matrixQR();
  for (int i = 0; i < dim; ++i) {
    const cd d = r(i, i);
    const double a = std::abs(d);
    if (a > 0.0) q.col(i) *= d / a;
  }
  return q;
}

cvec random_pure(int dim, Rng& rng) {
  cvec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.cnormal();
  return v / v.norm();
}

// Uniform point on the probability simplex from exponential spacings.
std::vector<double> random_weights(int k, Rng& rng) {
  std::vector<double> w(k);
  double total = 0.0;
  for (double& x : w) {
    double u = 0.0;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    x = -std::log(u);
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

cmat ginibre_density(int dim, int rank, Rng& rng) {
  const cmat g = ginibre_matrix(dim, rank, rng);
  cmat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace

StateSpec StateSpec::max_entangled(int d) {
  StateSpec s;
  s.family = Family::MaxEntangled;
  s.dims = {d, d};
  return s;
}

StateSpec StateSpec::werner(double p) {
  StateSpec s;
  s.family = Family::Werner;
  s.dims = {2, 2};
  s.p = p;
  return s;
}

StateSpec StateSpec::isotropic(int d, double f) {
  StateSpec s;
  s.family = Family::Isotropic;
  s.dims = {d, d};
  s.f = f;
  return s;
}

StateSpec StateSpec::bell_diagonal(double c1, double c2, double c3) {
  StateSpec s;
  s.family = Family::BellDiagonal;
  s.dims = {2, 2};
  s.c1 = c1;
  s.c2 = c2;
  s.c3 = c3;
  return s;
}

StateSpec StateSpec::x_state(const std::vector<double>& diag, cd outer, cd inner) {
  StateSpec s;
  s.family = Family::XState;
  s.dims = {2, 2};
  s.x_diag = diag;
  s.x_outer = outer;
  s.x_inner = inner;
  return s;
}

StateSpec StateSpec::random_ginibre(BipartiteDims dims, int rank,
                                    std::uint64_t seed) {
  StateSpec s;
  s.family = Family::RandomGinibre;
  s.dims = dims;
  s.rank = rank;
  s.seed = seed;
  return s;
}

StateSpec StateSpec::random_cq(BipartiteDims dims, int k, std::uint64_t seed) {
  StateSpec s;
  s.family = Family::RandomCq;
  s.dims = dims;
  s.k = k;
  s.seed = seed;
  return s;
}

StateSpec StateSpec::random_separable(BipartiteDims dims, int k,
                                      std::uint64_t seed) {
  StateSpec s;
  s.family = Family::RandomSeparable;
  s.dims = dims;
  s.k = k;
  s.seed = seed;
  return s;
}

StateSpec StateSpec::random_product(BipartiteDims dims, std::uint64_t seed) {
  StateSpec s;
  s.family = Family::RandomProduct;
  s.dims = dims;
  s.seed = seed;
  return s;
}

std::string StateSpec::id() const {
  const auto ull = static_cast<unsigned long long>(seed);
  switch (family) {
    case Family::MaxEntangled:
      return format("max-entangled(d=%d)", dims.dim_a);
    case Family::Werner:
      return format("werner(p=%g)", p);
    case Family::Isotropic:
      return format("isotropic(d=%d, f=%g)", dims.dim_a, f);
    case Family::BellDiagonal:
      return format("bell-diagonal(c1=%g, c2=%g, c3=%g)", c1, c2, c3);
    case Family::XState:
      return format("x-state(|z1|=%g, |z2|=%g)", std::abs(x_outer),
                    std::abs(x_inner));
    case Family::RandomGinibre:
      return format("ginibre(%dx%d, rank=%d, seed=%llu)", dims.dim_a, dims.dim_b,
                    rank, ull);
    case Family::RandomCq:
      return format("cq(%dx%d, k=%d, seed=%llu)", dims.dim_a, dims.dim_b, k, ull);
    case Family::RandomSeparable:
      return format("separable(%dx%d, k=%d, seed=%llu)", dims.dim_a, dims.dim_b,
                    k, ull);
    case Family::RandomProduct:
      return format("product(%dx%d, seed=%llu)", dims.dim_a, dims.dim_b, ull);
  }
  return "unknown";
}

namespace {

void require_range(bool ok, const std::string& what) {
  if (!ok) throw ParameterOutOfRange(what);
}

cmat max_entangled_raw(int d) {
  cvec phi = cvec::Zero(d * d);
  const double amp = 1.0 / std::sqrt(double(d));
  for (int i = 0; i < d; ++i) phi(i * d + i) = amp;
  return phi * phi.adjoint();
}

}  // namespace

DensityMatrix make_state(const StateSpec& spec, const Tolerances& tol) {
  const int m = spec.dims.dim_a;
  const int n = spec.dims.dim_b;
  const int side = m * n;
  cmat raw;

  switch (spec.family) {
    case StateSpec::Family::MaxEntangled: {
      require_range(m >= 2, format("max-entangled: d must be >= 2, got %d", m));
      raw = max_entangled_raw(m);
      break;
    }
    case StateSpec::Family::Werner: {
      require_range(spec.p >= 0.0 && spec.p <= 1.0,
                    format("werner: p must lie in [0, 1], got %g", spec.p));
      cvec psi = cvec::Zero(4);
      psi(1) = 1.0 / std::sqrt(2.0);
      psi(2) = -1.0 / std::sqrt(2.0);
      raw = spec.p * (psi * psi.adjoint()) +
            (1.0 - spec.p) * 0.25 * cmat::Identity(4, 4);
      break;
    }
    case StateSpec::Family::Isotropic: {
      require_range(m >= 2, format("isotropic: d must be >= 2, got %d", m));
      require_range(spec.f >= 0.0 && spec.f <= 1.0,
                    format("isotropic: f must lie in [0, 1], got %g", spec.f));
      const cmat proj = max_entangled_raw(m);
      raw = spec.f * proj + (1.0 - spec.f) / double(side - 1) *
                                (cmat::Identity(side, side) - proj);
      break;
    }
    case StateSpec::Family::BellDiagonal: {
      const double c1 = spec.c1, c2 = spec.c2, c3 = spec.c3;
      const struct {
        double value;
        const char* name;
      } eigs[] = {
          {(1.0 + c1 - c2 + c3) / 4.0, "(1 + c1 - c2 + c3)/4"},
          {(1.0 - c1 + c2 + c3) / 4.0, "(1 - c1 + c2 + c3)/4"},
          {(1.0 + c1 + c2 - c3) / 4.0, "(1 + c1 + c2 - c3)/4"},
          {(1.0 - c1 - c2 - c3) / 4.0, "(1 - c1 - c2 - c3)/4"},
      };
      for (const auto& e : eigs) {
        require_range(e.value >= -1e-15,
                      format("bell-diagonal: eigenvalue %s = %g is negative",
                             e.name, e.value));
      }
      raw = cmat::Zero(4, 4);
      raw(0, 0) = raw(3, 3) = (1.0 + c3) / 4.0;
      raw(1, 1) = raw(2, 2) = (1.0 - c3) / 4.0;
      raw(0, 3) = raw(3, 0) = (c1 - c2) / 4.0;
      raw(1, 2) = raw(2, 1) = (c1 + c2) / 4.0;
      break;
    }
    case StateSpec::Family::XState: {
      require_range(spec.x_diag.size() == 4,
                    format("x-state: diagonal needs 4 entries, got %d",
                           int(spec.x_diag.size())));
      double sum = 0.0;
      for (double v : spec.x_diag) {
        require_range(v >= 0.0,
                      format("x-state: diagonal entry %g is negative", v));
        sum += v;
      }
      require_range(std::abs(sum - 1.0) <= 1e-9,
                    format("x-state: diagonal sums to %g, not 1", sum));
      const double ad = spec.x_diag[0] * spec.x_diag[3];
      const double bc = spec.x_diag[1] * spec.x_diag[2];
      require_range(std::norm(spec.x_outer) <= ad + 1e-12,
                    format("x-state: |z1|^2 = %g exceeds the diagonal product %g",
                           std::norm(spec.x_outer), ad));
      require_range(std::norm(spec.x_inner) <= bc + 1e-12,
                    format("x-state: |z2|^2 = %g exceeds the diagonal product %g",
                           std::norm(spec.x_inner), bc));
      raw = cmat::Zero(4, 4);
      for (int i = 0; i < 4; ++i) raw(i, i) = spec.x_diag[i];
      raw(0, 3) = spec.x_outer;
      raw(3, 0) = std::conj(spec.x_outer);
      raw(1, 2) = spec.x_inner;
      raw(2, 1) = std::conj(spec.x_inner);
      break;
    }
    case StateSpec::Family::RandomGinibre: {
      const int rank = spec.rank == 0 ? side : spec.rank;
      require_range(rank >= 1 && rank <= side,
                    format("ginibre: rank must lie in [1, %d], got %d", side,
                           rank));
      Rng rng(spec.seed);
      raw = ginibre_density(side, rank, rng);
      break;
    }
    case StateSpec::Family::RandomCq: {
      const int k = spec.k == 0 ? m : spec.k;
      require_range(k >= 1 && k <= m,
                    format("cq: k must lie in [1, %d], got %d", m, k));
      Rng rng(spec.seed);
      const cmat basis = haar_unitary(m, rng);
      const std::vector<double> w = random_weights(k, rng);
      raw = cmat::Zero(side, side);
      for (int i = 0; i < k; ++i) {
        const cmat proj = basis.col(i) * basis.col(i).adjoint();
        raw += w[i] * tensor(proj, ginibre_density(n, n, rng));
      }
      break;
    }
    case StateSpec::Family::RandomSeparable: {
      const int k = spec.k == 0 ? side : spec.k;
      require_range(k >= 1, format("separable: k must be >= 1, got %d", k));
      Rng rng(spec.seed);
      const std::vector<double> w = random_weights(k, rng);
      raw = cmat::Zero(side, side);
      for (int t = 0; t < k; ++t) {
        const cvec a = random_pure(m, rng);
        const cvec b = random_pure(n, rng);
        raw += w[t] * tensor(a * a.adjoint(), b * b.adjoint());
      }
      break;
    }
    case StateSpec::Family::RandomProduct: {
      Rng rng(spec.seed);
      const cvec a = random_pure(m, rng);
      const cvec b = random_pure(n, rng);
      raw = tensor(a * a.adjoint(), b * b.adjoint());
      break;
    }
  }
  return validate_density(raw, spec.dims, tol);
}

namespace {

double raw_entropy_bits(const cmat& h) {
  Eigen::SelfAdjointEigenSolver<cmat> es;
  es.compute(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i];
    if (lam > 1e-12) s -= lam * std::log2(lam);
  }
  return s;
}

cmat bloch_basis(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const cd e(std::cos(phi), std::sin(phi));
  cmat b(2, 2);
  b(0, 0) = c;
  b(1, 0) = s * e;
  b(0, 1) = -s * std::conj(e);
  b(1, 1) = c;
  return b;
}

void check_warm_start(const Measurement& warm, int dim, Subsystem side) {
  if (warm.subsystem != side) {
    throw DimensionMismatch(
        format("warm start measures subsystem %s but the oracle measures %s",
               subsystem_name(warm.subsystem), subsystem_name(side)));
  }
  check_measurement(warm, dim, Tolerances{}.basis);
}

// Exhaustive Bloch-sphere scan for a qubit measurement side: a 64 x 128
// coarse grid over (theta, phi), then grid_depth local refinements, each a
// 17 x 17 window of half-width equal to the previous spacing.  The
// objective is smooth in the angles, so each refinement divides the value
// error by ~64.
template <class F>
OracleResult qubit_grid_min(F&& objective, const OracleOptions& opts,
                            Subsystem side) {
  double best = std::numeric_limits<double>::infinity();
  double best_th = 0.0, best_ph = 0.0;
  const auto eval = [&](double th, double ph) {
    const double v = objective(bloch_basis(th, ph));
    if (v < best) {
      best = v;
      best_th = th;
      best_ph = ph;
    }
  };

  for (int i = 0; i < 64; ++i) {
    const double th = kPi * i / 63.0;
    for (int j = 0; j < 128; ++j) eval(th, 2.0 * kPi * j / 128.0);
  }
  double half_th = kPi / 63.0;
  double half_ph = 2.0 * kPi / 128.0;
  for (int level = 0; level < opts.grid_depth; ++level) {
    const double c_th = best_th, c_ph = best_ph;
    for (int i = 0; i <= 16; ++i) {
      const double th =
          std::clamp(c_th + half_th * (i / 8.0 - 1.0), 0.0, kPi);
      for (int j = 0; j <= 16; ++j) eval(th, c_ph + half_ph * (j / 8.0 - 1.0));
    }
    half_th /= 8.0;
    half_ph /= 8.0;
  }

  OracleResult out;
  out.restarts_used = 1;
  out.converged = true;
  out.spread = 0.0;
  out.value = best;
  out.argmin = measurement_from_columns(bloch_basis(best_th, best_ph), side);
  out.argmin_desc = format("bloch(theta=%.8g, phi=%.8g)", best_th, best_ph);

  if (opts.warm_start) {
    const double warm_value = objective(measurement_columns(*opts.warm_start));
    if (warm_value < out.value) {
      out.value = warm_value;
      out.argmin = *opts.warm_start;
      out.argmin_desc = "warm start";
    }
  }
  return out;
}

// Left-multiplies u by the two-level rotation on coordinates (i, j) with
// mixing angle theta and relative phase phi.
void apply_givens(cmat& u, int i, int j, double theta, double phi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const cd e(std::cos(phi), std::sin(phi));
  const Eigen::RowVectorXcd row_i = u.row(i);
  const Eigen::RowVectorXcd row_j = u.row(j);
  u.row(i) = c * row_i - std::conj(e) * s * row_j;
  u.row(j) = e * s * row_i + c * row_j;
}

cmat compose_basis(const cmat& b0, const Eigen::VectorXd& angles) {
  const int m = static_cast<int>(b0.rows());
  cmat u = cmat::Identity(m, m);
  int a = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      apply_givens(u, i, j, angles[a], angles[a + 1]);
      a += 2;
    }
  return u * b0;
}

struct CompassOutcome {
  double value = 0.0;
  cmat basis;
  bool converged = false;
};

// Coordinate descent over the m(m-1) two-level rotation angles around base
// basis b0: probe each angle at +/- step, keep improvements, halve the step
// after a stalled sweep, declare convergence once a sweep at the floor step
// gains less than opts.tol.
template <class F>
CompassOutcome compass_min(F&& objective, const cmat& b0,
                           const OracleOptions& opts) {
  const int m = static_cast<int>(b0.rows());
  Eigen::VectorXd angles = Eigen::VectorXd::Zero(m * (m - 1));
  CompassOutcome out;
  out.value = objective(b0);
  out.basis = b0;

  double step = 0.4;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double gain = 0.0;
    for (int a = 0; a < angles.size(); ++a) {
      for (const double dir : {1.0, -1.0}) {
        angles[a] += dir * step;
        const cmat basis = compose_basis(b0, angles);
        const double trial = objective(basis);
        if (trial < out.value) {
          gain += out.value - trial;
          out.value = trial;
          out.basis = basis;
          break;
        }
        angles[a] -= dir * step;
      }
    }
    if (gain < opts.tol) {
      if (step <= kStepFloor) {
        out.converged = true;
        break;
      }
      step *= 0.5;
    }
  }
  return out;
}

template <class F>
OracleResult compass_multistart(int m, F&& objective, const OracleOptions& opts,
                                Subsystem side) {
  Rng rng(opts.seed);
  const int restarts = std::max(1, opts.restarts);

  OracleResult out;
  double worst = -std::numeric_limits<double>::infinity();
  int best_restart = 0;
  CompassOutcome best;
  best.value = std::numeric_limits<double>::infinity();

  for (int r = 0; r < restarts; ++r) {
    cmat b0;
    if (r == 0) {
      b0 = opts.warm_start ? measurement_columns(*opts.warm_start)
                           : cmat(cmat::Identity(m, m));
    } else {
      b0 = haar_unitary(m, rng);
    }
    const CompassOutcome run = compass_min(objective, b0, opts);
    if (run.value < best.value) {
      best = run;
      best_restart = r;
    }
    worst = std::max(worst, run.value);
  }

  out.value = best.value;
  out.argmin = measurement_from_columns(best.basis, side);
  out.argmin_desc = format("givens(restart %d of %d)", best_restart, restarts);
  out.restarts_used = restarts;
  out.converged = best.converged;
  out.spread = worst - best.value;
  return out;
}

template <class F>
OracleResult minimize_over_bases(int m, F&& objective, const OracleOptions& opts,
                                 Subsystem side) {
  if (opts.warm_start) check_warm_start(*opts.warm_start, m, side);
  if (m == 1) {
    OracleResult out;
    out.value = objective(cmat::Identity(1, 1));
    out.argmin = measurement_from_columns(cmat::Identity(1, 1), side);
    out.argmin_desc = "trivial side";
    out.restarts_used = 1;
    out.converged = true;
    return out;
  }
  if (m == 2) return qubit_grid_min(objective, opts, side);
  return compass_multistart(m, objective, opts, side);
}

}  // namespace

OracleResult gqd_oracle(const DensityMatrix& rho, const OracleOptions& opts) {
  const int m = rho.dims().dim_a;
  const auto objective = [&rho](const cmat& cols) {
    return hs_distance_sq(
        rho.entries(), pinched_raw(rho.entries(), rho.dims(), cols, Subsystem::A));
  };
  return minimize_over_bases(m, objective, opts, Subsystem::A);
}

OracleResult deficit_oracle(const DensityMatrix& rho, const OracleOptions& opts,
                            Subsystem side) {
  const int m = side == Subsystem::A ? rho.dims().dim_a : rho.dims().dim_b;
  const double base_entropy = entropy(rho);
  const auto objective = [&rho, side, base_entropy](const cmat& cols) {
    return raw_entropy_bits(pinched_raw(rho.entries(), rho.dims(), cols, side)) -
           base_entropy;
  };
  return minimize_over_bases(m, objective, opts, side);
}

SimplexProjection simplex_qp_oracle(const Spectrum& s) {
  const int len = s.size();
  const double sum_defect = std::abs(s.sum() - 1.0);
  if (sum_defect > std::max(s.tol, 1e-12 * len)) {
    throw TraceNotOne("simplex_qp_oracle: entries sum to " +
                          std::to_string(s.sum()) + ", expected 1",
                      sum_defect);
  }

  Eigen::VectorXd v = s.values;
  std::sort(v.data(), v.data() + len, std::greater<double>());

  double best_dist = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_q;
  int best_support = 0;
  double best_shift = 0.0;

  const double total_sq = v.squaredNorm();
  const auto consider = [&](const std::vector<int>& support) {
    double sub_sum = 0.0;
    for (int i : support) sub_sum += v[i];
    const double shift = (sub_sum - 1.0) / double(support.size());
    double dist = 0.0;
    Eigen::VectorXd q = Eigen::VectorXd::Zero(len);
    for (int i : support) {
      const double qi = v[i] - shift;
      if (qi < -1e-15) return;
      q[i] = qi;
    }
    double kept_sq = 0.0;
    for (int i : support) kept_sq += v[i] * v[i];
    dist = (total_sq - kept_sq) + double(support.size()) * shift * shift;
    if (dist < best_dist) {
      best_dist = dist;
      best_q = q;
      best_support = static_cast<int>(support.size());
      best_shift = shift;
    }
  };

  if (len <= 12) {
    // Every nonempty support pattern; the active constraint set of the true
    // optimum is among them.
    for (unsigned mask = 1; mask < (1u << len); ++mask) {
      std::vector<int> support;
      for (int i = 0; i < len; ++i)
        if (mask & (1u << i)) support.push_back(i);
      consider(support);
    }
  } else {
    std::vector<int> support;
    for (int k = 0; k < len; ++k) {
      support.push_back(k);
      consider(support);
    }
  }

  SimplexProjection out;
  out.projected = make_spectrum(best_q, s.tol);
  out.cut_index = best_support;
  out.level_shift = best_shift;
  out.bound_value = best_dist;
  return out;
}

namespace {

// Minimizes w'Gw - 2c'w over the probability simplex by active-set pivoting
// on the support, warm-started from w.  G is the Gram matrix of the atoms,
// so the subproblems are tiny and the KKT systems stay well conditioned
// after duplicate atoms are filtered upstream.
Eigen::VectorXd simplex_weight_qp(const Eigen::MatrixXd& g,
                                  const Eigen::VectorXd& c, Eigen::VectorXd w) {
  const int n = static_cast<int>(c.size());
  std::vector<int> support;
  for (int i = 0; i < n; ++i)
    if (w[i] > 0.0) support.push_back(i);
  if (support.empty()) {
    int top = 0;
    c.maxCoeff(&top);
    support.push_back(top);
  }

  const int max_pivots = 50 * (n + 1);
  for (int pivot = 0; pivot < max_pivots; ++pivot) {
    const int k = static_cast<int>(support.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
    Eigen::VectorXd rhs(k + 1);
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) kkt(a, b) = 2.0 * g(support[a], support[b]);
      kkt(a, k) = 1.0;
      kkt(k, a) = 1.0;
      rhs[a] = 2.0 * c[support[a]];
    }
    rhs[k] = 1.0;
    const Eigen::VectorXd sol = Eigen::FullPivLU<Eigen::MatrixXd>(kkt).solve(rhs);
    if (!sol.allFinite()) break;

    int drop = -1;
    double most_negative = -1e-12;
    for (int a = 0; a < k; ++a) {
      if (sol[a] < most_negative) {
        most_negative = sol[a];
        drop = a;
      }
    }
    if (drop >= 0) {
      if (k == 1) break;
      support.erase(support.begin() + drop);
      continue;
    }

    w.setZero();
    for (int a = 0; a < k; ++a) w[support[a]] = std::max(sol[a], 0.0);
    const double mu = sol[k];

    // Dual feasibility outside the support.
    const Eigen::VectorXd grad = 2.0 * (g * w) - 2.0 * c;
    int add = -1;
    double worst = -1e-12;
    for (int j = 0; j < n; ++j) {
      if (w[j] > 0.0) continue;
      const double slack = grad[j] + mu;
      if (slack < worst) {
        worst = slack;
        add = j;
      }
    }
    if (add < 0) break;
    support.push_back(add);
  }
  // Normalize away rounding drift so the weights stay on the simplex.
  const double total = w.sum();
  if (total > 0.0) w /= total;
  return w;
}

}  // namespace

OracleResult separable_upper_search(const DensityMatrix& rho,
                                    const SeparableSearchOptions& opts) {
  const int m = rho.dims().dim_a;
  const int n = rho.dims().dim_b;
  const int side = m * n;
  const int pool_cap = opts.k > 0 ? opts.k : side * side;
  Rng rng(opts.seed);

  // Linear minimization oracle: the product vector maximizing <ab|R|ab> by
  // alternating top-eigenvector steps on the conditioned blocks.
  const auto lmo = [&](const cmat& r_mat) {
    const auto conditioned_a = [&](const cvec& b) {
      cmat out(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          cd acc = 0.0;
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              acc += std::conj(b[p]) * b[q] * r_mat(i * n + p, j * n + q);
          out(i, j) = acc;
        }
      return out;
    };
    const auto conditioned_b = [&](const cvec& a) {
      cmat out(n, n);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          cd acc = 0.0;
          for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
              acc += std::conj(a[i]) * a[j] * r_mat(i * n + p, j * n + q);
          out(p, q) = acc;
        }
      return out;
    };
    const auto top_eigvec = [](const cmat& h) {
      Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (h + h.adjoint()));
      return cvec(es.eigenvectors().col(h.rows() - 1));
    };

    // Warm init from the B-side partial trace, then random inits.
    cmat traced = cmat::Zero(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        cd acc = 0.0;
        for (int i = 0; i < m; ++i) acc += r_mat(i * n + p, i * n + q);
        traced(p, q) = acc;
      }

    double best_val = -std::numeric_limits<double>::infinity();
    cvec best_a, best_b;
    for (int init = 0; init < 4; ++init) {
      cvec b = init == 0 ? top_eigvec(traced) : random_pure(n, rng);
      cvec a;
      for (int round = 0; round < 8; ++round) {
        a = top_eigvec(conditioned_a(b));
        b = top_eigvec(conditioned_b(a));
      }
      const double val = std::real(b.dot(conditioned_b(a) * b));
      if (val > best_val) {
        best_val = val;
        best_a = a;
        best_b = b;
      }
    }
    cvec product(side);
    for (int i = 0; i < m; ++i)
      for (int p = 0; p < n; ++p) product[i * n + p] = best_a[i] * best_b[p];
    return std::make_pair(product, best_val);
  };

  std::vector<cvec> atoms;
  Eigen::MatrixXd gram(0, 0);
  Eigen::VectorXd overlaps(0);
  Eigen::VectorXd w(0);

  const auto add_atom = [&](const cvec& v) {
    for (const cvec& existing : atoms) {
      if (std::norm(existing.dot(v)) > 1.0 - 1e-12) return false;
    }
    const int k = static_cast<int>(atoms.size());
    gram.conservativeResize(k + 1, k + 1);
    overlaps.conservativeResize(k + 1);
    w.conservativeResize(k + 1);
    for (int t = 0; t < k; ++t) {
      const double g = std::norm(atoms[t].dot(v));
      gram(t, k) = g;
      gram(k, t) = g;
    }
    gram(k, k) = 1.0;
    overlaps[k] = std::real(v.dot(rho.entries() * v));
    w[k] = 0.0;
    atoms.push_back(v);
    return true;
  };

  const auto drop_atom = [&](int t) {
    const int k = static_cast<int>(atoms.size());
    for (int a = t; a + 1 < k; ++a) {
      atoms[a] = atoms[a + 1];
      overlaps[a] = overlaps[a + 1];
      w[a] = w[a + 1];
    }
    for (int r = 0; r < k; ++r)
      for (int col = t; col + 1 < k; ++col) gram(r, col) = gram(r, col + 1);
    for (int col = 0; col < k; ++col)
      for (int r = t; r + 1 < k; ++r) gram(r, col) = gram(r + 1, col);
    atoms.pop_back();
    gram.conservativeResize(k - 1, k - 1);
    overlaps.conservativeResize(k - 1);
    w.conservativeResize(k - 1);
  };

  // Seed with the product state closest to rho itself.
  add_atom(lmo(rho.entries()).first);
  w[0] = 1.0;

  const auto mixture = [&]() {
    cmat sigma = cmat::Zero(side, side);
    for (size_t t = 0; t < atoms.size(); ++t)
      sigma += w[t] * (atoms[t] * atoms[t].adjoint());
    return sigma;
  };

  OracleResult out;
  double gap = std::numeric_limits<double>::infinity();
  int used = 0;
  for (int it = 0; it < opts.iterations; ++it) {
    used = it + 1;
    const cmat sigma = mixture();
    const cmat residual = rho.entries() - sigma;
    const auto [candidate, val] = lmo(residual);
    gap = std::max(0.0, 2.0 * (val - std::real((residual * sigma).trace())));
    if (gap <= opts.tol) {
      out.converged = true;
      break;
    }
    add_atom(candidate);
    w = simplex_weight_qp(gram, overlaps, w);
    for (int t = static_cast<int>(atoms.size()) - 1; t >= 0; --t) {
      if (w[t] <= 1e-14 && atoms.size() > 1) drop_atom(t);
    }
    while (static_cast<int>(atoms.size()) > pool_cap) {
      int smallest = 0;
      w.minCoeff(&smallest);
      drop_atom(smallest);
      const double total = w.sum();
      if (total > 0.0) w /= total;
    }
  }

  out.value = hs_distance_sq(rho.entries(), mixture());
  out.argmin_desc = format("mixture of %d product states, gap %.3g after %d iterations",
                           int(atoms.size()), gap, used);
  out.restarts_used = 1;
  out.spread = 0.0;
  return out;
}

}  // namespace qcorr

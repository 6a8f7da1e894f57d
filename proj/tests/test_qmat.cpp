#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qcorr/oracles.hpp"
#include "qcorr/qmat.hpp"

using namespace qcorr;

namespace {

cmat bell_raw() {
  cvec phi = cvec::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  return phi * phi.adjoint();
}

DensityMatrix bell_state() { return validate_density(bell_raw(), {2, 2}); }

cmat random_hermitian(int dim, Rng& rng) {
  cmat g(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) g(r, c) = rng.cnormal();
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST_CASE("maximally mixed state validates with clean metadata") {
  const DensityMatrix rho =
      validate_density(0.25 * cmat::Identity(4, 4), {2, 2});
  CHECK(std::abs(rho.min_eigenvalue() - 0.25) < 1e-12);
  CHECK(rho.hermiticity_defect() == 0.0);
  CHECK(rho.trace_defect() < 1e-15);
  CHECK(rho.dims() == BipartiteDims{2, 2});
}

TEST_CASE("validation rejects each defect with its own error") {
  CHECK_THROWS_AS(validate_density(cmat::Identity(4, 4) / 4.0, {2, 3}),
                  DimensionMismatch);

  cmat skew = 0.25 * cmat::Identity(4, 4);
  skew(0, 3) = cd(0.0, 0.2);
  CHECK_THROWS_AS(validate_density(skew, {2, 2}), NotHermitian);

  CHECK_THROWS_AS(validate_density(cmat::Identity(4, 4), {2, 2}), NotUnitTrace);

  cmat indefinite = cmat::Zero(4, 4);
  indefinite(0, 0) = 1.0;
  indefinite(1, 1) = -0.5;
  indefinite(2, 2) = 0.5;
  try {
    validate_density(indefinite, {2, 2});
    FAIL("expected NotPositive");
  } catch (const NotPositive& e) {
    CHECK(std::abs(e.defect() + 0.5) < 1e-12);  // reports the signed eigenvalue
  }
}

TEST_CASE("partial transposition is a bit-exact involution") {
  Rng rng(5);
  const BipartiteDims dims{2, 3};
  const cmat h = random_hermitian(6, rng);

  const cmat once = partial_transpose_raw(h, dims, Subsystem::A);
  const cmat twice = partial_transpose_raw(once, dims, Subsystem::A);
  CHECK((twice - h).cwiseAbs().maxCoeff() == 0.0);

  // Transposing both sides is the full transpose.
  const cmat both = partial_transpose_raw(once, dims, Subsystem::B);
  CHECK((both - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bell state spectra before and after transposition") {
  const DensityMatrix rho = bell_state();
  const Spectrum lam = spectrum(rho);
  CHECK(std::abs(lam.values[0] - 1.0) < 1e-12);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(lam.values[i]) < 1e-12);

  const HermitianMatrix pt = partial_transpose(rho, Subsystem::A);
  const Spectrum lam_pt = spectrum(pt);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(lam_pt.values[i] - 0.5) < 1e-12);
  CHECK(std::abs(lam_pt.values[3] + 0.5) < 1e-12);

  CHECK(std::abs(trace_norm(pt) - 2.0) < 1e-12);
}

TEST_CASE("moments follow the spectra") {
  const DensityMatrix mixed =
      validate_density(0.25 * cmat::Identity(4, 4), {2, 2});
  const std::vector<double> m = moments(mixed, 3);
  REQUIRE(m.size() == 3);
  CHECK(std::abs(m[0] - 1.0) < 1e-12);
  CHECK(std::abs(m[1] - 0.25) < 1e-12);
  CHECK(std::abs(m[2] - 0.0625) < 1e-12);

  const std::vector<double> pt_m =
      moments(partial_transpose(bell_state(), Subsystem::A), 3);
  CHECK(std::abs(pt_m[0] - 1.0) < 1e-12);
  CHECK(std::abs(pt_m[1] - 1.0) < 1e-12);
  CHECK(std::abs(pt_m[2] - 0.25) < 1e-12);

  // Power-trace moments agree with spectral sums.
  Rng rng(17);
  const cmat h = random_hermitian(5, rng);
  const HermitianMatrix herm(h);
  const std::vector<double> via_power = moments(herm, 6);
  const Spectrum lam = spectrum(herm);
  for (int n = 1; n <= 6; ++n) {
    double via_spec = 0.0;
    for (int i = 0; i < 5; ++i) via_spec += std::pow(lam.values[i], n);
    CHECK(std::abs(via_power[n - 1] - via_spec) < 1e-9);
  }
}

TEST_CASE("distances and norms on known pairs") {
  const DensityMatrix bell = bell_state();
  const DensityMatrix mixed =
      validate_density(0.25 * cmat::Identity(4, 4), {2, 2});
  CHECK(std::abs(hs_distance_sq(bell, mixed) - 0.75) < 1e-12);
  CHECK(hs_distance_sq(bell, bell) == 0.0);
}

TEST_CASE("entropy of flat and pure spectra") {
  const DensityMatrix mixed =
      validate_density(0.25 * cmat::Identity(4, 4), {2, 2});
  CHECK(std::abs(entropy(mixed) - 2.0) < 1e-12);
  CHECK(std::abs(entropy(bell_state())) < 1e-9);
}

TEST_CASE("relative entropy against the maximally mixed state") {
  const DensityMatrix bell = bell_state();
  const DensityMatrix mixed =
      validate_density(0.25 * cmat::Identity(4, 4), {2, 2});
  CHECK(std::abs(relative_entropy(mixed, mixed)) < 1e-12);
  CHECK(std::abs(relative_entropy(bell, mixed) - 2.0) < 1e-9);
  // Support outside sigma's kernel diverges.
  CHECK(std::isinf(relative_entropy(mixed, bell)));
}

TEST_CASE("pinching the bell state in the computational basis") {
  const DensityMatrix bell = bell_state();
  Measurement comp;
  comp.subsystem = Subsystem::A;
  comp.basis_vectors = {cvec::Unit(2, 0), cvec::Unit(2, 1)};

  const DensityMatrix pinched = pinch(bell, comp);
  cmat expected = cmat::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  CHECK((pinched.entries() - expected).cwiseAbs().maxCoeff() < 1e-15);

  // Idempotence and norm contraction.
  const DensityMatrix twice = pinch(pinched, comp);
  CHECK((twice.entries() - pinched.entries()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(pinched.entries().squaredNorm() <= bell.entries().squaredNorm());
}

TEST_CASE("pinching satisfies the Pythagorean split") {
  const cmat raw = 0.6 * bell_raw() + 0.1 * cmat::Identity(4, 4);
  const DensityMatrix rho = validate_density(raw, {2, 2});
  Measurement comp;
  comp.subsystem = Subsystem::A;
  comp.basis_vectors = {cvec::Unit(2, 0), cvec::Unit(2, 1)};
  const DensityMatrix pinched = pinch(rho, comp);

  const double direct = hs_distance_sq(rho, pinched);
  const double split =
      rho.entries().squaredNorm() - pinched.entries().squaredNorm();
  CHECK(std::abs(direct - split) < 1e-12);

  // And the entropy identity for the relative entropy to the dephased state.
  const double lhs = relative_entropy(rho, pinched);
  const double rhs = entropy(pinched) - entropy(rho);
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("tensor respects the composite index convention") {
  cmat a = cmat::Zero(2, 2);
  a(0, 0) = 1.0;
  cmat b = cmat::Zero(2, 2);
  b(1, 1) = 1.0;
  const cmat prod = tensor(a, b);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double expected = (i == 1 && j == 1) ? 1.0 : 0.0;
      CHECK(std::abs(prod(i, j) - expected) < 1e-15);
    }
}

TEST_CASE("measurement validation") {
  Measurement bad;
  bad.subsystem = Subsystem::A;
  bad.basis_vectors = {cvec::Unit(2, 0), cvec::Unit(2, 0)};
  CHECK_THROWS_AS(check_measurement(bad, 2, 1e-9), NonOrthonormalBasis);

  Measurement short_basis;
  short_basis.subsystem = Subsystem::A;
  short_basis.basis_vectors = {cvec::Unit(2, 0)};
  CHECK_THROWS_AS(check_measurement(short_basis, 2, 1e-9), NonOrthonormalBasis);
}

TEST_CASE("sorted eigenvalue differences lower-bound the matrix distance") {
  Rng rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + trial % 5;
    const HermitianMatrix x(random_hermitian(dim, rng));
    const HermitianMatrix y(random_hermitian(dim, rng));
    const Spectrum lx = spectrum(x);
    const Spectrum ly = spectrum(y);
    const double eig_gap = (lx.values - ly.values).squaredNorm();
    CHECK(hs_distance_sq(x, y) >= eig_gap - 1e-9);
  }
}

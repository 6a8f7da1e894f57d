#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <initializer_list>

#include "qcorr/oracles.hpp"
#include "qcorr/spectra.hpp"

using namespace qcorr;

namespace {

Spectrum from_values(std::initializer_list<double> vals) {
  Eigen::VectorXd v(static_cast<int>(vals.size()));
  int i = 0;
  for (double x : vals) v[i++] = x;
  return make_spectrum(v);
}

}  // namespace

TEST_CASE("make_spectrum sorts descending and keeps the sum") {
  const Spectrum s = from_values({0.1, 0.7, 0.2});
  CHECK(s.size() == 3);
  CHECK(s.values[0] == 0.7);
  CHECK(s.values[1] == 0.2);
  CHECK(s.values[2] == 0.1);
  CHECK(std::abs(s.sum() - 1.0) < 1e-15);
}

TEST_CASE("negativity splits the signed eigenvalue mass") {
  const NegativityStats flat = negativity_stats(from_values({0.5, 0.5, 0.5, -0.5}));
  CHECK(std::abs(flat.negativity - 0.5) < 1e-15);
  CHECK(flat.n_plus == 3);
  CHECK(flat.n_minus == 1);

  const NegativityStats prob = negativity_stats(from_values({0.6, 0.3, 0.1}));
  CHECK(prob.negativity == 0.0);
  CHECK(prob.n_minus == 0);
  CHECK(prob.n_plus == 3);
}

TEST_CASE("projection of the flat indefinite spectrum") {
  const SimplexProjection p = simplex_project(from_values({0.5, 0.5, 0.5, -0.5}));
  CHECK(p.cut_index == 3);
  CHECK(std::abs(p.level_shift - 1.0 / 6.0) < 1e-15);
  CHECK(std::abs(p.bound_value - 1.0 / 3.0) < 1e-15);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(p.projected.values[i] - 1.0 / 3.0) < 1e-15);
  }
  CHECK(p.projected.values[3] == 0.0);
}

TEST_CASE("projection of the averaged maximally entangled spectrum") {
  const SimplexProjection p =
      simplex_project(from_values({0.75, 0.25, 0.25, -0.25}));
  CHECK(p.cut_index == 3);
  CHECK(std::abs(p.level_shift - 1.0 / 12.0) < 1e-15);
  CHECK(std::abs(p.bound_value - 1.0 / 12.0) < 1e-15);
  CHECK(std::abs(p.projected.values[0] - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(p.projected.values[1] - 1.0 / 6.0) < 1e-15);
  CHECK(std::abs(p.projected.values[2] - 1.0 / 6.0) < 1e-15);
  CHECK(p.projected.values[3] == 0.0);
}

TEST_CASE("probability vectors are fixed points of the projection") {
  const SimplexProjection p = simplex_project(from_values({0.5, 0.3, 0.2}));
  CHECK(p.bound_value == 0.0);
  CHECK(p.level_shift == 0.0);
  CHECK(p.cut_index == 3);
  CHECK(p.projected.values[0] == 0.5);
  CHECK(p.projected.values[1] == 0.3);
  CHECK(p.projected.values[2] == 0.2);
}

TEST_CASE("projection rejects inputs off the unit-sum plane") {
  Eigen::VectorXd v(3);
  v << 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(simplex_project(make_spectrum(v)), TraceNotOne);
}

TEST_CASE("projected vectors are valid probability vectors") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int len = 2 + trial % 9;
    Eigen::VectorXd v(len);
    for (int i = 0; i < len; ++i) v[i] = rng.normal();
    v.array() += (1.0 - v.sum()) / len;
    const Spectrum s = make_spectrum(v);
    const SimplexProjection p = simplex_project(s);

    double sum = 0.0;
    for (int i = 0; i < len; ++i) {
      CHECK(p.projected.values[i] >= 0.0);
      sum += p.projected.values[i];
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
    // The reported distance is the distance to the reported vector.
    const double dist = (s.values - p.projected.values).squaredNorm();
    CHECK(std::abs(dist - p.bound_value) < 1e-12);
  }
}

TEST_CASE("spectrum distance between pure and transposed spectra") {
  const Spectrum pure = from_values({1.0, 0.0, 0.0, 0.0});
  const Spectrum flat = from_values({0.5, 0.5, 0.5, -0.5});
  CHECK(std::abs(spectrum_distance_sq(pure, flat) - 1.0) < 1e-15);
  CHECK(spectrum_distance_sq(pure, pure) == 0.0);
  CHECK_THROWS_AS(spectrum_distance_sq(pure, from_values({1.0, 0.0})),
                  LengthMismatch);
}

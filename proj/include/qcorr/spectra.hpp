#pragma once

#include <Eigen/Dense>

#include "qcorr/types.hpp"

namespace qcorr {

/// Real eigenvalue vector sorted in descending order. `tol` is the magnitude
/// below which an entry counts as zero when classifying signs.
struct Spectrum {
  Eigen::VectorXd values;
  double tol = 1e-10;

  int size() const { return static_cast<int>(values.size()); }
  double sum() const { return values.sum(); }
};

/// Sorts `v` descending (stable) and wraps it as a Spectrum.
Spectrum make_spectrum(Eigen::VectorXd v, double tol = 1e-10);

struct NegativityStats {
  double negativity = 0.0;  // |sum of entries < -tol|
  int n_plus = 0;           // entries > tol
  int n_minus = 0;          // entries < -tol
};

/// Result of projecting a unit-sum spectrum onto the probability simplex.
/// The first `cut_index` entries are kept (shifted down by `level_shift`),
/// the rest are zeroed. `bound_value` is the squared Euclidean distance
/// between input and projection.
struct SimplexProjection {
  Spectrum projected;
  int cut_index = 0;      // n
  double level_shift = 0; // tau
  double bound_value = 0;
};

NegativityStats negativity_stats(const Spectrum& s);

/// Euclidean projection onto the probability simplex for a vector summing
/// to one: finds the minimal n with (sum of top n - 1)/n >= value[n+1]
/// (the empty tail counts as -infinity), shifts the top n down by that
/// level and zeroes the rest. Throws TraceNotOne if the input does not
/// sum to one within tolerance.
SimplexProjection simplex_project(const Spectrum& s);

/// Squared Euclidean distance between two equally long spectra.
double spectrum_distance_sq(const Spectrum& a, const Spectrum& b);

}  // namespace qcorr

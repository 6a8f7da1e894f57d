#include "qcorr/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qcorr {

Spectrum make_spectrum(Eigen::VectorXd v, double tol) {
  std::vector<double> tmp(v.data(), v.data() + v.size());
  std::stable_sort(tmp.begin(), tmp.end(), std::greater<double>());
  for (int i = 0; i < v.size(); ++i) v[i] = tmp[static_cast<size_t>(i)];
  return Spectrum{std::move(v), tol};
}

NegativityStats negativity_stats(const Spectrum& s) {
  NegativityStats st;
  double neg_sum = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    const double v = s.values[i];
    if (v > s.tol) {
      ++st.n_plus;
    } else if (v < -s.tol) {
      ++st.n_minus;
      neg_sum += v;
    }
  }
  st.negativity = -neg_sum + 0.0;  // avoid negative zero when no eigenvalue is negative
  return st;
}

SimplexProjection simplex_project(const Spectrum& s) {
  const int len = s.size();
  if (len == 0) throw TraceNotOne("simplex_project: empty spectrum", 1.0);
  const double sum_defect = std::abs(s.sum() - 1.0);
  if (sum_defect > std::max(s.tol, 1e-12 * len)) {
    throw TraceNotOne("simplex_project: input sums to " +
                          std::to_string(s.sum()) + ", expected 1",
                      sum_defect);
  }

  // Minimal n with tau_n >= value[n+1]; the empty tail is -infinity, so
  // n = len always terminates the scan and a valid distribution projects
  // onto itself with tau = 0.
  double head_sum = 0.0;
  int n = len;
  double tau = 0.0;
  for (int k = 1; k <= len; ++k) {
    head_sum += s.values[k - 1];
    const double t = (head_sum - 1.0) / k;
    const double next = (k < len) ? s.values[k]
                                  : -std::numeric_limits<double>::infinity();
    if (t >= next) {
      n = k;
      tau = t;
      break;
    }
  }

  SimplexProjection out;
  out.cut_index = n;
  out.level_shift = tau;
  Eigen::VectorXd proj = Eigen::VectorXd::Zero(len);
  double tail_sq = 0.0;
  for (int i = 0; i < len; ++i) {
    if (i < n) {
      proj[i] = s.values[i] - tau;
    } else {
      tail_sq += s.values[i] * s.values[i];
    }
  }
  out.bound_value = tail_sq + n * tau * tau;
  out.projected = Spectrum{std::move(proj), s.tol};
  return out;
}

double spectrum_distance_sq(const Spectrum& a, const Spectrum& b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("spectrum_distance_sq: lengths " +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
  return (a.values - b.values).squaredNorm();
}

}  // namespace qcorr

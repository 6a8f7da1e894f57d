#include "qcorr/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

namespace {

constexpr double kTwoLn2 = 2.0 * 0.6931471805599453094172321214581766;

Spectrum pt_spectrum(const DensityMatrix& rho, const Tolerances& tol) {
  return spectrum(partial_transpose(rho, Subsystem::A), tol);
}

}  // namespace

double l_ppt(const DensityMatrix& rho, const Tolerances& tol) {
  return simplex_project(pt_spectrum(rho, tol)).bound_value;
}

double l_ppt_prime(const NegativityStats& stats) {
  if (stats.n_minus == 0) return 0.0;
  const double nsq = stats.negativity * stats.negativity;
  return nsq / stats.n_plus + nsq / stats.n_minus;
}

SimplexProjection sipt_mean_projection(const DensityMatrix& rho,
                                       const Tolerances& tol) {
  const Spectrum lam = spectrum(rho, tol);
  const Spectrum lam_pt = pt_spectrum(rho, tol);
  Spectrum mean;
  mean.values = 0.5 * (lam.values + lam_pt.values);
  mean.tol = lam.tol;
  // Both inputs are sorted descending, so the elementwise mean is too.
  return simplex_project(mean);
}

double l_sipt(const DensityMatrix& rho, const Tolerances& tol) {
  const Spectrum lam = spectrum(rho, tol);
  const Spectrum lam_pt = pt_spectrum(rho, tol);
  const double gap_sq = spectrum_distance_sq(lam, lam_pt);
  return 0.25 * gap_sq + sipt_mean_projection(rho, tol).bound_value;
}

DiscordBounds discord_bounds(const DensityMatrix& rho, const Tolerances& tol) {
  const Spectrum lam_pt = pt_spectrum(rho, tol);

  DiscordBounds out;
  out.l_ppt = simplex_project(lam_pt).bound_value;
  out.l_ppt_prime = l_ppt_prime(negativity_stats(lam_pt));
  out.l_sipt = l_sipt(rho, tol);
  out.combined = std::max(out.l_ppt, out.l_sipt);
  out.deficit_bound_bits = out.combined / kTwoLn2;
  return out;
}

EntanglementBounds entanglement_bounds(const DensityMatrix& rho,
                                       const Tolerances& tol) {
  const Spectrum lam_pt = pt_spectrum(rho, tol);
  const NegativityStats stats = negativity_stats(lam_pt);
  const double nsq = stats.negativity * stats.negativity;
  const int m = rho.dims().dim_a;
  const int n = rho.dims().dim_b;

  EntanglementBounds out;
  out.e_hs_lemma = simplex_project(lam_pt).bound_value;
  out.e_hs_ratio = l_ppt_prime(stats);
  out.e_hs_floor = 4.0 * nsq / (m * n);
  if (m >= 2 && n >= 2) {
    const int d = std::min(m, n) - 1;
    out.e_hs_literature = nsq / double(d * d);
  }
  out.e_re_bound_bits = out.e_hs_lemma / kTwoLn2;
  return out;
}

}  // namespace qcorr

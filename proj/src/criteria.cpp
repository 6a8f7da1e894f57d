#include "qcorr/criteria.hpp"

#include <cmath>
#include <cstdio>

namespace qcorr {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Violated: return "violated";
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

std::string fmt(const char* pattern, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

}  // namespace

CriterionVerdict ppt_test(const DensityMatrix& rho, const Tolerances& tol) {
  const Spectrum pt = spectrum(partial_transpose(rho, Subsystem::A), tol);
  const double min_eig = pt.values[pt.size() - 1];
  const NegativityStats stats = negativity_stats(pt);

  CriterionVerdict out;
  out.verdict = min_eig < -tol.psd ? Verdict::Violated : Verdict::Satisfied;
  out.witness_value = stats.negativity;
  out.detail = fmt("negativity %.6g with min PT eigenvalue %.6g", stats.negativity,
                   min_eig);
  return out;
}

CriterionVerdict sipt_test(const DensityMatrix& rho, const Tolerances& tol) {
  const Spectrum lam = spectrum(rho, tol);
  const Spectrum lam_pt = spectrum(partial_transpose(rho, Subsystem::A), tol);
  const double witness = spectrum_distance_sq(lam, lam_pt);
  const double threshold = tol.sipt_scale * rho.side();

  CriterionVerdict out;
  out.verdict = witness > threshold ? Verdict::Violated : Verdict::Satisfied;
  out.witness_value = witness;
  out.detail = fmt("squared spectrum gap %.6g against threshold %.6g", witness,
                   threshold);
  return out;
}

CriterionVerdict sipt_moment_test(const DensityMatrix& rho, int n_limit,
                                  const Tolerances& tol) {
  const int side = rho.side();
  if (n_limit == 0) n_limit = side;
  if (n_limit < 3) {
    throw ParameterOutOfRange("sipt_moment_test: n_limit must be >= 3, got " +
                              std::to_string(n_limit));
  }
  const std::vector<double> mom = moments(rho, n_limit);
  const std::vector<double> mom_pt =
      moments(partial_transpose(rho, Subsystem::A), n_limit);

  CriterionVerdict out;
  for (int n = 3; n <= n_limit; ++n) {
    const double gap = std::abs(mom[n - 1] - mom_pt[n - 1]);
    if (gap > tol.moment_scale * n) {
      out.verdict = Verdict::Violated;
      out.witness_value = gap;
      out.detail = fmt("moment gap %.6g at order %.0f", gap, double(n));
      return out;
    }
  }
  // No violation: conclusive only when the order limit determines the
  // whole spectrum.
  out.verdict = n_limit >= side ? Verdict::Satisfied : Verdict::Inconclusive;
  out.witness_value = 0.0;
  out.detail = fmt("no moment gap through order %.0f (side %.0f)", double(n_limit),
                   double(side));
  return out;
}

}  // namespace qcorr

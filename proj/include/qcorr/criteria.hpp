#pragma once

#include <string>

#include "qcorr/qmat.hpp"

namespace qcorr {

enum class Verdict { Violated, Satisfied, Inconclusive };

const char* verdict_name(Verdict v);

struct CriterionVerdict {
  Verdict verdict = Verdict::Inconclusive;
  double witness_value = 0.0;
  std::string detail;
};

/// Positive-partial-transpose test. Violated (state is entangled) when the
/// partial transpose has an eigenvalue below -tol.psd; the witness is the
/// negativity.
CriterionVerdict ppt_test(const DensityMatrix& rho,
                          const Tolerances& tol = Tolerances{});

/// Spectrum change under partial transposition. The witness is the squared
/// L2 gap between the sorted spectra of rho and its partial transpose;
/// Violated means the state carries discord. Satisfied is inconclusive:
/// some discordant states (X states with equal anti-diagonal terms) keep
/// their spectrum.
CriterionVerdict sipt_test(const DensityMatrix& rho,
                           const Tolerances& tol = Tolerances{});

/// Moment-based variant: compares Tr(rho^n) against Tr((rho^PT)^n) for
/// n = 3..n_limit (orders 1 and 2 are preserved identically). n_limit = 0
/// selects the side length M*N, which makes the test equivalent to
/// comparing full spectra; with a smaller limit an unviolated result is
/// only Inconclusive.
CriterionVerdict sipt_moment_test(const DensityMatrix& rho, int n_limit = 0,
                                  const Tolerances& tol = Tolerances{});

}  // namespace qcorr

#pragma once

#include "qcorr/qmat.hpp"
#include "qcorr/spectra.hpp"

namespace qcorr {

// Analytic lower bounds on the geometric quantum discord of a bipartite
// state, all derived from the spectra of the state and of its partial
// transpose on subsystem A.  Units are squared Hilbert-Schmidt norm except
// for deficit_bound_bits, which is in bits.
struct DiscordBounds {
  double l_ppt = 0.0;        // simplex distance of the PT spectrum
  double l_ppt_prime = 0.0;  // coarser negativity-only variant
  double l_sipt = 0.0;       // spectrum-gap bound from PT invariance
  double combined = 0.0;     // max(l_ppt, l_sipt)
  double deficit_bound_bits = 0.0;  // lower bound on the one-way deficit
};

// Lower bounds on entanglement measures obtained from the negativity.
// e_hs_* bound the squared Hilbert-Schmidt distance to the separable set,
// e_re_bound_bits bounds the relative entropy of entanglement.
struct EntanglementBounds {
  double e_hs_lemma = 0.0;       // simplex bound applied to the PT spectrum
  double e_hs_ratio = 0.0;       // negativity ratio form, <= e_hs_lemma
  double e_hs_floor = 0.0;       // dimension-only floor 4N^2/(MN)
  double e_hs_literature = 0.0;  // N^2 / min{(M-1)^2, (N-1)^2}
  double e_re_bound_bits = 0.0;  // relative-entropy bound in bits
};

// Squared distance from the partial-transpose spectrum to the probability
// simplex.  Vanishes exactly when the state is PPT.
double l_ppt(const DensityMatrix& rho, const Tolerances& tol = {});

// Closed-form relaxation of l_ppt using only the negativity and the signed
// eigenvalue counts: N^2/n_plus + N^2/n_minus.  Zero when n_minus == 0.
double l_ppt_prime(const NegativityStats& stats);

// Bound driven by the gap between the spectra of rho and of its partial
// transpose: ||lambda - lambda'||^2 / 4 plus the simplex distance of the
// averaged spectrum (lambda + lambda') / 2.
double l_sipt(const DensityMatrix& rho, const Tolerances& tol = {});

// Simplex projection of the averaged spectrum used inside l_sipt, exposed
// for inspection of the active support and level shift.
SimplexProjection sipt_mean_projection(const DensityMatrix& rho,
                                       const Tolerances& tol = {});

// All discord bounds for one state, including the one-way deficit bound
// combined / (2 ln 2) in bits.
DiscordBounds discord_bounds(const DensityMatrix& rho, const Tolerances& tol = {});

// All entanglement bounds for one state.  For M == 1 or N == 1 the
// literature bound degenerates (its denominator vanishes); it is reported
// as 0 since every state of such a system is separable.
EntanglementBounds entanglement_bounds(const DensityMatrix& rho,
                                       const Tolerances& tol = {});

}  // namespace qcorr

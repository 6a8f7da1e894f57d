#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qcorr/qmat.hpp"
#include "qcorr/spectra.hpp"

namespace qcorr {

// Deterministic random source.  std::mt19937_64 has a fixed portable output
// sequence; the derived uniform and normal variates are built by hand so
// that seeded runs are bit-for-bit reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 bits of mantissa.
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Standard normal via Box-Muller (one spare value is cached).
  double normal();
  // Complex standard normal, real and imaginary parts N(0, 1).
  cd cnormal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Parametric state families used by the generators, the sweep command and
// the test suites.
struct StateSpec {
  enum class Family {
    MaxEntangled,    // |Phi_d><Phi_d| on d x d
    Werner,          // two-qubit Werner state, parameter p in [0, 1]
    Isotropic,       // d x d isotropic state with singlet fraction f
    BellDiagonal,    // two-qubit Bell-diagonal state with correlations c1..c3
    XState,          // two-qubit X state from diagonal and anti-diagonal data
    RandomGinibre,   // random mixed state of prescribed rank
    RandomCq,        // random classical-quantum state (zero discord on A)
    RandomSeparable, // random convex mixture of product states
    RandomProduct    // single random pure product state
  };

  Family family = Family::MaxEntangled;
  BipartiteDims dims{2, 2};
  double p = 0.0;                  // Werner mixing weight
  double f = 0.0;                  // isotropic singlet fraction
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;  // Bell-diagonal correlations
  std::vector<double> x_diag;      // X-state diagonal, length 4
  cd x_outer{0.0, 0.0};            // X-state <00|rho|11>
  cd x_inner{0.0, 0.0};            // X-state <01|rho|10>
  int rank = 0;                    // Ginibre rank, 0 means full
  int k = 0;                       // mixture size for cq/separable, 0 = default
  std::uint64_t seed = 0;

  static StateSpec max_entangled(int d);
  static StateSpec werner(double p);
  static StateSpec isotropic(int d, double f);
  static StateSpec bell_diagonal(double c1, double c2, double c3);
  static StateSpec x_state(const std::vector<double>& diag, cd outer, cd inner);
  static StateSpec random_ginibre(BipartiteDims dims, int rank, std::uint64_t seed);
  static StateSpec random_cq(BipartiteDims dims, int k, std::uint64_t seed);
  static StateSpec random_separable(BipartiteDims dims, int k, std::uint64_t seed);
  static StateSpec random_product(BipartiteDims dims, std::uint64_t seed);

  // Short printable identifier, e.g. "werner(p=0.2)".
  std::string id() const;
};

// Builds the density matrix described by a spec.  Throws ParameterOutOfRange
// when the parameters leave the physical region of the family.
DensityMatrix make_state(const StateSpec& spec, const Tolerances& tol = {});

struct OracleOptions {
  int restarts = 32;    // multi-start count for the compass search
  int grid_depth = 2;   // refinement levels after the coarse qubit grid
  double tol = 1e-10;   // a sweep improving less than this counts as converged
  int max_sweeps = 200; // sweep budget per restart
  std::uint64_t seed = 0;
  std::optional<Measurement> warm_start;  // used by restart 0 when present
};

struct OracleResult {
  double value = 0.0;
  std::optional<Measurement> argmin;
  std::string argmin_desc;
  int restarts_used = 0;
  bool converged = false;
  double spread = 0.0;  // best-vs-worst gap across restarts that finished
};

// Geometric quantum discord: minimum of ||rho - pinch(rho)||_HS^2 over
// rank-one projective measurements on subsystem A.  Qubit A uses a dense
// Bloch-sphere grid with local refinement; larger A uses a multi-start
// compass search over Givens rotation angles.
OracleResult gqd_oracle(const DensityMatrix& rho, const OracleOptions& opts = {});

// One-way information deficit: minimum of S(pinch(rho)) - S(rho) in bits
// over rank-one projective measurements on the given subsystem.
OracleResult deficit_oracle(const DensityMatrix& rho, const OracleOptions& opts = {},
                            Subsystem side = Subsystem::B);

// Reference minimizer for the distance from a unit-sum vector to the
// probability simplex.  Searches supports exhaustively for lengths up to 12
// and over contiguous top-k supports beyond that.  Returns the projected
// vector (sorted descending) and the squared distance.
SimplexProjection simplex_qp_oracle(const Spectrum& s);

struct SeparableSearchOptions {
  int k = 0;            // atom pool cap, 0 means (M*N)^2
  int iterations = 400; // Frank-Wolfe iteration budget
  std::uint64_t seed = 0;
  double tol = 1e-8;    // duality-gap target on the squared distance
};

// Upper bound on the squared Hilbert-Schmidt distance from rho to the
// separable set, via a fully corrective Frank-Wolfe search over mixtures of
// pure product states.  The result's value is the upper bound; converged
// reports whether the duality gap dropped below opts.tol.
OracleResult separable_upper_search(const DensityMatrix& rho,
                                    const SeparableSearchOptions& opts = {});

}  // namespace qcorr

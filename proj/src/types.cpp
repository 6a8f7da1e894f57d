#include "qcorr/types.hpp"

#include <cstdlib>

namespace qcorr {

Tolerances Tolerances::profile(const std::string& name) {
  Tolerances t;
  if (name.empty() || name == "default") return t;
  double scale = 0.0;
  if (name == "strict") {
    scale = 0.01;
  } else if (name == "loose") {
    scale = 100.0;
  } else {
    throw ParameterOutOfRange("unknown tolerance profile '" + name +
                              "' (expected default, strict or loose)");
  }
  t.herm *= scale;
  t.trace *= scale;
  t.psd *= scale;
  t.eig *= scale;
  t.basis *= scale;
  t.support *= scale;
  t.spectrum *= scale;
  t.sipt_scale *= scale;
  t.moment_scale *= scale;
  return t;
}

Tolerances Tolerances::from_env() {
  const char* profile_name = std::getenv("QCORR_TOL_PROFILE");
  if (profile_name == nullptr) return Tolerances{};
  return profile(profile_name);
}

}  // namespace qcorr

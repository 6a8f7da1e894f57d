#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "qcorr/bounds.hpp"
#include "qcorr/criteria.hpp"
#include "qcorr/oracles.hpp"

namespace qcorr {

// Condensed oracle outcome carried inside a report; the argmin basis is
// dropped, only the certificate numbers travel.
struct OracleSummary {
  double value = 0.0;
  int restarts_used = 0;
  bool converged = false;
  double spread = 0.0;
};

OracleSummary summarize(const OracleResult& r);

// Full analysis of one state: criterion verdicts, bound values, negativity
// bookkeeping and any oracle runs that were requested.
struct CorrelationReport {
  std::string version;
  std::string state_id;
  BipartiteDims dims{1, 1};
  CriterionVerdict ppt;
  CriterionVerdict sipt;
  CriterionVerdict sipt_moments;
  int moment_limit = 0;
  NegativityStats negativity;
  DiscordBounds discord;
  EntanglementBounds entanglement;
  bool floor_tighter = false;  // dimension floor beats the literature bound
  std::optional<OracleSummary> gqd;
  std::optional<OracleSummary> deficit_b;
  std::optional<OracleSummary> deficit_a;  // reported when dims are symmetric
  Tolerances tol;
};

enum class OracleChoice { None, Gqd, Deficit };

struct AnalyzeOptions {
  OracleChoice oracle = OracleChoice::None;
  int restarts = 32;
  std::uint64_t seed = 0;
  int moment_limit = 0;  // 0 selects the matrix side
  Tolerances tol;
};

CorrelationReport analyze(const DensityMatrix& rho, const std::string& state_id,
                          const AnalyzeOptions& opts = {});

// Human-readable multi-line rendering.
std::string render_text(const CorrelationReport& r);

// Lossless JSON round-trip for reports.
void to_json(nlohmann::json& j, const CorrelationReport& r);
void from_json(const nlohmann::json& j, CorrelationReport& r);

void to_json(nlohmann::json& j, const OracleSummary& s);
void from_json(const nlohmann::json& j, OracleSummary& s);
void to_json(nlohmann::json& j, const CriterionVerdict& v);
void from_json(const nlohmann::json& j, CriterionVerdict& v);
void to_json(nlohmann::json& j, const NegativityStats& s);
void from_json(const nlohmann::json& j, NegativityStats& s);
void to_json(nlohmann::json& j, const DiscordBounds& b);
void from_json(const nlohmann::json& j, DiscordBounds& b);
void to_json(nlohmann::json& j, const EntanglementBounds& b);
void from_json(const nlohmann::json& j, EntanglementBounds& b);
void to_json(nlohmann::json& j, const Tolerances& t);
void from_json(const nlohmann::json& j, Tolerances& t);

// Canonical matrix file format: {"dims": [M, N], "matrix": row-major nested
// arrays of [re, im] pairs}.  Loading validates the state; every parse
// failure names the offending field or entry.
nlohmann::json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& j, const Tolerances& tol = {});
DensityMatrix load_state_file(const std::string& path, const Tolerances& tol = {});
void save_state_file(const std::string& path, const DensityMatrix& rho);

}  // namespace qcorr

#include "qcorr/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qcorr {

OracleSummary summarize(const OracleResult& r) {
  OracleSummary s;
  s.value = r.value;
  s.restarts_used = r.restarts_used;
  s.converged = r.converged;
  s.spread = r.spread;
  return s;
}

CorrelationReport analyze(const DensityMatrix& rho, const std::string& state_id,
                          const AnalyzeOptions& opts) {
  CorrelationReport r;
  r.version = kVersion;
  r.state_id = state_id;
  r.dims = rho.dims();
  r.tol = opts.tol;

  r.ppt = ppt_test(rho, opts.tol);
  r.sipt = sipt_test(rho, opts.tol);
  r.moment_limit = opts.moment_limit == 0 ? rho.side() : opts.moment_limit;
  r.sipt_moments = sipt_moment_test(rho, r.moment_limit, opts.tol);

  r.negativity =
      negativity_stats(spectrum(partial_transpose(rho, Subsystem::A), opts.tol));
  r.discord = discord_bounds(rho, opts.tol);
  r.entanglement = entanglement_bounds(rho, opts.tol);
  r.floor_tighter =
      r.entanglement.e_hs_floor > r.entanglement.e_hs_literature;

  OracleOptions oo;
  oo.restarts = opts.restarts;
  oo.seed = opts.seed;
  if (opts.oracle == OracleChoice::Gqd) {
    r.gqd = summarize(gqd_oracle(rho, oo));
  } else if (opts.oracle == OracleChoice::Deficit) {
    r.deficit_b = summarize(deficit_oracle(rho, oo, Subsystem::B));
    if (rho.dims().dim_a == rho.dims().dim_b) {
      r.deficit_a = summarize(deficit_oracle(rho, oo, Subsystem::A));
    }
  }
  return r;
}

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

void render_oracle(std::ostringstream& out, const char* label,
                   const OracleSummary& s) {
  out << "  " << label << "  " << fmt("%.12g", s.value) << "  ("
      << (s.converged ? "converged" : "not converged") << ", "
      << s.restarts_used << (s.restarts_used == 1 ? " restart" : " restarts")
      << ", spread " << fmt("%.3g", s.spread) << ")\n";
}

}  // namespace

std::string render_text(const CorrelationReport& r) {
  std::ostringstream out;
  out << "state: " << r.state_id << "  [" << r.dims.dim_a << " x "
      << r.dims.dim_b << "]  (version " << r.version << ")\n\n";

  out << "criteria\n";
  out << "  ppt           " << verdict_name(r.ppt.verdict) << "  ("
      << r.ppt.detail << ")\n";
  out << "  sipt          " << verdict_name(r.sipt.verdict) << "  ("
      << r.sipt.detail << ")\n";
  out << "  sipt moments  " << verdict_name(r.sipt_moments.verdict) << "  ("
      << r.sipt_moments.detail << ", limit " << r.moment_limit << ")\n\n";

  out << "negativity: " << fmt("%.12g", r.negativity.negativity) << "  ("
      << r.negativity.n_plus << " positive, " << r.negativity.n_minus
      << " negative eigenvalues after partial transposition)\n\n";

  out << "discord lower bounds (squared HS distance)\n";
  out << "  l_ppt        " << fmt("%.12g", r.discord.l_ppt) << "\n";
  out << "  l_ppt_prime  " << fmt("%.12g", r.discord.l_ppt_prime) << "\n";
  out << "  l_sipt       " << fmt("%.12g", r.discord.l_sipt) << "\n";
  out << "  combined     " << fmt("%.12g", r.discord.combined) << "\n";
  out << "  one-way deficit bound  "
      << fmt("%.12g", r.discord.deficit_bound_bits) << " bits\n\n";

  out << "entanglement lower bounds\n";
  out << "  e_hs_lemma       " << fmt("%.12g", r.entanglement.e_hs_lemma)
      << "\n";
  out << "  e_hs_ratio       " << fmt("%.12g", r.entanglement.e_hs_ratio)
      << "\n";
  out << "  e_hs_floor       " << fmt("%.12g", r.entanglement.e_hs_floor)
      << (r.floor_tighter ? "  (tighter than the literature bound)" : "")
      << "\n";
  out << "  e_hs_literature  " << fmt("%.12g", r.entanglement.e_hs_literature)
      << "\n";
  out << "  e_re bound       " << fmt("%.12g", r.entanglement.e_re_bound_bits)
      << " bits\n";

  if (r.gqd || r.deficit_b || r.deficit_a) {
    out << "\noracles\n";
    if (r.gqd) render_oracle(out, "gqd        ", *r.gqd);
    if (r.deficit_b) render_oracle(out, "deficit (B)", *r.deficit_b);
    if (r.deficit_a) render_oracle(out, "deficit (A)", *r.deficit_a);
    if (r.deficit_b) {
      out << "  note: the deficit oracle dephases subsystem B, while the "
             "bound chain certifies measurements on A; for asymmetric states "
             "the two sides are not interchangeable.\n";
    }
  }
  return out.str();
}

void to_json(nlohmann::json& j, const OracleSummary& s) {
  j = nlohmann::json{{"value", s.value},
                     {"restarts_used", s.restarts_used},
                     {"converged", s.converged},
                     {"spread", s.spread}};
}

void from_json(const nlohmann::json& j, OracleSummary& s) {
  j.at("value").get_to(s.value);
  j.at("restarts_used").get_to(s.restarts_used);
  j.at("converged").get_to(s.converged);
  j.at("spread").get_to(s.spread);
}

void to_json(nlohmann::json& j, const CriterionVerdict& v) {
  j = nlohmann::json{{"verdict", verdict_name(v.verdict)},
                     {"witness", v.witness_value},
                     {"detail", v.detail}};
}

void from_json(const nlohmann::json& j, CriterionVerdict& v) {
  const std::string name = j.at("verdict").get<std::string>();
  if (name == "violated") {
    v.verdict = Verdict::Violated;
  } else if (name == "satisfied") {
    v.verdict = Verdict::Satisfied;
  } else if (name == "inconclusive") {
    v.verdict = Verdict::Inconclusive;
  } else {
    throw Error("unknown verdict name '" + name + "'");
  }
  j.at("witness").get_to(v.witness_value);
  j.at("detail").get_to(v.detail);
}

void to_json(nlohmann::json& j, const NegativityStats& s) {
  j = nlohmann::json{{"value", s.negativity},
                     {"n_plus", s.n_plus},
                     {"n_minus", s.n_minus}};
}

void from_json(const nlohmann::json& j, NegativityStats& s) {
  j.at("value").get_to(s.negativity);
  j.at("n_plus").get_to(s.n_plus);
  j.at("n_minus").get_to(s.n_minus);
}

void to_json(nlohmann::json& j, const DiscordBounds& b) {
  j = nlohmann::json{{"l_ppt", b.l_ppt},
                     {"l_ppt_prime", b.l_ppt_prime},
                     {"l_sipt", b.l_sipt},
                     {"combined", b.combined},
                     {"deficit_bound_bits", b.deficit_bound_bits}};
}

void from_json(const nlohmann::json& j, DiscordBounds& b) {
  j.at("l_ppt").get_to(b.l_ppt);
  j.at("l_ppt_prime").get_to(b.l_ppt_prime);
  j.at("l_sipt").get_to(b.l_sipt);
  j.at("combined").get_to(b.combined);
  j.at("deficit_bound_bits").get_to(b.deficit_bound_bits);
}

void to_json(nlohmann::json& j, const EntanglementBounds& b) {
  j = nlohmann::json{{"e_hs_lemma", b.e_hs_lemma},
                     {"e_hs_ratio", b.e_hs_ratio},
                     {"e_hs_floor", b.e_hs_floor},
                     {"e_hs_literature", b.e_hs_literature},
                     {"e_re_bound_bits", b.e_re_bound_bits}};
}

void from_json(const nlohmann::json& j, EntanglementBounds& b) {
  j.at("e_hs_lemma").get_to(b.e_hs_lemma);
  j.at("e_hs_ratio").get_to(b.e_hs_ratio);
  j.at("e_hs_floor").get_to(b.e_hs_floor);
  j.at("e_hs_literature").get_to(b.e_hs_literature);
  j.at("e_re_bound_bits").get_to(b.e_re_bound_bits);
}

void to_json(nlohmann::json& j, const Tolerances& t) {
  j = nlohmann::json{{"herm", t.herm},       {"trace", t.trace},
                     {"psd", t.psd},         {"eig", t.eig},
                     {"basis", t.basis},     {"support", t.support},
                     {"spectrum", t.spectrum}, {"sipt_scale", t.sipt_scale},
                     {"moment_scale", t.moment_scale}};
}

void from_json(const nlohmann::json& j, Tolerances& t) {
  j.at("herm").get_to(t.herm);
  j.at("trace").get_to(t.trace);
  j.at("psd").get_to(t.psd);
  j.at("eig").get_to(t.eig);
  j.at("basis").get_to(t.basis);
  j.at("support").get_to(t.support);
  j.at("spectrum").get_to(t.spectrum);
  j.at("sipt_scale").get_to(t.sipt_scale);
  j.at("moment_scale").get_to(t.moment_scale);
}

void to_json(nlohmann::json& j, const CorrelationReport& r) {
  j = nlohmann::json{
      {"version", r.version},
      {"state_id", r.state_id},
      {"dims", {r.dims.dim_a, r.dims.dim_b}},
      {"criteria",
       {{"ppt", r.ppt},
        {"sipt", r.sipt},
        {"sipt_moments", r.sipt_moments},
        {"moment_limit", r.moment_limit}}},
      {"negativity", r.negativity},
      {"discord_bounds", r.discord},
      {"entanglement_bounds", r.entanglement},
      {"floor_tighter", r.floor_tighter},
      {"tolerances", r.tol}};
  nlohmann::json oracles = nlohmann::json::object();
  if (r.gqd) oracles["gqd"] = *r.gqd;
  if (r.deficit_b) oracles["deficit_b"] = *r.deficit_b;
  if (r.deficit_a) oracles["deficit_a"] = *r.deficit_a;
  if (!oracles.empty()) j["oracles"] = oracles;
}

void from_json(const nlohmann::json& j, CorrelationReport& r) {
  j.at("version").get_to(r.version);
  j.at("state_id").get_to(r.state_id);
  r.dims.dim_a = j.at("dims").at(0).get<int>();
  r.dims.dim_b = j.at("dims").at(1).get<int>();
  const nlohmann::json& crit = j.at("criteria");
  crit.at("ppt").get_to(r.ppt);
  crit.at("sipt").get_to(r.sipt);
  crit.at("sipt_moments").get_to(r.sipt_moments);
  crit.at("moment_limit").get_to(r.moment_limit);
  j.at("negativity").get_to(r.negativity);
  j.at("discord_bounds").get_to(r.discord);
  j.at("entanglement_bounds").get_to(r.entanglement);
  j.at("floor_tighter").get_to(r.floor_tighter);
  j.at("tolerances").get_to(r.tol);
  r.gqd.reset();
  r.deficit_b.reset();
  r.deficit_a.reset();
  if (j.contains("oracles")) {
    const nlohmann::json& oracles = j.at("oracles");
    if (oracles.contains("gqd")) r.gqd = oracles.at("gqd").get<OracleSummary>();
    if (oracles.contains("deficit_b"))
      r.deficit_b = oracles.at("deficit_b").get<OracleSummary>();
    if (oracles.contains("deficit_a"))
      r.deficit_a = oracles.at("deficit_a").get<OracleSummary>();
  }
}

nlohmann::json state_to_json(const DensityMatrix& rho) {
  nlohmann::json j;
  j["dims"] = {rho.dims().dim_a, rho.dims().dim_b};
  nlohmann::json rows = nlohmann::json::array();
  const int side = rho.side();
  for (int r = 0; r < side; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < side; ++c) {
      const cd v = rho.entries()(r, c);
      row.push_back({v.real(), v.imag()});
    }
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j;
}

namespace {

[[noreturn]] void state_error(const std::string& what) {
  throw Error("state file: " + what);
}

}  // namespace

DensityMatrix state_from_json(const nlohmann::json& j, const Tolerances& tol) {
  if (!j.is_object()) state_error("top level must be an object");
  if (!j.contains("dims")) state_error("missing field 'dims'");
  if (!j.contains("matrix")) state_error("missing field 'matrix'");

  const nlohmann::json& dims_j = j.at("dims");
  if (!dims_j.is_array() || dims_j.size() != 2 ||
      !dims_j.at(0).is_number_integer() || !dims_j.at(1).is_number_integer()) {
    state_error("'dims' must be an array of two integers");
  }
  const BipartiteDims dims{dims_j.at(0).get<int>(), dims_j.at(1).get<int>()};
  if (dims.dim_a < 1 || dims.dim_b < 1) {
    state_error("'dims' entries must be positive");
  }
  const int side = dims.side();

  const nlohmann::json& rows = j.at("matrix");
  if (!rows.is_array() || static_cast<int>(rows.size()) != side) {
    state_error("'matrix' must have " + std::to_string(side) + " rows");
  }
  cmat raw(side, side);
  for (int r = 0; r < side; ++r) {
    const nlohmann::json& row = rows.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != side) {
      state_error("row " + std::to_string(r) + " must have " +
                  std::to_string(side) + " entries");
    }
    for (int c = 0; c < side; ++c) {
      const nlohmann::json& pair = row.at(c);
      if (!pair.is_array() || pair.size() != 2 || !pair.at(0).is_number() ||
          !pair.at(1).is_number()) {
        state_error("entry (" + std::to_string(r) + ", " + std::to_string(c) +
                    ") must be a [re, im] pair");
      }
      raw(r, c) = cd(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
  }
  return validate_density(raw, dims, tol);
}

DensityMatrix load_state_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open state file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("state file '" + path + "': " + e.what());
  }
  return state_from_json(j, tol);
}

void save_state_file(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write state file '" + path + "'");
  out << state_to_json(rho).dump(1) << "\n";
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace qcorr

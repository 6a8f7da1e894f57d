#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "qcorr/report.hpp"

using namespace qcorr;

TEST_CASE("analysis of a werner state with the gqd oracle") {
  const DensityMatrix rho = make_state(StateSpec::werner(0.2));
  AnalyzeOptions opts;
  opts.oracle = OracleChoice::Gqd;
  const CorrelationReport r = analyze(rho, "werner(p=0.2)", opts);

  CHECK(r.version == kVersion);
  CHECK(r.ppt.verdict == Verdict::Satisfied);
  CHECK(r.sipt.verdict == Verdict::Violated);
  CHECK(std::abs(r.sipt.witness_value - 0.04) < 1e-9);
  CHECK(std::abs(r.discord.combined - 0.01) < 1e-9);
  CHECK(r.moment_limit == 4);
  REQUIRE(r.gqd.has_value());
  CHECK(std::abs(r.gqd->value - 0.02) < 1e-4);
  CHECK(!r.deficit_b.has_value());
  CHECK(!r.floor_tighter);
}

TEST_CASE("deficit oracle fills both sides only for symmetric dims") {
  AnalyzeOptions opts;
  opts.oracle = OracleChoice::Deficit;
  opts.restarts = 4;

  const CorrelationReport square =
      analyze(make_state(StateSpec::werner(0.3)), "w", opts);
  CHECK(square.deficit_b.has_value());
  CHECK(square.deficit_a.has_value());

  const CorrelationReport rect =
      analyze(make_state(StateSpec::random_ginibre({2, 3}, 0, 1)), "g", opts);
  CHECK(rect.deficit_b.has_value());
  CHECK(!rect.deficit_a.has_value());
}

TEST_CASE("report json round trip is lossless") {
  AnalyzeOptions opts;
  opts.oracle = OracleChoice::Gqd;
  const CorrelationReport r =
      analyze(make_state(StateSpec::werner(0.35)), "werner(p=0.35)", opts);

  const nlohmann::json j = r;
  const CorrelationReport back = j.get<CorrelationReport>();

  CHECK(back.version == r.version);
  CHECK(back.state_id == r.state_id);
  CHECK(back.dims == r.dims);
  CHECK(back.ppt.verdict == r.ppt.verdict);
  CHECK(back.ppt.witness_value == r.ppt.witness_value);
  CHECK(back.ppt.detail == r.ppt.detail);
  CHECK(back.sipt.witness_value == r.sipt.witness_value);
  CHECK(back.sipt_moments.verdict == r.sipt_moments.verdict);
  CHECK(back.moment_limit == r.moment_limit);
  CHECK(back.negativity.negativity == r.negativity.negativity);
  CHECK(back.negativity.n_plus == r.negativity.n_plus);
  CHECK(back.discord.l_ppt == r.discord.l_ppt);
  CHECK(back.discord.l_sipt == r.discord.l_sipt);
  CHECK(back.discord.combined == r.discord.combined);
  CHECK(back.discord.deficit_bound_bits == r.discord.deficit_bound_bits);
  CHECK(back.entanglement.e_hs_lemma == r.entanglement.e_hs_lemma);
  CHECK(back.entanglement.e_re_bound_bits == r.entanglement.e_re_bound_bits);
  CHECK(back.floor_tighter == r.floor_tighter);
  REQUIRE(back.gqd.has_value());
  CHECK(back.gqd->value == r.gqd->value);
  CHECK(back.gqd->converged == r.gqd->converged);
  CHECK(back.tol.herm == r.tol.herm);
  CHECK(back.tol.moment_scale == r.tol.moment_scale);

  // Text serialization survives a parse round trip too.
  const nlohmann::json reparsed = nlohmann::json::parse(j.dump());
  CHECK(reparsed == j);
}

TEST_CASE("text rendering carries the headline facts") {
  const CorrelationReport r =
      analyze(make_state(StateSpec::werner(0.2)), "werner(p=0.2)", {});
  const std::string text = render_text(r);
  CHECK(text.find("werner(p=0.2)") != std::string::npos);
  CHECK(text.find("violated") != std::string::npos);
  CHECK(text.find("l_sipt") != std::string::npos);
  CHECK(text.find("0.01") != std::string::npos);
}

TEST_CASE("state files round trip exactly") {
  const DensityMatrix rho = make_state(StateSpec::random_ginibre({2, 3}, 0, 42));
  const char* path = "test_report_state.json";
  save_state_file(path, rho);
  const DensityMatrix back = load_state_file(path);
  CHECK(back.dims() == rho.dims());
  CHECK((back.entries() - rho.entries()).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path);
}

TEST_CASE("state parsing names the offending field") {
  const auto message_of = [](const nlohmann::json& j) {
    try {
      state_from_json(j);
      return std::string();
    } catch (const Error& e) {
      return std::string(e.what());
    }
  };

  CHECK(message_of(nlohmann::json::object()).find("dims") != std::string::npos);
  CHECK(message_of({{"dims", {2, 2}}}).find("matrix") != std::string::npos);
  CHECK(message_of({{"dims", {2, 2}}, {"matrix", {1, 2}}}).find("rows") !=
        std::string::npos);

  nlohmann::json bad_entry;
  bad_entry["dims"] = {1, 2};
  bad_entry["matrix"] = {{{1.0, 0.0}, 7.5}, {{0.0, 0.0}, {0.0, 0.0}}};
  CHECK(message_of(bad_entry).find("(0, 1)") != std::string::npos);

  // Validation failures surface as library errors as well.
  nlohmann::json not_positive;
  not_positive["dims"] = {1, 2};
  not_positive["matrix"] = {{{2.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {-1.0, 0.0}}};
  CHECK_THROWS_AS(state_from_json(not_positive), NotPositive);

  CHECK_THROWS_AS(load_state_file("does_not_exist.json"), Error);
}

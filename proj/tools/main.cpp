#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qcorr/report.hpp"

namespace {

using namespace qcorr;

struct FamilyFlags {
  std::string family;
  int d = 2;
  double p = 0.0;
  double f = 1.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  int m = 2, n = 2;
  int rank = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<double> x_diag{0.25, 0.25, 0.25, 0.25};
  std::vector<double> x_outer{0.0, 0.0};
  std::vector<double> x_inner{0.0, 0.0};
};

const std::vector<std::string> kFamilies = {
    "max-entangled", "werner", "isotropic", "bell-diagonal", "x-state",
    "ginibre",       "cq",     "separable", "product"};

void add_family_flags(CLI::App* cmd, FamilyFlags& ff) {
  cmd->add_option("--family", ff.family,
                  "state family (max-entangled, werner, isotropic, "
                  "bell-diagonal, x-state, ginibre, cq, separable, product)")
      ->check(CLI::IsMember(kFamilies));
  cmd->add_option("--d", ff.d, "local dimension for max-entangled/isotropic");
  cmd->add_option("--p", ff.p, "Werner mixing weight in [0, 1]");
  cmd->add_option("--f", ff.f, "isotropic singlet fraction in [0, 1]");
  cmd->add_option("--c1", ff.c1, "Bell-diagonal correlation c1");
  cmd->add_option("--c2", ff.c2, "Bell-diagonal correlation c2");
  cmd->add_option("--c3", ff.c3, "Bell-diagonal correlation c3");
  cmd->add_option("--M", ff.m, "subsystem A dimension for random families");
  cmd->add_option("--N", ff.n, "subsystem B dimension for random families");
  cmd->add_option("--rank", ff.rank, "Ginibre rank (0 = full)");
  cmd->add_option("--k", ff.k, "mixture size for cq/separable (0 = default)");
  cmd->add_option("--seed", ff.seed, "seed for random families and oracles");
  cmd->add_option("--x-diag", ff.x_diag, "X-state diagonal entries")
      ->expected(4);
  cmd->add_option("--x-outer", ff.x_outer, "X-state outer coherence re im")
      ->expected(2);
  cmd->add_option("--x-inner", ff.x_inner, "X-state inner coherence re im")
      ->expected(2);
}

StateSpec spec_from_flags(const FamilyFlags& ff) {
  if (ff.family == "max-entangled") return StateSpec::max_entangled(ff.d);
  if (ff.family == "werner") return StateSpec::werner(ff.p);
  if (ff.family == "isotropic") return StateSpec::isotropic(ff.d, ff.f);
  if (ff.family == "bell-diagonal")
    return StateSpec::bell_diagonal(ff.c1, ff.c2, ff.c3);
  if (ff.family == "x-state")
    return StateSpec::x_state(ff.x_diag, cd(ff.x_outer[0], ff.x_outer[1]),
                              cd(ff.x_inner[0], ff.x_inner[1]));
  if (ff.family == "ginibre")
    return StateSpec::random_ginibre({ff.m, ff.n}, ff.rank, ff.seed);
  if (ff.family == "cq") return StateSpec::random_cq({ff.m, ff.n}, ff.k, ff.seed);
  if (ff.family == "separable")
    return StateSpec::random_separable({ff.m, ff.n}, ff.k, ff.seed);
  if (ff.family == "product")
    return StateSpec::random_product({ff.m, ff.n}, ff.seed);
  throw Error("unknown family '" + ff.family + "'");
}

struct ToleranceFlags {
  std::string profile;
  std::optional<double> herm, trace, psd, eig, basis, support, spectrum,
      sipt_scale, moment_scale;
};

void add_tol_flags(CLI::App* cmd, ToleranceFlags& tf) {
  cmd->add_option("--tol-profile", tf.profile,
                  "tolerance profile (default, strict, loose); overrides "
                  "QCORR_TOL_PROFILE")
      ->check(CLI::IsMember({"default", "strict", "loose"}));
  cmd->add_option("--tol-herm", tf.herm, "hermiticity tolerance");
  cmd->add_option("--tol-trace", tf.trace, "unit-trace tolerance");
  cmd->add_option("--tol-psd", tf.psd, "positivity tolerance");
  cmd->add_option("--tol-eig", tf.eig, "eigenvalue support cutoff");
  cmd->add_option("--tol-basis", tf.basis, "basis orthonormality tolerance");
  cmd->add_option("--tol-support", tf.support, "kernel support tolerance");
  cmd->add_option("--tol-spectrum", tf.spectrum, "spectrum metadata tolerance");
  cmd->add_option("--tol-sipt-scale", tf.sipt_scale,
                  "per-dimension scale of the spectrum-gap threshold");
  cmd->add_option("--tol-moment-scale", tf.moment_scale,
                  "per-order scale of the moment-gap threshold");
}

Tolerances resolve_tolerances(const ToleranceFlags& tf) {
  Tolerances t = tf.profile.empty() ? Tolerances::from_env()
                                    : Tolerances::profile(tf.profile);
  if (tf.herm) t.herm = *tf.herm;
  if (tf.trace) t.trace = *tf.trace;
  if (tf.psd) t.psd = *tf.psd;
  if (tf.eig) t.eig = *tf.eig;
  if (tf.basis) t.basis = *tf.basis;
  if (tf.support) t.support = *tf.support;
  if (tf.spectrum) t.spectrum = *tf.spectrum;
  if (tf.sipt_scale) t.sipt_scale = *tf.sipt_scale;
  if (tf.moment_scale) t.moment_scale = *tf.moment_scale;
  return t;
}

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct AnalyzeFlags {
  std::string file;
  std::string oracle = "none";
  std::string format = "text";
  int restarts = 32;
  int moments_limit = 0;
};

int run_analyze(const AnalyzeFlags& af, const FamilyFlags& ff,
                const ToleranceFlags& tf) {
  const Tolerances tol = resolve_tolerances(tf);
  if (!af.file.empty() && !ff.family.empty()) {
    throw Error("give either --file or --family, not both");
  }
  if (af.file.empty() && ff.family.empty()) {
    throw Error("one of --file or --family is required");
  }

  DensityMatrix rho = af.file.empty()
                          ? make_state(spec_from_flags(ff), tol)
                          : load_state_file(af.file, tol);
  const std::string id = af.file.empty() ? spec_from_flags(ff).id() : af.file;

  AnalyzeOptions opts;
  opts.restarts = af.restarts;
  opts.seed = ff.seed;
  opts.moment_limit = af.moments_limit;
  opts.tol = tol;
  if (af.oracle == "gqd") {
    opts.oracle = OracleChoice::Gqd;
  } else if (af.oracle == "deficit") {
    opts.oracle = OracleChoice::Deficit;
  }

  const CorrelationReport report = analyze(rho, id, opts);
  if (af.format == "json") {
    std::cout << nlohmann::json(report).dump(2) << "\n";
  } else {
    std::cout << render_text(report);
  }
  return 0;
}

struct SweepFlags {
  std::string family;
  std::string range;
  std::string columns = "negativity,l_ppt,l_sipt,combined";
  std::string out = "-";
  int d = 2;
  int restarts = 32;
  std::uint64_t seed = 0;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

const std::vector<std::string> kSweepColumns = {
    "negativity", "l_ppt",    "l_ppt_prime",        "l_sipt",
    "combined",   "sipt_witness", "deficit_bound_bits", "gqd_oracle",
    "deficit_oracle", "dhs_exact"};

int run_sweep(const SweepFlags& sf, const ToleranceFlags& tf) {
  const Tolerances tol = resolve_tolerances(tf);
  if (sf.family != "werner" && sf.family != "isotropic" &&
      sf.family != "max-entangled") {
    throw Error("sweepable families are werner, isotropic and max-entangled");
  }

  double start = 0.0, stop = 0.0, step = 0.0;
  if (std::sscanf(sf.range.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3) {
    throw Error("--range must look like start:stop:step");
  }
  if (!(step > 0.0)) throw Error("--range step must be positive");

  const std::vector<std::string> columns = split_csv(sf.columns);
  if (columns.empty()) throw Error("--columns must name at least one column");
  for (const std::string& col : columns) {
    if (std::find(kSweepColumns.begin(), kSweepColumns.end(), col) ==
        kSweepColumns.end()) {
      throw Error("unknown sweep column '" + col + "'");
    }
    if (col == "dhs_exact" && sf.family != "max-entangled") {
      throw Error("column dhs_exact requires --family max-entangled");
    }
  }

  std::ofstream file_out;
  if (sf.out != "-") {
    file_out.open(sf.out);
    if (!file_out) throw Error("cannot write sweep file '" + sf.out + "'");
  }
  std::ostream& out = sf.out == "-" ? std::cout : file_out;

  const char* param_name = sf.family == "werner"
                               ? "p"
                               : (sf.family == "isotropic" ? "f" : "d");
  out << "# seed=" << sf.seed << ", version=" << kVersion << "\n";
  out << param_name;
  for (const std::string& col : columns) out << "," << col;
  out << "\n";

  // Step by index so rounding never pushes the parameter past the family's
  // valid range (0.05 is not exact in binary).
  const double slack = 1e-9 * std::max(1.0, std::abs(stop));
  const long row_count =
      start > stop + slack ? 0 : std::lround(std::floor((stop - start + slack) / step)) + 1;
  for (long row = 0; row < row_count; ++row) {
    const double param = std::min(start + double(row) * step, stop);
    StateSpec spec;
    if (sf.family == "werner") {
      spec = StateSpec::werner(param);
    } else if (sf.family == "isotropic") {
      spec = StateSpec::isotropic(sf.d, param);
    } else {
      const int d = int(std::lround(param));
      if (std::abs(param - d) > 1e-9) {
        throw Error("max-entangled sweep needs integer d, got " + num(param));
      }
      spec = StateSpec::max_entangled(d);
    }
    const DensityMatrix rho = make_state(spec, tol);

    const Spectrum pt = spectrum(partial_transpose(rho, Subsystem::A), tol);
    const NegativityStats stats = negativity_stats(pt);
    const DiscordBounds bounds = discord_bounds(rho, tol);
    std::optional<double> gqd_value, deficit_value;

    out << num(param);
    for (const std::string& col : columns) {
      double value = 0.0;
      if (col == "negativity") {
        value = stats.negativity;
      } else if (col == "l_ppt") {
        value = bounds.l_ppt;
      } else if (col == "l_ppt_prime") {
        value = bounds.l_ppt_prime;
      } else if (col == "l_sipt") {
        value = bounds.l_sipt;
      } else if (col == "combined") {
        value = bounds.combined;
      } else if (col == "deficit_bound_bits") {
        value = bounds.deficit_bound_bits;
      } else if (col == "sipt_witness") {
        value = sipt_test(rho, tol).witness_value;
      } else if (col == "dhs_exact") {
        value = 1.0 - 1.0 / double(rho.dims().dim_a);
      } else if (col == "gqd_oracle") {
        if (!gqd_value) {
          OracleOptions oo;
          oo.restarts = sf.restarts;
          oo.seed = sf.seed;
          gqd_value = gqd_oracle(rho, oo).value;
        }
        value = *gqd_value;
      } else if (col == "deficit_oracle") {
        if (!deficit_value) {
          OracleOptions oo;
          oo.restarts = sf.restarts;
          oo.seed = sf.seed;
          deficit_value = deficit_oracle(rho, oo).value;
        }
        value = *deficit_value;
      }
      out << "," << num(value);
    }
    out << "\n";
  }
  if (&out == &file_out && !file_out) {
    throw Error("write to '" + sf.out + "' failed");
  }
  return 0;
}

struct GenerateFlags {
  std::string out;
};

int run_generate(const GenerateFlags& gf, const FamilyFlags& ff,
                 const ToleranceFlags& tf) {
  const Tolerances tol = resolve_tolerances(tf);
  if (ff.family.empty()) throw Error("--family is required");
  save_state_file(gf.out, make_state(spec_from_flags(ff), tol));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectrum-based certificates of quantum correlations"};
  app.require_subcommand(1);

  FamilyFlags analyze_family, generate_family;
  ToleranceFlags analyze_tol, sweep_tol, generate_tol;
  AnalyzeFlags analyze_flags;
  SweepFlags sweep_flags;
  GenerateFlags generate_flags;

  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "analyze one state and print a report");
  analyze_cmd->add_option("--file", analyze_flags.file,
                          "state matrix file to analyze");
  add_family_flags(analyze_cmd, analyze_family);
  analyze_cmd
      ->add_option("--oracle", analyze_flags.oracle,
                   "oracle to run alongside the bounds")
      ->check(CLI::IsMember({"none", "gqd", "deficit"}));
  analyze_cmd->add_option("--restarts", analyze_flags.restarts,
                          "oracle restart count");
  analyze_cmd
      ->add_option("--format", analyze_flags.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  analyze_cmd->add_option("--moments-limit", analyze_flags.moments_limit,
                          "highest moment order to compare (0 = matrix side)");
  add_tol_flags(analyze_cmd, analyze_tol);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "tabulate quantities over a parameter range");
  sweep_cmd
      ->add_option("--family", sweep_flags.family,
                   "family to sweep (werner, isotropic, max-entangled)")
      ->required();
  sweep_cmd->add_option("--range", sweep_flags.range, "start:stop:step")
      ->required();
  sweep_cmd->add_option("--columns", sweep_flags.columns,
                        "comma-separated output columns");
  sweep_cmd->add_option("--d", sweep_flags.d,
                        "local dimension for isotropic sweeps");
  sweep_cmd->add_option("--restarts", sweep_flags.restarts,
                        "oracle restart count");
  sweep_cmd->add_option("--seed", sweep_flags.seed, "oracle seed");
  sweep_cmd->add_option("--out", sweep_flags.out,
                        "output file, - for standard output");
  add_tol_flags(sweep_cmd, sweep_tol);

  CLI::App* generate_cmd =
      app.add_subcommand("generate", "write a state to a matrix file");
  add_family_flags(generate_cmd, generate_family);
  generate_cmd->add_option("--out", generate_flags.out, "output path")
      ->required();
  add_tol_flags(generate_cmd, generate_tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (analyze_cmd->parsed()) {
      return run_analyze(analyze_flags, analyze_family, analyze_tol);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep(sweep_flags, sweep_tol);
    }
    if (generate_cmd->parsed()) {
      return run_generate(generate_flags, generate_family, generate_tol);
    }
  } catch (const qcorr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

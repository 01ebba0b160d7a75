// Command-line front end: every operation over the matrix JSON format plus the
// seeded verification suites. JSON results go to standard output, human
// summaries to standard error. Exit codes: 0 success, 1 precondition
// violation, 2 numerical failure.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <anglekit/anglekit.hpp>

#include "verify.hpp"

namespace {

using namespace anglekit;

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

/// Round to 15 significant digits so printed angles are stable display values.
double display_round(double value) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.15g", value);
  return std::strtod(buffer, nullptr);
}

std::vector<double> display_angles(const std::vector<double>& angles, bool degrees) {
  std::vector<double> out;
  out.reserve(angles.size());
  for (double a : angles) out.push_back(display_round(degrees ? kRadToDeg * a : a));
  return out;
}

void emit(const Json& payload) { std::cout << payload.dump() << "\n"; }

struct CommonOptions {
  double tol_override = 0.0;
  bool degrees = false;

  Tolerance tolerance() const {
    Tolerance tol;
    if (tol_override != 0.0) {
      tol.eq_tol = tol_override;
      tol.rank_tol = tol_override;
      tol.check();
    }
    return tol;
  }
};

Subspace load_subspace(const std::string& path, const Tolerance& tol) {
  return Subspace(read_matrix_file(path), tol);
}

int run_angles(const std::string& p_path, const std::string& q_path,
               const CommonOptions& common) {
  const Tolerance tol = common.tolerance();
  const PrincipalAngleSet pa =
      principal_angles(load_subspace(p_path, tol), load_subspace(q_path, tol), tol);
  emit(angles_to_json(display_angles(pa.angles, common.degrees), pa.cosines));
  std::fprintf(stderr, "angles: %zu principal angle(s), product rank %" PRIdPTR "\n",
               pa.angles.size(), static_cast<std::ptrdiff_t>(pa.product_rank));
  return 0;
}

int run_blockdiag(const std::string& p_path, const std::string& q_path,
                  const CommonOptions& common) {
  const Tolerance tol = common.tolerance();
  const JointBlockStructure jbs =
      joint_block_diagonalize(load_subspace(p_path, tol), load_subspace(q_path, tol), tol);
  Json out;
  out["dim_intersection"] = jbs.dim_intersection;
  out["pair_angles"] = display_angles(jbs.pair_angles, common.degrees);
  out["dim_orthogonal"] = jbs.dim_orthogonal;
  out["dim_exterior"] = jbs.dim_exterior;
  out["swapped"] = jbs.swapped;
  out["unitary"] = matrix_to_json(jbs.unitary);
  emit(out);
  std::fprintf(stderr,
               "blockdiag: intersection %" PRIdPTR ", %zu pair(s), right-angle part %" PRIdPTR
               ", exterior %" PRIdPTR "\n",
               static_cast<std::ptrdiff_t>(jbs.dim_intersection), jbs.pair_angles.size(),
               static_cast<std::ptrdiff_t>(jbs.dim_orthogonal),
               static_cast<std::ptrdiff_t>(jbs.dim_exterior));
  return 0;
}

int run_canon(const std::string& path, bool with_unitaries, const CommonOptions& common) {
  const Tolerance tol = common.tolerance();
  const InvolutionCanonicalForm form = canonical_form(read_matrix_file(path), tol);
  emit(canonical_form_to_json(form, with_unitaries));
  std::fprintf(stderr, "canon: epsilon %d, identity block %" PRIdPTR ", %zu pair(s)\n",
               form.epsilon, static_cast<std::ptrdiff_t>(form.k), form.xs.size());
  return 0;
}

int run_spectral(const std::string& path, const CommonOptions& common) {
  const Tolerance tol = common.tolerance();
  const SpectralPair pair = spectral_projections(read_matrix_file(path), tol);
  Json out;
  out["plus"] = matrix_to_json(pair.plus);
  out["minus"] = matrix_to_json(pair.minus);
  emit(out);
  std::fprintf(stderr, "spectral: projections of a %" PRIdPTR "-dimensional involution\n",
               static_cast<std::ptrdiff_t>(pair.plus.rows()));
  return 0;
}

int run_polar(const std::string& path, const CommonOptions& common) {
  const Tolerance tol = common.tolerance();
  const PolarFacts facts = polar_facts(read_matrix_file(path), tol);
  Json out;
  out["unitary"] = matrix_to_json(facts.unitary);
  out["modulus"] = matrix_to_json(facts.modulus);
  out["friedrichs_sine"] = facts.friedrichs_sine;
  emit(out);
  std::fprintf(stderr, "polar: friedrichs sine %.6g\n", facts.friedrichs_sine);
  return 0;
}

int run_ellipse(const std::string& path, const CommonOptions& common) {
  const Tolerance tol = common.tolerance();
  const NumericalRangeEllipse ellipse = ellipse_of(read_matrix_file(path), tol);
  emit(ellipse_to_json(ellipse));
  std::fprintf(stderr, "ellipse: semi-axes %.6g and %.6g\n", ellipse.semi_major,
               ellipse.semi_minor);
  return 0;
}

int run_dilate(const std::string& path, const std::string& kind, double x, bool x_given,
               const CommonOptions& common) {
  const Tolerance tol = common.tolerance();
  const ComplexMatrix a = read_matrix_file(path);
  DilationResult result;
  if (kind == "halmos") {
    result = halmos_dilation(a, tol);
  } else if (kind == "involution") {
    result = involution_dilation(a, tol);
  } else if (kind == "sa") {
    result = s_a_dilation(a);
  } else if (kind == "ta") {
    result = t_a_dilation(a);
  } else if (kind == "sa-tau") {
    result = partial_transpose_dilation(a);
  } else if (kind == "family") {
    if (!x_given) throw ValidationError("dilate: --kind family requires --x");
    result = s_a_family(a, x, tol);
  } else {
    throw ValidationError("dilate: unknown kind '" + kind + "'");
  }
  emit(dilation_to_json(result));
  std::fprintf(stderr, "dilate: %s result of size %" PRIdPTR "\n", to_string(result.kind),
               static_cast<std::ptrdiff_t>(result.matrix.rows()));
  return 0;
}

int run_gen(const std::string& kind, Index n, Index k, const std::vector<double>& xs,
            Index d, int epsilon, std::uint64_t seed) {
  if (kind == "involution") {
    InvolutionSpec spec;
    spec.epsilon = epsilon;
    spec.k = k;
    spec.xs = xs;
    if (spec.dim() != n) {
      throw ValidationError("gen: need n == k + 2 * (number of ratios)");
    }
    emit(matrix_to_json(random_involution(spec, seed)));
  } else if (kind == "subspace") {
    emit(matrix_to_json(random_subspace(n, d, seed).basis()));
  } else if (kind == "contraction") {
    emit(matrix_to_json(random_contraction(n, seed)));
  } else {
    throw ValidationError("gen: unknown kind '" + kind + "'");
  }
  std::fprintf(stderr, "gen: %s with n=%" PRIdPTR ", seed=%" PRIu64 "\n", kind.c_str(),
               static_cast<std::ptrdiff_t>(n), seed);
  return 0;
}

int run_verify(const std::string& suite, Index n, int trials, std::uint64_t seed,
               const CommonOptions& common) {
  verify::SuiteOptions options;
  options.dimension_cap = n;
  options.trials = trials;
  options.seed = seed;
  options.tol = common.tolerance();
  if (common.tol_override != 0.0) options.threshold = common.tol_override;

  const verify::SuiteReport report = verify::run_suite(suite, options);
  Json out;
  out["suite"] = report.suite;
  out["trials"] = report.trials;
  out["seed"] = report.base_seed;
  out["threshold"] = report.threshold;
  // JSON has no notation for infinity (a trial that threw has residual inf),
  // so non-finite residuals are encoded as the string "inf".
  const auto residual_json = [](double r) {
    return std::isfinite(r) ? Json(r) : Json("inf");
  };
  out["max_residual"] = residual_json(report.max_residual);
  Json failures = Json::array();
  for (const verify::TrialFailure& f : report.failures) {
    Json entry;
    entry["trial"] = f.trial;
    entry["seed"] = f.seed;
    entry["residual"] = residual_json(f.residual);
    failures.push_back(entry);
  }
  out["failures"] = failures;
  emit(out);

  if (report.failures.empty()) {
    std::fprintf(stderr, "verify %s: %d trial(s) passed, max residual %.3g <= %.3g\n",
                 suite.c_str(), report.trials, report.max_residual, report.threshold);
    return 0;
  }
  std::fprintf(stderr, "verify %s: %zu failure(s); first reproducing seed %" PRIu64 "\n",
               suite.c_str(), report.failures.size(), report.failures.front().seed);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Angles, canonical forms and dilations of matrix involutions"};
  app.require_subcommand(1);

  CommonOptions common;

  std::string p_path, q_path, in_path;
  bool with_unitaries = false;
  std::string dilate_kind;
  double family_x = 1.0;

  std::string gen_kind;
  Index gen_n = 0;
  Index gen_k = 0;
  std::vector<double> gen_xs;
  Index gen_d = 1;
  int gen_epsilon = 1;
  std::uint64_t gen_seed = 1;

  std::string verify_suite;
  Index verify_n = 8;
  int verify_trials = 200;
  std::uint64_t verify_seed = 1;

  const auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", common.tol_override,
                    "Override both tolerances (and the verify pass threshold)");
  };

  CLI::App* angles = app.add_subcommand("angles", "Principal angles between two subspaces");
  angles->add_option("p", p_path, "Orthonormal basis of the first subspace (matrix JSON)")
      ->required();
  angles->add_option("q", q_path, "Orthonormal basis of the second subspace (matrix JSON)")
      ->required();
  angles->add_flag("--degrees", common.degrees, "Print angles in degrees (display only)");
  add_tol(angles);

  CLI::App* blockdiag =
      app.add_subcommand("blockdiag", "Joint block structure of two subspaces");
  blockdiag->add_option("p", p_path, "Orthonormal basis of the first subspace")->required();
  blockdiag->add_option("q", q_path, "Orthonormal basis of the second subspace")->required();
  blockdiag->add_flag("--degrees", common.degrees, "Print angles in degrees (display only)");
  add_tol(blockdiag);

  CLI::App* canon = app.add_subcommand("canon", "Canonical form of an involution");
  canon->add_option("s", in_path, "Involution (matrix JSON)")->required();
  canon->add_flag("--with-unitaries", with_unitaries, "Include the conjugating unitaries");
  add_tol(canon);

  CLI::App* spectral = app.add_subcommand("spectral", "Spectral projections of an involution");
  spectral->add_option("s", in_path, "Involution (matrix JSON)")->required();
  add_tol(spectral);

  CLI::App* polar = app.add_subcommand("polar", "Polar data of an involution");
  polar->add_option("s", in_path, "Involution (matrix JSON)")->required();
  add_tol(polar);

  CLI::App* ellipse = app.add_subcommand("ellipse", "Numerical range ellipse of an involution");
  ellipse->add_option("s", in_path, "Involution (matrix JSON)")->required();
  add_tol(ellipse);

  CLI::App* dilate = app.add_subcommand("dilate", "Dilations with a prescribed corner");
  dilate->add_option("--kind", dilate_kind, "halmos | involution | sa | ta | sa-tau | family")
      ->required();
  CLI::Option* x_option =
      dilate->add_option("--x", family_x, "Power parameter for --kind family");
  dilate->add_option("a", in_path, "Corner matrix (matrix JSON)")->required();
  add_tol(dilate);

  CLI::App* gen = app.add_subcommand("gen", "Deterministic random instances");
  gen->add_option("--kind", gen_kind, "involution | subspace | contraction")->required();
  gen->add_option("--n", gen_n, "Dimension")->required();
  gen->add_option("--k", gen_k, "Identity block size (involution)");
  gen->add_option("--xs", gen_xs, "Coupling ratios in (0, 1] (involution)");
  gen->add_option("--d", gen_d, "Subspace dimension (subspace)");
  gen->add_option("--epsilon", gen_epsilon, "Sign of the identity block (involution)");
  gen->add_option("--seed", gen_seed, "Seed")->required();

  CLI::App* verify_cmd = app.add_subcommand("verify", "Seeded identity suites");
  verify_cmd
      ->add_option("--suite", verify_suite,
                   "prop1 | cor4 | cor5 | cor6 | thm1 | cor8 | cor10 | prop12 | cor11")
      ->required();
  verify_cmd->add_option("--n", verify_n, "Dimension cap for random instances");
  verify_cmd->add_option("--trials", verify_trials, "Number of trials");
  verify_cmd->add_option("--seed", verify_seed, "Base seed; trial t derives from seed + t");
  add_tol(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (common.tol_override != 0.0) common.tolerance();  // validate the range once
    if (angles->parsed()) return run_angles(p_path, q_path, common);
    if (blockdiag->parsed()) return run_blockdiag(p_path, q_path, common);
    if (canon->parsed()) return run_canon(in_path, with_unitaries, common);
    if (spectral->parsed()) return run_spectral(in_path, common);
    if (polar->parsed()) return run_polar(in_path, common);
    if (ellipse->parsed()) return run_ellipse(in_path, common);
    if (dilate->parsed()) {
      return run_dilate(in_path, dilate_kind, family_x, x_option->count() > 0, common);
    }
    if (gen->parsed()) {
      return run_gen(gen_kind, gen_n, gen_k, gen_xs, gen_d, gen_epsilon, gen_seed);
    }
    if (verify_cmd->parsed()) {
      return run_verify(verify_suite, verify_n, verify_trials, verify_seed, common);
    }
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 2;
  }
  return 1;
}

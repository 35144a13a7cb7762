#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_common.hpp"
#include "ladderkit/lattice.hpp"
#include "ladderkit/recurrence.hpp"
#include "verify.hpp"

namespace ladderkit::cli {

namespace {

void emit_csv(const std::vector<Row>& rows, std::FILE* out) {
  if (rows.empty()) return;
  std::string header;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
    if (!header.empty()) header += ',';
    header += it.key();
  }
  std::fputs((header + "\n").c_str(), out);
  for (const Row& row : rows) {
    std::string line;
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (!line.empty()) line += ',';
      line += format_cell(it.value());
    }
    std::fputs((line + "\n").c_str(), out);
  }
}

void emit_json(const RunConfig& config, const std::string& command,
               const std::vector<Row>& rows, std::FILE* out) {
  nlohmann::ordered_json doc;
  doc["tool"] = "ladderkit";
  doc["version"] = kToolVersion;
  doc["command"] = command;
  doc["config"] = config.echo();
  doc["rows"] = rows;
  std::fputs((doc.dump(2) + "\n").c_str(), out);
}

}  // namespace

void emit(const RunConfig& config, const std::string& command,
          const std::vector<Row>& rows, std::FILE* out) {
  if (config.format == "csv")
    emit_csv(rows, out);
  else if (config.format == "json")
    emit_json(config, command, rows, out);
  else
    throw usage_error("unknown format '" + config.format + "' (expected csv or json)");
}

namespace {

int cmd_eval(const RunConfig& config) {
  const ParamPoint point = config.point();
  const Complex c = config.seed_c();
  std::vector<Row> rows;
  for (double t : config.t_grid()) {
    const Complex tc(t, 0);
    const auto series = specfun::series_value(point, tc, config.tol);
    const Complex canon = recurrence::canonical_solution(point, tc, c);
    Row r;
    r["t"] = t;
    r["m_re"] = series.value.real();
    r["m_im"] = series.value.imag();
    r["m_abs_err"] = series.abs_error_bound;
    r["m_terms"] = series.terms_used;
    r["canonical_re"] = canon.real();
    r["canonical_im"] = canon.imag();
    rows.push_back(std::move(r));
  }
  emit(config, "eval", rows, stdout);
  return kExitOk;
}

int cmd_step(const RunConfig& config) {
  const ParamPoint point = config.point();
  const StepKind kind = step_from_token(config.step_token_str);
  if (point.family == Family::Chg && step_param_index(kind) == 2)
    throw usage_error("zeta step on the confluent family");
  const StepKind up = step_up_kind(kind);
  const Complex c = config.seed_c();

  // gamma = 0 gates the whole command, before any normalization is touched
  const ParamPoint step_source = step_is_raise(kind) ? point : point.shifted(kind);
  if (canonical::make_step(step_source, up).degenerate)
    throw degeneracy_error("step " + config.step_token_str + " at " + point.to_string() +
                           ": gamma = 0");

  std::vector<Row> rows;
  for (double t : config.t_grid()) {
    const Complex tc(t, 0);
    Complex input, output, oracle;
    if (step_is_raise(kind)) {
      const canonical::GenFnCoeffs coeffs = canonical::make_step(point, up);
      input = recurrence::canonical_solution(point, tc, c, up);
      const Complex dq = recurrence::canonical_solution_dt(point, tc, c, up);
      output = recurrence::apply_raise(
          recurrence::LadderStep{coeffs, recurrence::StepDirection::Raise}, input, dq, tc);
      oracle = recurrence::canonical_solution(coeffs.target(), tc, c, up);
    } else {
      const ParamPoint below = point.shifted(kind);
      const canonical::GenFnCoeffs coeffs = canonical::make_step(below, up);
      input = recurrence::canonical_solution(point, tc, c, up);
      const Complex dq = recurrence::canonical_solution_dt(point, tc, c, up);
      output = recurrence::apply_lower(
          recurrence::LadderStep{coeffs, recurrence::StepDirection::Lower}, input, dq, tc);
      oracle = recurrence::canonical_solution(below, tc, c, up);
    }
    Row r;
    r["t"] = t;
    r["q_re"] = input.real();
    r["q_im"] = input.imag();
    r["out_re"] = output.real();
    r["out_im"] = output.imag();
    r["oracle_re"] = oracle.real();
    r["oracle_im"] = oracle.imag();
    r["rel_dev"] = std::abs(output - oracle) / std::max(1.0, std::abs(oracle));
    rows.push_back(std::move(r));
  }
  emit(config, "step", rows, stdout);
  return kExitOk;
}

std::vector<StepKind> parse_path(const std::string& path) {
  std::vector<StepKind> steps;
  std::string token;
  for (char ch : path + ",") {
    if (ch == ',') {
      if (!token.empty()) steps.push_back(step_from_token(token));
      token.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      token += ch;
    }
  }
  return steps;
}

int cmd_walk(const RunConfig& config) {
  const ParamPoint point = config.point();
  std::vector<StepKind> path;
  try {
    path = parse_path(config.path_str);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  const Complex c = config.seed_c();

  std::vector<Row> rows;
  for (double t : config.t_grid()) {
    const Complex tc(t, 0);
    const Complex seed = recurrence::canonical_solution(point, tc, c);
    const Complex seed_dt = recurrence::canonical_solution_dt(point, tc, c);
    lattice::KnotIndex start{point, std::vector<int>(point.param_count(), 0)};
    std::vector<lattice::WalkRecord> trace;
    lattice::WalkOptions opts;
    opts.tol = config.tol;
    lattice::walk(seed, seed_dt, start, path, tc, opts, &trace);
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const lattice::WalkRecord& rec = trace[i];
      Row r;
      r["t"] = t;
      r["idx"] = static_cast<long long>(i);
      r["token"] = i == 0 ? std::string("seed") : step_token(path[i - 1]);
      r["alpha"] = rec.point.alpha.real();
      r["beta"] = rec.point.beta.real();
      r["zeta"] = point.family == Family::Hg ? fmt17(rec.point.zeta.real()) : std::string();
      r["q_re"] = rec.value.real();
      r["q_im"] = rec.value.imag();
      r["oracle_re"] = rec.reference.real();
      r["oracle_im"] = rec.reference.imag();
      r["rel_dev"] = rec.rel_deviation;
      rows.push_back(std::move(r));
    }
  }
  emit(config, "walk", rows, stdout);
  return kExitOk;
}

int cmd_verify(const RunConfig& config) {
  std::vector<Row> rows;
  const bool ok = run_verify_suite(config.suite, config.inject_defect, rows);
  emit(config, "verify", rows, stdout);
  return ok ? kExitOk : kExitVerifyFailure;
}

// flat key=value file; values apply only where no flag was given, so flags
// always win
void apply_config_file(CLI::App* cmd, RunConfig& config) {
  if (config.config_path.empty()) return;
  std::ifstream in(config.config_path);
  if (!in) throw usage_error("cannot open config file '" + config.config_path + "'");
  const std::map<std::string, std::pair<std::string, std::string*>> keys = {
      {"family", {"--family", &config.family_token}},
      {"alpha", {"--alpha", &config.alpha_str}},
      {"beta", {"--beta", &config.beta_str}},
      {"zeta", {"--zeta", &config.zeta_str}},
      {"t-start", {"--t-start", &config.t_start_str}},
      {"t-stop", {"--t-stop", &config.t_stop_str}},
      {"format", {"--format", &config.format}},
      {"seed-c", {"--seed-c", &config.seed_c_str}},
      {"path", {"--path", &config.path_str}},
      {"step", {"--step", &config.step_token_str}},
      {"suite", {"--suite", &config.suite}},
  };
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw usage_error("config line " + std::to_string(line_no) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (auto it = keys.find(key); it != keys.end()) {
      if (cmd->count(it->second.first) == 0) *it->second.second = value;
    } else if (key == "t-count") {
      if (cmd->count("--t-count") == 0) config.t_count = std::stoi(value);
    } else if (key == "tol") {
      if (cmd->count("--tol") == 0) config.tol = std::stod(value);
    } else {
      throw usage_error("config line " + std::to_string(line_no) + ": unknown key '" +
                        key + "'");
    }
  }
}

void add_common_options(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--family", config.family_token, "Equation family: CHG or HG")
      ->capture_default_str();
  cmd->add_option("--alpha", config.alpha_str, "alpha parameter (decimal string)")
      ->capture_default_str();
  cmd->add_option("--beta", config.beta_str, "beta parameter (decimal string)")
      ->capture_default_str();
  cmd->add_option("--zeta", config.zeta_str, "zeta parameter (HG family only)")
      ->capture_default_str();
  cmd->add_option("--t-start", config.t_start_str,
                  "first grid point (values below the 1e-6 floor are clamped)")
      ->capture_default_str();
  cmd->add_option("--t-stop", config.t_stop_str, "last grid point")
      ->capture_default_str();
  cmd->add_option("--t-count", config.t_count, "number of grid points (>= 1)")
      ->capture_default_str();
  cmd->add_option("--tol", config.tol, "series truncation tolerance")
      ->capture_default_str();
  cmd->add_option("--format", config.format, "output format: csv or json")
      ->capture_default_str();
  cmd->add_option("--seed-c", config.seed_c_str, "integration constant C as 're,im'")
      ->capture_default_str();
  cmd->add_option("--config", config.config_path,
                  "flat key=value config file; flags override it");
}

int dispatch(int argc, char** argv) {
  RunConfig config;
  CLI::App app{
      "ladderkit - ladder recurrences and lattice verification for the\n"
      "confluent and Gauss hypergeometric families.\n\n"
      "Exit codes: 0 success, 1 verification failure, 2 usage/config error,\n"
      "3 mathematical degeneracy (gamma = 0 on the requested step).\n"};
  app.require_subcommand(1);

  CLI::App* eval = app.add_subcommand(
      "eval",
      "Evaluate the series and the canonical solution on the t grid.\n"
      "CSV columns: t, m_re, m_im, m_abs_err, m_terms, canonical_re, canonical_im");
  add_common_options(eval, config);

  CLI::App* step = app.add_subcommand(
      "step",
      "Apply one ladder step against the series oracle.\n"
      "CSV columns: t, q_re, q_im, out_re, out_im, oracle_re, oracle_im, rel_dev");
  add_common_options(step, config);
  step->add_option("--step", config.step_token_str,
                   "step token: a+, a-, b+, b-, z+, z-")
      ->capture_default_str();

  CLI::App* walk = app.add_subcommand(
      "walk",
      "Walk a comma-separated path of steps from the seed knot.\n"
      "CSV columns: t, idx, token, alpha, beta, zeta, q_re, q_im, oracle_re, "
      "oracle_im, rel_dev");
  add_common_options(walk, config);
  walk->add_option("--path", config.path_str,
                   "comma-separated tokens from {a+, a-, b+, b-, z+, z-}");

  CLI::App* verify = app.add_subcommand(
      "verify",
      "Run a verification suite over built-in grids.\n"
      "CSV columns: suite, check, status, max_residual, threshold");
  add_common_options(verify, config);
  verify
      ->add_option("--suite", config.suite,
                   "coeffs | invariance | ladder | trinomial | normalization | "
                   "zero-curvature | all")
      ->capture_default_str();
  verify->add_flag("--inject-defect", config.inject_defect,
                   "corrupt one coefficient set to exercise the failure path")
      ->group("");  // hidden test hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (eval->parsed()) {
      apply_config_file(eval, config);
      return cmd_eval(config);
    }
    if (step->parsed()) {
      apply_config_file(step, config);
      return cmd_step(config);
    }
    if (walk->parsed()) {
      apply_config_file(walk, config);
      return cmd_walk(config);
    }
    if (verify->parsed()) {
      apply_config_file(verify, config);
      return cmd_verify(config);
    }
    std::fputs("no subcommand given\n", stderr);
    return kExitUsage;
  } catch (const degeneracy_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDegeneracy;
  } catch (const usage_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}

}  // namespace

}  // namespace ladderkit::cli

int main(int argc, char** argv) { return ladderkit::cli::dispatch(argc, argv); }

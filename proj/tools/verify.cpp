#include "verify.hpp"

#include <cmath>
#include <random>

#include "ladderkit/lattice.hpp"
#include "ladderkit/recurrence.hpp"

namespace ladderkit::cli {

namespace {

using canonical::GenFnCoeffs;
using recurrence::LadderStep;
using recurrence::StepDirection;

struct Reporter {
  std::vector<Row>& rows;
  bool all_passed = true;

  void add(const std::string& suite, const std::string& check, double max_residual,
           double threshold, bool structural_ok = true) {
    const bool pass = structural_ok && max_residual <= threshold;
    Row r;
    r["suite"] = suite;
    r["check"] = check;
    r["status"] = pass ? "pass" : "fail";
    r["max_residual"] = max_residual;
    r["threshold"] = threshold;
    rows.push_back(std::move(r));
    all_passed = all_passed && pass;
  }
};

const double kParamGrid[] = {0.5, 1.5, 2.5, 3.5};

std::vector<GenFnCoeffs> constructor_grid() {
  std::vector<GenFnCoeffs> steps;
  for (double a : kParamGrid)
    for (double b : kParamGrid) {
      steps.push_back(canonical::chg_alpha_step({a, 0}, {b, 0}));
      steps.push_back(canonical::chg_beta_step({a, 0}, {b, 0}));
      for (double z : kParamGrid) {
        steps.push_back(canonical::hg_alpha_step({a, 0}, {b, 0}, {z, 0}));
        steps.push_back(canonical::hg_beta_step({a, 0}, {b, 0}, {z, 0}));
        steps.push_back(canonical::hg_zeta_step({a, 0}, {b, 0}, {z, 0}));
      }
    }
  return steps;
}

std::string step_name(const GenFnCoeffs& s) {
  return (s.source.family == Family::Chg ? std::string("chg ") : std::string("hg ")) +
         step_token(s.step) + " at " + s.source.to_string();
}

struct LadderCase {
  ParamPoint point;
  StepKind kind;
};

std::vector<LadderCase> ladder_grid() {
  std::vector<LadderCase> cases;
  for (double a : {1.5, 2.5, 3.5})
    for (double b : {0.5, 1.5})
      cases.push_back({ParamPoint::chg({a, 0}, {b, 0}), StepKind::AlphaUp});
  for (double a : {0.5, 1.5, 2.5})
    for (double b : {1.5, 2.5, 3.5})
      if (b > a) cases.push_back({ParamPoint::chg({a, 0}, {b, 0}), StepKind::BetaUp});
  for (double a : {1.5, 2.5, 3.5})
    for (double z : {0.5, 1.5})
      for (double b : {0.5, 2.0})
        cases.push_back({ParamPoint::hg({a, 0}, {b, 0}, {z, 0}), StepKind::AlphaUp});
  for (double b : {1.5, 2.5})
    for (double z : {0.5, 1.5})
      cases.push_back({ParamPoint::hg({0.75, 0}, {b, 0}, {z, 0}), StepKind::BetaUp});
  for (double a : {0.5, 1.5})
    for (double b : {0.5, 1.5})
      for (double z : {2.5, 3.5})
        cases.push_back({ParamPoint::hg({a, 0}, {b, 0}, {z, 0}), StepKind::ZetaUp});
  return cases;
}

std::vector<double> t_grid_for(Family family) {
  if (family == Family::Chg) return {0.2, 0.5, 0.8, 1.1, 1.4, 1.7, 2.0};
  return {0.1, 0.25, 0.4, 0.55, 0.7, 0.85};
}

std::string ladder_name(const LadderCase& lc) {
  return (lc.point.family == Family::Chg ? std::string("chg ") : std::string("hg ")) +
         step_token(lc.kind) + " at " + lc.point.to_string();
}

void suite_coeffs(Reporter& rep, bool inject_defect) {
  std::mt19937 rng(1234321);
  std::uniform_real_distribution<double> t_dist(0.1, 0.9);
  bool first = inject_defect;
  for (GenFnCoeffs step : constructor_grid()) {
    if (first) {  // deliberate corruption, exercised by the failure path test
      step.b = step.b + RationalFn::constant({1, 0});
      first = false;
    }
    const auto res =
        canonical::coeff_residuals(ModelSpec::for_point(step.source), step.step, step);
    double max_pointwise = 0.0;
    for (int k = 0; k < 20; ++k) {
      const Complex t(t_dist(rng), 0);
      max_pointwise = std::max({max_pointwise, std::abs(res.r1.value_at(t)),
                                std::abs(res.r2.value_at(t)), std::abs(res.r3.value_at(t))});
    }
    rep.add("coeffs", step_name(step), max_pointwise, 1e-10, res.all_zero());
  }
}

void suite_invariance(Reporter& rep) {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> q_dist(-2.0, 2.0);
  for (double a : kParamGrid)
    for (double b : kParamGrid) {
      for (const GenFnCoeffs& step :
           {canonical::chg_alpha_step({a, 0}, {b, 0}),
            canonical::chg_beta_step({a, 0}, {b, 0}),
            canonical::hg_alpha_step({a, 0}, {b, 0}, {1.5, 0}),
            canonical::hg_zeta_step({a, 0}, {b, 0}, {1.5, 0})}) {
        const ModelSpec model = ModelSpec::for_point(step.source);
        const double t_hi = step.source.family == Family::Chg ? 1.8 : 0.85;
        std::uniform_real_distribution<double> t_dist(0.15, t_hi);
        double worst = 0.0;
        for (int k = 0; k < 6; ++k) {
          const Complex t(t_dist(rng), 0);
          const Complex q(q_dist(rng), q_dist(rng));
          const Complex qt(q_dist(rng), q_dist(rng));
          worst = std::max(worst,
                           std::abs(canonical::invariance_residual(step, model, q, qt, t)));
        }
        rep.add("invariance", step_name(step), worst, 1e-9);
      }
    }
}

void suite_ladder(Reporter& rep) {
  for (const LadderCase& lc : ladder_grid()) {
    const GenFnCoeffs coeffs = canonical::make_step(lc.point, lc.kind);
    const LadderStep step{coeffs, StepDirection::Raise};
    const ParamPoint up = coeffs.target();
    double worst = 0.0;
    for (double t : t_grid_for(lc.point.family)) {
      const Complex tc(t, 0);
      const Complex q = recurrence::canonical_solution(lc.point, tc, {1, 0}, lc.kind);
      const Complex dq = recurrence::canonical_solution_dt(lc.point, tc, {1, 0}, lc.kind);
      const Complex want = recurrence::canonical_solution(up, tc, {1, 0}, lc.kind);
      const Complex got = recurrence::apply_raise(step, q, dq, tc);
      worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));

      const Complex dup = recurrence::canonical_solution_dt(up, tc, {1, 0}, lc.kind);
      const Complex back =
          recurrence::apply_lower(LadderStep{coeffs, StepDirection::Lower}, want, dup, tc);
      worst = std::max(worst, std::abs(back - q) / std::max(1.0, std::abs(q)));
    }
    rep.add("ladder", ladder_name(lc), worst, 1e-9);
  }
}

void suite_trinomial(Reporter& rep) {
  for (const LadderCase& lc : ladder_grid()) {
    const GenFnCoeffs first = canonical::make_step(lc.point, lc.kind);
    const GenFnCoeffs second = canonical::make_step(first.target(), lc.kind);
    if (second.degenerate) continue;
    double worst = 0.0;
    for (double t : {0.35, 0.62}) {
      const Complex tc(t, 0);
      const Complex q0 = recurrence::canonical_solution(lc.point, tc, {1, 0}, lc.kind);
      const Complex dq0 = recurrence::canonical_solution_dt(lc.point, tc, {1, 0}, lc.kind);
      const Complex q1 =
          recurrence::apply_raise(LadderStep{first, StepDirection::Raise}, q0, dq0, tc);
      const Complex dq1 =
          recurrence::canonical_solution_dt(first.target(), tc, {1, 0}, lc.kind);
      const Complex q2 =
          recurrence::apply_raise(LadderStep{second, StepDirection::Raise}, q1, dq1, tc);
      const Complex tri = recurrence::three_term(first, second, q0, q1, tc);
      worst = std::max(worst, std::abs(tri - q2) / std::max(1.0, std::abs(q2)));
    }
    rep.add("trinomial", ladder_name(lc), worst, 1e-9);
  }
}

void suite_normalization(Reporter& rep) {
  for (const LadderCase& lc : ladder_grid()) {
    const GenFnCoeffs coeffs = canonical::make_step(lc.point, lc.kind);
    const Complex n0 = recurrence::normalization_n(lc.kind, lc.point);
    const Complex n1 = recurrence::normalization_n(lc.kind, coeffs.target());
    const Complex rho = recurrence::raise_factor(lc.kind, lc.point);
    const double rel = std::abs(rho * rho * n0 - coeffs.gamma_sq * n1) /
                       std::abs(coeffs.gamma_sq * n1);
    rep.add("normalization", "functional equation " + ladder_name(lc), rel, 1e-12);
  }
  // chain constants along three consecutive alpha knots
  for (double beta : {0.5, 1.5}) {
    std::vector<Complex> chain;
    for (double alpha : {2.5, 3.5, 4.5}) {
      const ParamPoint p = ParamPoint::chg({alpha, 0}, {beta, 0});
      chain.push_back(specfun::gamma({alpha - beta + 1, 0}) *
                      recurrence::normalization_n(StepKind::AlphaUp, p) /
                      specfun::gamma({alpha, 0}));
    }
    const double rel = std::max(std::abs(chain[1] / chain[0] - Complex(1, 0)),
                                std::abs(chain[2] / chain[0] - Complex(1, 0)));
    rep.add("normalization", "chain constant chg beta=" + fmt17(beta), rel, 1e-12);
  }
}

void suite_zero_curvature(Reporter& rep) {
  const std::vector<std::pair<ParamPoint, StepKind>> bases = {
      {ParamPoint::chg({2.5, 0}, {0.5, 0}), StepKind::AlphaUp},
      {ParamPoint::chg({0.5, 0}, {1.5, 0}), StepKind::BetaUp},
      {ParamPoint::hg({2.5, 0}, {1.5, 0}, {0.5, 0}), StepKind::AlphaUp},
      {ParamPoint::hg({1.5, 0}, {2.75, 0}, {0.5, 0}), StepKind::BetaUp},
      {ParamPoint::hg({0.5, 0}, {1.5, 0}, {2.5, 0}), StepKind::ZetaUp},
  };
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> t_dist(0.1, 0.9);
  for (const auto& [base, kind] : bases) {
    std::vector<GenFnCoeffs> chain;
    ParamPoint p = base;
    for (int i = 0; i < 4; ++i) {
      chain.push_back(canonical::make_step(p, kind));
      p = chain.back().target();
    }
    const auto b = lattice::transfer_matrix(chain);
    const auto a_k =
        lattice::connection_matrix(chain[0], chain[1], ModelSpec::for_point(base));
    const auto a_k2 = lattice::connection_matrix(chain[2], chain[3],
                                                 ModelSpec::for_point(chain[2].source));
    const auto res = lattice::zero_curvature_residual(b, a_k, a_k2);
    const std::string dir =
        (base.family == Family::Chg ? std::string("chg ") : std::string("hg ")) +
        step_token(kind) + " from " + base.to_string();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
          const Complex t(t_dist(rng), 0);
          worst = std::max(worst, std::abs(res[i][j].value_at(t)));
        }
        rep.add("zero-curvature",
                dir + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")",
                worst, 1e-10, res[i][j].is_zero());
      }
  }
}

}  // namespace

bool run_verify_suite(const std::string& suite, bool inject_defect,
                      std::vector<Row>& rows) {
  Reporter rep{rows};
  const bool all = (suite == "all");
  bool known = all;
  if (all || suite == "coeffs") {
    suite_coeffs(rep, inject_defect);
    known = true;
  }
  if (all || suite == "invariance") {
    suite_invariance(rep);
    known = true;
  }
  if (all || suite == "ladder") {
    suite_ladder(rep);
    known = true;
  }
  if (all || suite == "trinomial") {
    suite_trinomial(rep);
    known = true;
  }
  if (all || suite == "normalization") {
    suite_normalization(rep);
    known = true;
  }
  if (all || suite == "zero-curvature") {
    suite_zero_curvature(rep);
    known = true;
  }
  if (!known)
    throw usage_error("unknown suite '" + suite +
                      "' (expected coeffs, invariance, ladder, trinomial, "
                      "normalization, zero-curvature or all)");
  return rep.all_passed;
}

}  // namespace ladderkit::cli

#pragma once

#include <string>
#include <vector>

#include "cli_common.hpp"

namespace ladderkit::cli {

/// Runs the named verification suite (coeffs, invariance, ladder, trinomial,
/// normalization, zero-curvature, or all) over the built-in deterministic
/// grids.  Appends one row per check with its maximum residual and pinned
/// threshold.  Returns true iff every check passed.  `inject_defect`
/// corrupts one coefficient set on purpose, for exercising the failure path.
bool run_verify_suite(const std::string& suite, bool inject_defect,
                      std::vector<Row>& rows);

}  // namespace ladderkit::cli

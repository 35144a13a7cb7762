#pragma once

#include <stdexcept>
#include <string>

namespace ladderkit {

/// A ladder map was requested across a step with gamma = 0, where the
/// relation degenerates into a constraint instead of a map.
struct degeneracy_error : std::domain_error {
  explicit degeneracy_error(const std::string& what) : std::domain_error(what) {}
};

/// A series evaluation exceeded its term cap without meeting the
/// truncation test.
struct convergence_error : std::runtime_error {
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ladderkit

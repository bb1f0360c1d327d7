#pragma once

#include <stdexcept>
#include <string>

namespace spcell {

/// Zariski-open hypothesis failed at a sampled point. The sampling layer owns
/// the resampling policy; library code never perturbs inputs.
struct NonGenericError : std::runtime_error {
  std::string site;
  explicit NonGenericError(std::string where)
      : std::runtime_error("non-generic input at " + where), site(std::move(where)) {}
};

struct SingularMatrixError : std::runtime_error {
  SingularMatrixError() : std::runtime_error("singular matrix") {}
};

/// Constructor-level invariant violation; message names the offending residual.
struct ConstraintError : std::runtime_error {
  explicit ConstraintError(const std::string& what) : std::runtime_error(what) {}
};

/// Vanishing pivot during orbit reduction, identified by (step, index).
struct PivotError : std::runtime_error {
  int step;
  int index;
  PivotError(int step_, int index_)
      : std::runtime_error("vanishing pivot at step " + std::to_string(step_) + ", index " +
                           std::to_string(index_)),
        step(step_),
        index(index_) {}
};

}  // namespace spcell

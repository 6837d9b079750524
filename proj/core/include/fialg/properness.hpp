#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fialg/decompose.hpp"

namespace fialg {

/// Combinatorial verdict: a carrier admits only proper maps exactly
/// when no component hosts two edge classes.
struct PropernessVerdict {
  std::vector<std::vector<int>> classes_by_component;
  bool proper_capable = true;
  /// (component, class, class): the least component hosting two
  /// classes, with its two least class ids.
  std::optional<std::array<int, 3>> certificate;
};

PropernessVerdict properness_criterion(const EdgeClassification& classes);

/// Pairwise comparison of the report's class probe tables within each
/// component; a disagreement names the two classes and the scalar.
Verdict check_quasi_additive_proper(const DecompositionReport& report);

/// A single-class map refuting properness, anchored at the least
/// vertex of the certificate class, when the criterion fails; nothing
/// when it holds.  Throws when the ring has no nonzero additive
/// derivation to build the refutation from.
std::optional<MapSpec> emit_witness(const AlgebraContext& ctx);

/// properize's result: either a proper form (derivation part plus a
/// central residual) or the certificate of the component whose classes
/// act differently.
struct ProperizeOutcome {
  std::optional<MapSpec> proper;        // the derivation part D
  std::optional<BlackBoxMap> residual;  // original minus D
  /// On success, the central-annihilating sample of the residual; on
  /// failure, the class-disagreement verdict.
  Verdict residual_check;
  std::optional<std::array<int, 3>> certificate;  // (component, cls, cls)
};

/// Rebuilds the report's map as derivation + central residual when the
/// per-component class actions agree.  Requires every class fitted;
/// throws otherwise.
ProperizeOutcome properize(const DecompositionReport& report,
                           const ProbeBudget& budget);

}  // namespace fialg

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fialg/verify.hpp"

namespace fialg {

/// Probed images of one edge class's scalar action, in probe order.
struct ClassProbeTable {
  std::vector<std::pair<RingValue, RingValue>> probes;  // scalar -> image

  std::optional<RingValue> at(const RingValue& scalar) const;
};

/// Everything the pipeline extracts from a black-box map, plus the
/// ordered check log.  `decomposable` is the conjunction of the checks.
struct DecompositionReport {
  AlgebraContext ctx;
  int n = 2;
  FiElement corner;          // strict element reproducing the map on units
  TransitiveTable transitive;
  std::map<int, ClassProbeTable> class_probes;
  std::map<int, std::optional<AdditiveDerivationSpec>> fitted;
  BlackBoxMap residual;      // original map minus the structured part
  std::vector<Verdict> checks;
  bool decomposable = false;

  DecompositionReport(AlgebraContext c, int n_)
      : ctx(std::move(c)), n(n_), corner(ctx.zero()) {}

  const Verdict* check(const std::string& law) const;
  bool all_fitted() const;

  /// Inner + transitive terms, plus the classwise induced term when
  /// every class fit succeeded.  Evaluating this and the residual at
  /// any element reproduces the input map.
  MapSpec structured_part() const;
};

/// corner(x, y) = image-of-unit-at-y evaluated at (x, y), strict pairs
/// only.  Total: meaningfulness is checked downstream.
FiElement extract_corner(const BlackBoxMap& L, const AlgebraContext& ctx);

/// Reads f(x, y) off the corner-corrected map at basis elements and
/// validates it as a transitive table.  Before building, checks that
/// scaled basis lines map into themselves over the scalar pool.
/// Throws ValidationError with a witness when either fails.
TransitiveTable extract_transitive(const BlackBoxMap& L1,
                                   const AlgebraContext& ctx,
                                   const std::vector<RingValue>& pool);

/// Per-class scalar probes of the fully corrected map, with fits
/// against the closed derivation catalog (zero everywhere; polynomial
/// multiples of d/dt on the polynomial ring).
struct ClassExtraction {
  std::map<int, ClassProbeTable> probes;
  std::map<int, std::optional<AdditiveDerivationSpec>> fitted;
};
ClassExtraction extract_class_derivations(const BlackBoxMap& L2,
                                          const AlgebraContext& ctx,
                                          const std::vector<RingValue>& pool);

/// Scalars the class extraction probes: the pool, then pairwise sums,
/// then pairwise products, deduplicated in that order.  On the
/// polynomial ring, t is ensured present (the fit reads it).
std::vector<RingValue> class_probe_scalars(const RingDescriptor& ring,
                                           const std::vector<RingValue>& pool);

/// Full pipeline.  Never throws on law violations; each violated law
/// turns into a failed check and the report comes back not
/// decomposable.  Throws only for rings failing the torsion side
/// conditions for n.
DecompositionReport decompose(const BlackBoxMap& L, const AlgebraContext& ctx,
                              int n, const ProbeBudget& budget);

}  // namespace fialg

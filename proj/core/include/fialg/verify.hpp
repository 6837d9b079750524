#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fialg/map_spec.hpp"

namespace fialg {

/// Deterministic probe plan: same seed and budget replay the same
/// probe sequence, element by element.
struct ProbeBudget {
  std::uint64_t seed = 0;
  int tuples = 500;
  std::vector<RingValue> pool;  // empty means the ring's default pool
  int sparse_permille = 400;    // density of random sparse elements
};

/// {0, 1, -1, 2, -2, 3} reduced into the ring, deduplicated; the
/// polynomial ring adds {t, t^2, t + 1}.
std::vector<RingValue> default_scalar_pool(const RingDescriptor& ring);

/// Outcome of a sampling falsifier.  A pass only means no violation
/// was found in `probes` probes; a fail carries the violating tuple
/// and both sides of the law, so it can be re-checked by re-evaluating.
struct Verdict {
  std::string law;
  bool pass = true;
  long probes = 0;
  std::vector<FiElement> tuple;  // violating probe tuple; empty on pass
  std::vector<FiElement> sides;  // lhs, rhs at the violation
  std::string detail;

  static Verdict passed(std::string law, long probes);
  static Verdict failed(std::string law, long probes,
                        std::vector<FiElement> tuple, FiElement lhs,
                        FiElement rhs, std::string detail);
};

/// Probe source.  Emits the complete structured battery first (the
/// inputs the algebraic arguments actually run on: corner units,
/// strict basis elements, pool multiples of them, diagonal elements),
/// then seeded random elements of the budget's shapes.
class ProbeStream {
 public:
  ProbeStream(AlgebraContext ctx, const ProbeBudget& budget);

  FiElement next_element();
  std::vector<FiElement> next_tuple(int arity);

  /// Elements/tuples run so far.
  long emitted() const { return emitted_; }
  /// Total probes a check should run: all structured ones, and random
  /// ones up to the budget count.
  long plan_size(long structured) const;

  const std::vector<RingValue>& pool() const { return pool_; }
  const std::vector<FiElement>& structured_elements() const {
    return structured_;
  }
  const std::vector<std::vector<FiElement>>& structured_tuples(int arity);
  const std::vector<std::pair<FiElement, FiElement>>& structured_pairs();

  FiElement random_element();

 private:
  AlgebraContext ctx_;
  ProbeBudget budget_;
  std::vector<RingValue> pool_;
  std::vector<std::pair<int, int>> all_pairs_;  // every x <= y, lex
  std::vector<FiElement> structured_;
  std::size_t element_pos_ = 0;
  int tuple_arity_ = 0;
  std::vector<std::vector<FiElement>> structured_tuples_;
  std::size_t tuple_pos_ = 0;
  std::vector<std::pair<FiElement, FiElement>> structured_pairs_;
  std::mt19937_64 gen_;
  long emitted_ = 0;

  void build_structured();
};

/// Left side L(p_n(tuple)); right side sum over slots of
/// p_n(..., L(slot), ...).  Exposed so a stored counterexample can be
/// re-evaluated independently of the verdict that found it.
std::pair<FiElement, FiElement> lie_law_sides(
    const BlackBoxMap& L, const std::vector<FiElement>& tuple);
std::pair<FiElement, FiElement> additivity_sides(const BlackBoxMap& D,
                                                 const FiElement& a,
                                                 const FiElement& b);
std::pair<FiElement, FiElement> product_rule_sides(const BlackBoxMap& D,
                                                   const FiElement& a,
                                                   const FiElement& b);

/// Samples L(p_n(x_1..x_n)) = sum_k p_n(x_1,..,L(x_k),..,x_n) over the
/// probe plan.  Throws ValidationError when the ring fails the
/// torsion side conditions for this n.
Verdict check_lie_n_derivation(const BlackBoxMap& L, const AlgebraContext& ctx,
                               int n, const ProbeBudget& budget);

/// Samples additivity and the product rule D(ab) = D(a)b + aD(b) over
/// probe pairs.
Verdict check_derivation(const BlackBoxMap& D, const AlgebraContext& ctx,
                         const ProbeBudget& budget);

/// Samples that the image is central and that every sampled arity-n
/// commutator is sent to zero.
Verdict check_central_annihilating(const BlackBoxMap& kappa,
                                   const AlgebraContext& ctx, int n,
                                   const ProbeBudget& budget);

}  // namespace fialg

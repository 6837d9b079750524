#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fialg/map_spec.hpp"
#include "fialg/preorder.hpp"

namespace testsupport {

using fialg::AdditiveDerivationSpec;
using fialg::AlgebraContext;
using fialg::FiElement;
using fialg::Int;
using fialg::MapSpec;
using fialg::PolyCoeffs;
using fialg::Preorder;
using fialg::RingValue;
using fialg::TransitiveTable;

/// Strict-edge partition by exhaustive cycle search: walk every
/// vertex-simple cycle of the comparability graph and merge the edges
/// it carries; mutually-comparable pairs count as two-vertex cycles on
/// their own.  Classes come back as lexicographic edge lists ordered by
/// least member edge, the same shape EdgeClassification exposes.
std::vector<std::vector<std::pair<int, int>>> oracle_edge_classes(
    const Preorder& p);

/// Vertex set of one class as defined pointwise: x itself plus every
/// endpoint of a walk that first steps from x onto a class vertex other
/// than x and afterwards avoids x.
std::vector<int> oracle_vertex_set(const Preorder& p,
                                   const std::vector<int>& class_vertices,
                                   int x);

/// Owner set of x against a blocking vertex set: x plus the off-class
/// vertices reachable from x through off-class vertices only.
std::vector<int> oracle_owner_set(const Preorder& p,
                                  const std::vector<int>& class_vertices,
                                  int x);

/// Random preorder with 1..max_n vertices: a handful of generator pairs
/// closed transitively, mutual pairs included often enough to exercise
/// equivalence loops.
std::shared_ptr<const Preorder> random_preorder(std::mt19937_64& rng,
                                                int max_n);

/// A structured map together with the ingredients it was built from,
/// so tests can compare what a decomposition recovers against what
/// went in.
struct StructuredSample {
  MapSpec spec;
  FiElement alpha_strict;  // strict part of the inner element
  TransitiveTable table;
  std::map<int, AdditiveDerivationSpec> by_class;
  std::map<int, PolyCoeffs> trace;

  explicit StructuredSample(const AlgebraContext& ctx)
      : spec(ctx), alpha_strict(ctx.zero()) {}
};

/// Inner + transitive + classwise + central-trace sample over the
/// context's ring (the classwise part needs the polynomial domain).
StructuredSample random_structured_map(std::mt19937_64& rng,
                                       const AlgebraContext& ctx);

struct CliResult {
  int exit_code = -1;
  std::string output;
};

/// Runs the installed command-line binary with the given arguments and
/// captures stdout.
CliResult run_cli(const std::string& args);

}  // namespace testsupport

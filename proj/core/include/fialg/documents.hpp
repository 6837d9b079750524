#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fialg/decompose.hpp"
#include "fialg/properness.hpp"

namespace fialg {

/// A parsed poset file: the closed carrier plus the declared vertex
/// names (reports print names, the engine sees dense indices).
struct PosetDocument {
  std::vector<std::string> names;
  std::shared_ptr<const Preorder> carrier;

  const std::string& name_of(int x) const { return names[std::size_t(x)]; }
  int index_of(const std::string& name) const;
};

/// {"vertices": [names], "leq": [[x, y], ...], "close": bool}.
/// Pairs may reference vertices by name or by index.  With close (the
/// default) the relation is completed to a preorder; without it the
/// input must already be reflexive and transitive.  close_override
/// beats the document's flag when given.
PosetDocument parse_poset_document(const std::string& text,
                                   std::optional<bool> close_override = {});

/// A parsed derivation file bound to its poset.
struct DerivationDocument {
  RingDescriptor ring;
  int n = 2;
  MapSpec map;
};

/// {"ring": ..., "n": ..., "terms": [...]}; see the README for the
/// term encodings.
DerivationDocument parse_derivation_document(const std::string& text,
                                             const PosetDocument& poset);

std::string render_derivation_document(const MapSpec& map, int n,
                                       const PosetDocument& poset);

/// Scalar serialization: integers as decimal strings, rationals
/// "p/q", residues "k mod m", polynomials as arrays of decimal
/// coefficient strings, constant term first.
std::string render_ring_value(const RingValue& v);
RingValue parse_ring_value_text(const RingDescriptor& ring,
                                const std::string& text);

std::string render_validate_report(const PosetDocument& poset);
std::string render_components_report(const PosetDocument& poset);
std::string render_classes_report(const PosetDocument& poset,
                                  const EdgeClassification& classes);
std::string render_properness_report(const PosetDocument& poset,
                                     const PropernessVerdict& verdict);
std::string render_check_report(const PosetDocument& poset, int n,
                                const ProbeBudget& budget,
                                const Verdict& verdict);
std::string render_decomposition_report(const PosetDocument& poset,
                                        const ProbeBudget& budget,
                                        const DecompositionReport& report);
std::string render_witness_report(const PosetDocument& poset,
                                  const std::optional<MapSpec>& witness);
std::string render_properize_report(const PosetDocument& poset,
                                    const DecompositionReport& report,
                                    const ProperizeOutcome& outcome);

}  // namespace fialg

#include "fialg/properness.hpp"

#include <string>

#include "fialg/errors.hpp"

namespace fialg {

PropernessVerdict properness_criterion(const EdgeClassification& classes) {
  PropernessVerdict verdict;
  const Preorder& p = classes.carrier();
  for (int c = 0; c < p.component_count(); ++c)
    verdict.classes_by_component.push_back(classes.component_classes(c));
  for (int c = 0; c < p.component_count(); ++c) {
    const auto& hosted = verdict.classes_by_component[std::size_t(c)];
    if (hosted.size() >= 2) {
      verdict.proper_capable = false;
      verdict.certificate = {c, hosted[0], hosted[1]};
      break;
    }
  }
  return verdict;
}

Verdict check_quasi_additive_proper(const DecompositionReport& report) {
  const EdgeClassification& cls = *report.ctx.classes;
  long probes = 0;
  for (const auto& hosted : properness_criterion(cls).classes_by_component)
    for (std::size_t a = 0; a < hosted.size(); ++a)
      for (std::size_t b = a + 1; b < hosted.size(); ++b) {
        auto ita = report.class_probes.find(hosted[a]);
        auto itb = report.class_probes.find(hosted[b]);
        if (ita == report.class_probes.end() ||
            itb == report.class_probes.end())
          continue;
        const auto& ta = ita->second.probes;
        const auto& tb = itb->second.probes;
        for (std::size_t k = 0; k < ta.size() && k < tb.size(); ++k) {
          ++probes;
          if (!(ta[k].first == tb[k].first)) continue;
          if (ta[k].second == tb[k].second) continue;
          auto ra = cls.representative(hosted[a]);
          auto rb = cls.representative(hosted[b]);
          FiElement ua = report.ctx.basis(ra.first, ra.second);
          FiElement ub = report.ctx.basis(rb.first, rb.second);
          return Verdict::failed(
              "quasi_additive_proper", probes,
              {ua.scaled(ta[k].first), ub.scaled(tb[k].first)},
              ua.scaled(ta[k].second), ub.scaled(tb[k].second),
              "classes with least edges (" + std::to_string(ra.first) + ", " +
                  std::to_string(ra.second) + ") and (" +
                  std::to_string(rb.first) + ", " + std::to_string(rb.second) +
                  ") share a component but act differently at scalar " +
                  ta[k].first.to_string());
        }
      }
  return Verdict::passed("quasi_additive_proper", probes);
}

std::optional<MapSpec> emit_witness(const AlgebraContext& ctx) {
  PropernessVerdict verdict = properness_criterion(*ctx.classes);
  if (verdict.proper_capable) return std::nullopt;
  if (ctx.ring.kind != RingDescriptor::Kind::IntPoly)
    throw ValidationError(
        "no nonzero additive derivation available on this ring");
  int cls = (*verdict.certificate)[1];
  int anchor = ctx.classes->class_vertices(cls).front();
  return make_witness(ctx, cls, anchor,
                      AdditiveDerivationSpec::poly_times_ddt({1}));
}

ProperizeOutcome properize(const DecompositionReport& report,
                           const ProbeBudget& budget) {
  for (const auto& [c, spec] : report.fitted)
    if (!spec)
      throw ValidationError(
          "cannot properize: class derivation not identified from probes");

  ProperizeOutcome outcome;
  Verdict agreement = check_quasi_additive_proper(report);
  if (!agreement.pass) {
    const EdgeClassification& cls = *report.ctx.classes;
    for (const auto& hosted :
         properness_criterion(cls).classes_by_component) {
      for (std::size_t a = 0; a < hosted.size() && !outcome.certificate; ++a)
        for (std::size_t b = a + 1; b < hosted.size(); ++b) {
          auto ita = report.fitted.find(hosted[a]);
          auto itb = report.fitted.find(hosted[b]);
          if (ita != report.fitted.end() && itb != report.fitted.end() &&
              !(*ita->second == *itb->second)) {
            outcome.certificate = {cls.class_component(hosted[a]), hosted[a],
                                   hosted[b]};
            break;
          }
        }
      if (outcome.certificate) break;
    }
    if (!outcome.certificate) {
      // Probe tables disagreed even though the fits coincide; fall
      // back to the criterion's certificate shape for the first
      // overfull component.
      PropernessVerdict crit = properness_criterion(cls);
      outcome.certificate = crit.certificate;
    }
    outcome.residual_check = std::move(agreement);
    return outcome;
  }

  const AlgebraContext& ctx = report.ctx;
  std::map<int, AdditiveDerivationSpec> by_component;
  for (int c = 0; c < ctx.carrier->component_count(); ++c)
    by_component.emplace(c, AdditiveDerivationSpec::zero());
  for (const auto& [cls, spec] : report.fitted)
    by_component.insert_or_assign(ctx.classes->class_component(cls), *spec);

  MapSpec proper(ctx);
  proper.add(InnerTerm{report.corner});
  proper.add(TransitiveTerm{report.transitive});
  proper.add(ProperPartTerm{std::move(by_component)});

  MapSpec structured = report.structured_part();
  BlackBoxMap original_residual = report.residual;
  MapSpec proper_copy = proper;
  BlackBoxMap residual = [structured, original_residual,
                          proper_copy](const FiElement& b) {
    return structured.eval(b) + original_residual(b) - proper_copy.eval(b);
  };
  outcome.residual_check =
      check_central_annihilating(residual, ctx, report.n, budget);
  outcome.proper = std::move(proper);
  outcome.residual = std::move(residual);
  return outcome;
}

}  // namespace fialg

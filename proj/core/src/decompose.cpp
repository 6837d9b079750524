#include "fialg/decompose.hpp"

#include <algorithm>

#include "fialg/errors.hpp"

namespace fialg {

std::optional<RingValue> ClassProbeTable::at(const RingValue& scalar) const {
  for (const auto& [s, v] : probes)
    if (s == scalar) return v;
  return std::nullopt;
}

const Verdict* DecompositionReport::check(const std::string& law) const {
  for (const Verdict& v : checks)
    if (v.law == law) return &v;
  return nullptr;
}

bool DecompositionReport::all_fitted() const {
  for (const auto& [cls, spec] : fitted)
    if (!spec) return false;
  return true;
}

MapSpec DecompositionReport::structured_part() const {
  MapSpec m(ctx);
  m.add(InnerTerm{corner});
  if (transitive.ring() == ctx.ring) m.add(TransitiveTerm{transitive});
  if (all_fitted()) {
    std::map<int, AdditiveDerivationSpec> by_class;
    for (const auto& [cls, spec] : fitted) by_class.emplace(cls, *spec);
    m.add(AdditiveInducedTerm{std::move(by_class)});
  }
  return m;
}

FiElement extract_corner(const BlackBoxMap& L, const AlgebraContext& ctx) {
  FiElement corner = ctx.zero();
  for (int y = 0; y < ctx.carrier->size(); ++y) {
    FiElement image = L(ctx.basis(y, y));
    for (auto [ex, ey] : ctx.carrier->strict_edges())
      if (ey == y) corner.set(ex, ey, image.at(ex, ey));
  }
  return corner;
}

namespace {

std::string pair_text(int x, int y) {
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
}

/// First scaled-basis probe whose image leaves its own line, if any.
struct SupportViolation {
  FiElement probe;
  FiElement image;
  std::string detail;
};

std::optional<SupportViolation> find_line_escape(
    const BlackBoxMap& M, const AlgebraContext& ctx,
    const std::vector<RingValue>& scalars) {
  for (auto [x, y] : ctx.carrier->strict_edges())
    for (const RingValue& r : scalars) {
      FiElement probe = ctx.basis(x, y).scaled(r);
      FiElement image = M(probe);
      for (const auto& [key, v] : image.entries())
        if (key != std::make_pair(x, y))
          return SupportViolation{
              std::move(probe), std::move(image),
              "image of " + r.to_string() + " * unit" + pair_text(x, y) +
                  " has a stray entry at " +
                  pair_text(key.first, key.second)};
    }
  return std::nullopt;
}

std::map<std::pair<int, int>, RingValue> read_strict_lines(
    const BlackBoxMap& M, const AlgebraContext& ctx) {
  std::map<std::pair<int, int>, RingValue> values;
  for (auto [x, y] : ctx.carrier->strict_edges())
    values.insert({{x, y}, M(ctx.basis(x, y)).at(x, y)});
  return values;
}

struct ClassScan {
  std::map<int, ClassProbeTable> probes;
  std::map<int, std::optional<AdditiveDerivationSpec>> fitted;
  Verdict line_support, agreement, additivity, product_rule, fit;
};

RingValue heldout_scalar(const RingDescriptor& ring) {
  if (ring.kind == RingDescriptor::Kind::IntPoly)
    return RingValue::poly({0, 2, 0, 1});  // t^3 + 2t
  return RingValue::from_int(ring, 5);
}

std::vector<RingValue> probe_base(const RingDescriptor& ring,
                                  const std::vector<RingValue>& pool) {
  std::vector<RingValue> base;
  for (const RingValue& r : pool)
    if (std::find(base.begin(), base.end(), r) == base.end())
      base.push_back(r);
  if (ring.kind == RingDescriptor::Kind::IntPoly) {
    RingValue t = RingValue::poly({0, 1});
    if (std::find(base.begin(), base.end(), t) == base.end())
      base.push_back(t);
  }
  return base;
}

ClassScan scan_classes(const BlackBoxMap& L2, const AlgebraContext& ctx,
                       const std::vector<RingValue>& pool) {
  const EdgeClassification& cls = *ctx.classes;
  const std::vector<RingValue> base = probe_base(ctx.ring, pool);
  const std::vector<RingValue> scalars = class_probe_scalars(ctx.ring, pool);

  ClassScan scan;
  long probes_run = 0;

  // Every scaled line probe must stay on its line; record the probe
  // tables off the class representatives while scanning.
  std::map<std::pair<int, int>, std::map<std::size_t, RingValue>> seen;
  std::optional<SupportViolation> escape;
  for (auto [x, y] : ctx.carrier->strict_edges()) {
    for (std::size_t si = 0; si < scalars.size(); ++si) {
      FiElement probe = ctx.basis(x, y).scaled(scalars[si]);
      FiElement image = L2(probe);
      ++probes_run;
      for (const auto& [key, v] : image.entries())
        if (key != std::make_pair(x, y) && !escape)
          escape = SupportViolation{
              probe, image,
              "image of " + scalars[si].to_string() + " * unit" +
                  pair_text(x, y) + " has a stray entry at " +
                  pair_text(key.first, key.second)};
      seen[{x, y}].insert({si, image.at(x, y)});
      if (escape) break;
    }
    if (escape) break;
  }
  if (escape)
    scan.line_support =
        Verdict::failed("class_line_support", probes_run, {escape->probe},
                        escape->image, ctx.zero(), escape->detail);
  else
    scan.line_support = Verdict::passed("class_line_support", probes_run);

  // Cross-edge agreement inside each class, against the class's
  // lexicographically least edge.
  bool agree_failed = false;
  long agree_probes = 0;
  for (int c = 0; c < cls.class_count() && !agree_failed; ++c) {
    auto rep = cls.representative(c);
    if (!seen.count(rep)) continue;  // scan aborted early
    const auto& rep_row = seen.at(rep);
    ClassProbeTable table;
    for (std::size_t si = 0; si < scalars.size(); ++si) {
      if (!rep_row.count(si)) break;
      table.probes.push_back({scalars[si], rep_row.at(si)});
    }
    scan.probes.insert({c, std::move(table)});
    for (auto edge : cls.class_edges(c)) {
      if (edge == rep || !seen.count(edge)) continue;
      const auto& row = seen.at(edge);
      for (std::size_t si = 0; si < scalars.size(); ++si) {
        if (!row.count(si) || !rep_row.count(si)) break;
        ++agree_probes;
        if (!(row.at(si) == rep_row.at(si))) {
          scan.agreement = Verdict::failed(
              "class_agreement", agree_probes,
              {ctx.basis(rep.first, rep.second).scaled(scalars[si]),
               ctx.basis(edge.first, edge.second).scaled(scalars[si])},
              ctx.basis(rep.first, rep.second).scaled(rep_row.at(si)),
              ctx.basis(edge.first, edge.second).scaled(row.at(si)),
              "edges " + pair_text(rep.first, rep.second) + " and " +
                  pair_text(edge.first, edge.second) +
                  " of one class disagree at scalar " +
                  scalars[si].to_string());
          agree_failed = true;
          break;
        }
      }
      if (agree_failed) break;
    }
  }
  if (!agree_failed)
    scan.agreement = Verdict::passed("class_agreement", agree_probes);

  // Additivity and the product rule at pool pairs, read off the tables.
  long add_probes = 0, mul_probes = 0;
  std::optional<Verdict> add_fail, mul_fail;
  for (const auto& [c, table] : scan.probes) {
    auto rep = cls.representative(c);
    FiElement unit = ctx.basis(rep.first, rep.second);
    for (std::size_t i = 0; i < base.size() && !add_fail; ++i)
      for (std::size_t j = i; j < base.size() && !add_fail; ++j) {
        auto fr = table.at(base[i]), fs = table.at(base[j]);
        auto fsum = table.at(base[i] + base[j]);
        if (!fr || !fs || !fsum) continue;
        ++add_probes;
        if (!(*fsum == *fr + *fs))
          add_fail = Verdict::failed(
              "class_additivity", add_probes,
              {unit.scaled(base[i]), unit.scaled(base[j])},
              unit.scaled(*fsum), unit.scaled(*fr + *fs),
              "class action at " + (base[i] + base[j]).to_string() +
                  " differs from the sum of its actions at " +
                  base[i].to_string() + " and " + base[j].to_string());
      }
    for (std::size_t i = 0; i < base.size() && !mul_fail; ++i)
      for (std::size_t j = i; j < base.size() && !mul_fail; ++j) {
        auto fr = table.at(base[i]), fs = table.at(base[j]);
        auto fprod = table.at(base[i] * base[j]);
        if (!fr || !fs || !fprod) continue;
        ++mul_probes;
        RingValue leibniz = *fr * base[j] + base[i] * *fs;
        if (!(*fprod == leibniz))
          mul_fail = Verdict::failed(
              "class_product_rule", mul_probes,
              {unit.scaled(base[i]), unit.scaled(base[j])},
              unit.scaled(*fprod), unit.scaled(leibniz),
              "class action at " + (base[i] * base[j]).to_string() +
                  " breaks the product rule for " + base[i].to_string() +
                  " and " + base[j].to_string());
      }
    if (add_fail || mul_fail) break;
  }
  scan.additivity = add_fail ? *add_fail
                             : Verdict::passed("class_additivity", add_probes);
  scan.product_rule =
      mul_fail ? *mul_fail : Verdict::passed("class_product_rule", mul_probes);

  // Catalog fit: zero everywhere, or a polynomial multiple of d/dt on
  // the polynomial ring.  A candidate must reproduce every probe plus
  // one held-out scalar evaluated directly.
  long fit_probes = 0;
  std::optional<Verdict> fit_fail;
  RingValue heldout = heldout_scalar(ctx.ring);
  for (const auto& [c, table] : scan.probes) {
    bool all_zero = true;
    for (const auto& [s, v] : table.probes)
      if (!v.is_zero()) all_zero = false;
    AdditiveDerivationSpec candidate = AdditiveDerivationSpec::zero();
    if (!all_zero) {
      if (ctx.ring.kind != RingDescriptor::Kind::IntPoly) {
        if (!fit_fail)
          fit_fail = Verdict::failed(
              "class_fit", fit_probes, {},
              ctx.zero(), ctx.zero(),
              "class with least edge " +
                  pair_text(cls.representative(c).first,
                            cls.representative(c).second) +
                  " acts nontrivially on scalars, but this ring has no "
                  "nonzero additive derivation");
        scan.fitted.insert({c, std::nullopt});
        continue;
      }
      auto ft = table.at(RingValue::poly({0, 1}));
      candidate =
          AdditiveDerivationSpec::poly_times_ddt(ft ? ft->as_poly()
                                                    : PolyCoeffs{});
    }
    bool ok = true;
    std::string mismatch;
    for (const auto& [s, v] : table.probes) {
      ++fit_probes;
      if (!(candidate.apply(s) == v)) {
        ok = false;
        mismatch = "probe at scalar " + s.to_string() + " gives " +
                   v.to_string() + ", candidate " + candidate.to_string() +
                   " gives " + candidate.apply(s).to_string();
        break;
      }
    }
    if (ok) {
      auto rep = cls.representative(c);
      FiElement probe = ctx.basis(rep.first, rep.second).scaled(heldout);
      RingValue observed = L2(probe).at(rep.first, rep.second);
      ++fit_probes;
      if (!(candidate.apply(heldout) == observed)) {
        ok = false;
        mismatch = "held-out scalar " + heldout.to_string() + " gives " +
                   observed.to_string() + ", candidate " +
                   candidate.to_string() + " gives " +
                   candidate.apply(heldout).to_string();
      }
    }
    if (ok) {
      scan.fitted.insert({c, candidate});
    } else {
      scan.fitted.insert({c, std::nullopt});
      if (!fit_fail)
        fit_fail = Verdict::failed(
            "class_fit", fit_probes, {}, ctx.zero(), ctx.zero(),
            "class with least edge " +
                pair_text(cls.representative(c).first,
                          cls.representative(c).second) +
                " matches no catalog derivation: " + mismatch);
    }
  }
  scan.fit = fit_fail ? *fit_fail : Verdict::passed("class_fit", fit_probes);
  return scan;
}

const std::string kNotLieDerivation =
    "input is not a Lie n-derivation over an admissible ring";

}  // namespace

TransitiveTable extract_transitive(const BlackBoxMap& L1,
                                   const AlgebraContext& ctx,
                                   const std::vector<RingValue>& pool) {
  if (auto escape = find_line_escape(L1, ctx, pool))
    throw ValidationError(kNotLieDerivation + ": " + escape->detail);
  try {
    return TransitiveTable::build(ctx.carrier, ctx.ring,
                                  read_strict_lines(L1, ctx));
  } catch (const TransitivityViolation& tv) {
    throw ValidationError(kNotLieDerivation + ": " + tv.what());
  }
}

std::vector<RingValue> class_probe_scalars(const RingDescriptor& ring,
                                           const std::vector<RingValue>& pool) {
  const std::vector<RingValue> base = probe_base(ring, pool);
  std::vector<RingValue> scalars = base;
  auto push = [&scalars](RingValue v) {
    if (std::find(scalars.begin(), scalars.end(), v) == scalars.end())
      scalars.push_back(std::move(v));
  };
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j) push(base[i] + base[j]);
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j) push(base[i] * base[j]);
  return scalars;
}

ClassExtraction extract_class_derivations(const BlackBoxMap& L2,
                                          const AlgebraContext& ctx,
                                          const std::vector<RingValue>& pool) {
  ClassScan scan = scan_classes(L2, ctx, pool);
  for (const Verdict* v : {&scan.line_support, &scan.agreement,
                           &scan.additivity, &scan.product_rule})
    if (!v->pass) throw ValidationError(v->law + ": " + v->detail);
  return ClassExtraction{std::move(scan.probes), std::move(scan.fitted)};
}

DecompositionReport decompose(const BlackBoxMap& L, const AlgebraContext& ctx,
                              int n, const ProbeBudget& budget) {
  Admissibility adm = validate_torsionfree(ctx.ring, n);
  if (!adm.admissible) throw ValidationError(adm.reason);
  DecompositionReport rep(ctx, n);
  const std::vector<RingValue> pool =
      budget.pool.empty() ? default_scalar_pool(ctx.ring) : budget.pool;

  Verdict lie = check_lie_n_derivation(L, ctx, n, budget);
  lie.law = "lie_law";
  rep.checks.push_back(std::move(lie));

  rep.corner = extract_corner(L, ctx);
  MapSpec inner = make_inner(ctx, rep.corner);
  BlackBoxMap L1 = [&L, inner](const FiElement& b) {
    return L(b) - inner.eval(b);
  };

  {
    long probes = 0;
    std::optional<Verdict> fail;
    std::vector<FiElement> corners;
    for (int x = 0; x < ctx.carrier->size(); ++x)
      corners.push_back(L(ctx.basis(x, x)));
    for (auto [x, y] : ctx.carrier->strict_edges()) {
      ++probes;
      RingValue lhs = corners[std::size_t(x)].at(x, y);
      RingValue rhs = -corners[std::size_t(y)].at(x, y);
      if (!(lhs == rhs)) {
        fail = Verdict::failed(
            "corner_antisymmetry", probes,
            {ctx.basis(x, x), ctx.basis(y, y)}, corners[std::size_t(x)],
            -corners[std::size_t(y)],
            "at " + pair_text(x, y) + ": image of unit at " +
                std::to_string(x) + " carries " + lhs.to_string() +
                ", negated image of unit at " + std::to_string(y) +
                " carries " + rhs.to_string());
        break;
      }
    }
    rep.checks.push_back(fail ? *fail
                              : Verdict::passed("corner_antisymmetry", probes));
  }

  {
    long probes = long(ctx.carrier->strict_edges().size()) * long(pool.size());
    if (auto escape = find_line_escape(L1, ctx, pool))
      rep.checks.push_back(Verdict::failed("strict_line_support", probes,
                                           {escape->probe}, escape->image,
                                           ctx.zero(), escape->detail));
    else
      rep.checks.push_back(Verdict::passed("strict_line_support", probes));
  }

  rep.transitive = TransitiveTable::build(ctx.carrier, ctx.ring, {});
  try {
    rep.transitive =
        TransitiveTable::build(ctx.carrier, ctx.ring, read_strict_lines(L1, ctx));
    rep.checks.push_back(Verdict::passed(
        "transitivity", long(ctx.carrier->strict_edges().size())));
  } catch (const ValidationError& e) {
    rep.checks.push_back(Verdict::failed(
        "transitivity", long(ctx.carrier->strict_edges().size()), {},
        ctx.zero(), ctx.zero(), e.what()));
  }

  {
    std::vector<FiElement> diag_probes;
    const Preorder& p = *ctx.carrier;
    for (int x = 0; x < p.size(); ++x)
      for (const RingValue& r : pool)
        diag_probes.push_back(ctx.basis(x, x).scaled(r));
    for (const RingValue& r : pool) {
      std::vector<RingValue> d(std::size_t(p.size()), r);
      diag_probes.push_back(FiElement::diagonal(ctx.carrier, ctx.ring, d));
    }
    std::vector<RingValue> cycled;
    for (int x = 0; x < p.size(); ++x)
      cycled.push_back(pool[std::size_t(x) % pool.size()]);
    diag_probes.push_back(FiElement::diagonal(ctx.carrier, ctx.ring, cycled));

    long probes = 0;
    std::optional<Verdict> fail;
    for (const FiElement& d : diag_probes) {
      ++probes;
      FiElement image = L1(d);
      if (!image.strict_part().is_zero()) {
        fail = Verdict::failed(
            "diagonal_invariance", probes, {d}, image, image.diagonal_part(),
            "corner-corrected image of a diagonal element has strict entries");
        break;
      }
    }
    rep.checks.push_back(fail ? *fail
                              : Verdict::passed("diagonal_invariance", probes));
  }

  {
    long probes = 0;
    std::optional<Verdict> fail;
    for (int x = 0; x < ctx.carrier->size(); ++x) {
      ++probes;
      FiElement image = L1(ctx.basis(x, x));
      if (!image.central_witness()) {
        fail = Verdict::failed(
            "corner_diagonal_central", probes, {ctx.basis(x, x)}, image,
            ctx.zero(),
            "corner-corrected image of the unit at " + std::to_string(x) +
                " is not central");
        break;
      }
    }
    rep.checks.push_back(
        fail ? *fail : Verdict::passed("corner_diagonal_central", probes));
  }

  MapSpec trans = MapSpec(ctx).add(TransitiveTerm{rep.transitive});
  BlackBoxMap L2 = [&L, inner, trans](const FiElement& b) {
    return L(b) - inner.eval(b) - trans.eval(b);
  };
  ClassScan scan = scan_classes(L2, ctx, pool);
  rep.class_probes = std::move(scan.probes);
  rep.fitted = std::move(scan.fitted);
  rep.checks.push_back(std::move(scan.line_support));
  rep.checks.push_back(std::move(scan.agreement));
  rep.checks.push_back(std::move(scan.additivity));
  rep.checks.push_back(std::move(scan.product_rule));
  rep.checks.push_back(std::move(scan.fit));

  MapSpec structured = rep.structured_part();
  rep.residual = [L, structured](const FiElement& b) {
    return L(b) - structured.eval(b);
  };
  Verdict central = check_central_annihilating(rep.residual, ctx, n, budget);
  central.law = "residual_central_annihilating";
  rep.checks.push_back(std::move(central));

  {
    ProbeStream stream(ctx, budget);
    const long total =
        stream.plan_size(long(stream.structured_elements().size()));
    std::optional<Verdict> fail;
    for (long i = 0; i < total; ++i) {
      FiElement beta = stream.next_element();
      FiElement lhs = L(beta);
      FiElement rhs = structured.eval(beta) + rep.residual(beta);
      if (!(lhs == rhs)) {
        fail = Verdict::failed(
            "recomposition", i + 1, {beta}, std::move(lhs), std::move(rhs),
            "extracted parts plus residual fail to reproduce the map at "
            "probe " +
                std::to_string(i + 1));
        break;
      }
    }
    rep.checks.push_back(fail ? *fail
                              : Verdict::passed("recomposition", total));
  }

  rep.decomposable = true;
  for (const Verdict& v : rep.checks)
    if (!v.pass) rep.decomposable = false;
  return rep;
}

}  // namespace fialg

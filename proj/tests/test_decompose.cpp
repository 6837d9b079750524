#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "fialg/decompose.hpp"
#include "support.hpp"

using namespace fialg;

namespace {

std::shared_ptr<const Preorder> make(int n,
                                     std::vector<std::pair<int, int>> gen) {
  return Preorder::from_generators(n, gen);
}

const RingDescriptor kZ = RingDescriptor::integers();
const RingDescriptor kP = RingDescriptor::int_polynomials();

RingValue pnum(int k) { return RingValue::from_int(kP, Int(k)); }
RingValue tval() { return RingValue::poly({Int(0), Int(1)}); }

const std::vector<std::string> kCheckOrder = {
    "lie_law",
    "corner_antisymmetry",
    "strict_line_support",
    "transitivity",
    "diagonal_invariance",
    "corner_diagonal_central",
    "class_line_support",
    "class_agreement",
    "class_additivity",
    "class_product_rule",
    "class_fit",
    "residual_central_annihilating",
    "recomposition",
};

MapSpec chain3_structured(const AlgebraContext& ctx) {
  FiElement alpha = ctx.zero();
  alpha.set(0, 1, tval()).set(1, 2, pnum(2)).set(0, 2, pnum(1));
  MapSpec spec(ctx);
  spec.add(InnerTerm{alpha})
      .add(TransitiveTerm{TransitiveTable::build(
          ctx.carrier, ctx.ring,
          {{{0, 1}, pnum(1)}, {{1, 2}, tval()}, {{0, 2}, pnum(1) + tval()}})})
      .add(AdditiveInducedTerm{
          {{0, AdditiveDerivationSpec::poly_times_ddt({Int(0), Int(1)})}}})
      .add(CentralTraceTerm{{{0, {Int(0), Int(1)}}}});
  return spec;
}

}  // namespace

TEST_CASE("corner extraction reads images of the diagonal units") {
  AlgebraContext ctx = AlgebraContext::make(make(3, {{0, 1}, {1, 2}}), kP);
  FiElement alpha = ctx.zero();
  alpha.set(0, 1, tval()).set(0, 2, pnum(-3)).set(1, 1, pnum(4));
  CHECK(extract_corner(make_inner(ctx, alpha).black_box(), ctx) ==
        alpha.strict_part());

  MapSpec lf = make_transitive(
      ctx, {{{0, 1}, pnum(1)}, {{1, 2}, pnum(1)}, {{0, 2}, pnum(2)}});
  CHECK(extract_corner(lf.black_box(), ctx).is_zero());

  MapSpec psi = make_additive_induced(
      ctx, {{0, AdditiveDerivationSpec::poly_times_ddt({Int(1)})}});
  CHECK(extract_corner(psi.black_box(), ctx).is_zero());
}

TEST_CASE("transitive extraction recovers tables and flags escapes") {
  AlgebraContext ctx = AlgebraContext::make(make(3, {{0, 1}, {1, 2}}), kP);
  auto pool = default_scalar_pool(kP);

  TransitiveTable table = TransitiveTable::build(
      ctx.carrier, kP,
      {{{0, 1}, tval()}, {{1, 2}, pnum(2)}, {{0, 2}, tval() + pnum(2)}});
  MapSpec lf(ctx);
  lf.add(TransitiveTerm{table});
  CHECK(extract_transitive(lf.black_box(), ctx, pool) == table);

  BlackBoxMap escapee = [&ctx](const FiElement& beta) {
    return ctx.basis(0, 2).scaled(beta.at(0, 1));
  };
  CHECK_THROWS_WITH_AS(
      extract_transitive(escapee, ctx, pool),
      "input is not a Lie n-derivation over an admissible ring: image of 1 * "
      "unit(0, 1) has a stray entry at (0, 2)",
      ValidationError);

  // Line values that fail chain additivity are also rejected.
  BlackBoxMap skewed = [&ctx](const FiElement& beta) {
    FiElement out = ctx.zero();
    out.set(0, 2, beta.at(0, 2).is_zero() ? RingValue::zero(kP)
                                          : beta.at(0, 2) + pnum(1));
    return out;
  };
  bool threw = false;
  try {
    extract_transitive(skewed, ctx, pool);
  } catch (const ValidationError& e) {
    threw = true;
    CHECK(std::string(e.what()).find("is not a Lie n-derivation") !=
          std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("probe scalars cover sums and products of the pool") {
  auto scalars = class_probe_scalars(kZ, default_scalar_pool(kZ));
  auto has = [&scalars](int k) {
    return std::find(scalars.begin(), scalars.end(),
                     RingValue::integer(Int(k))) != scalars.end();
  };
  CHECK(has(0));
  CHECK(has(6));   // 3 + 3 and 2 * 3
  CHECK(has(9));   // 3 * 3
  CHECK(has(-4));  // -2 + -2
  // Deduplicated.
  for (std::size_t i = 0; i < scalars.size(); ++i)
    for (std::size_t j = i + 1; j < scalars.size(); ++j)
      CHECK_FALSE(scalars[i] == scalars[j]);
}

TEST_CASE("class scan fits the catalog from probe tables") {
  AlgebraContext ctx = AlgebraContext::make(make(3, {{0, 1}, {0, 2}}), kP);
  auto pool = default_scalar_pool(kP);
  MapSpec psi = make_additive_induced(
      ctx, {{0, AdditiveDerivationSpec::poly_times_ddt({Int(0), Int(2)})},
            {1, AdditiveDerivationSpec::zero()}});
  ClassExtraction got = extract_class_derivations(psi.black_box(), ctx, pool);
  REQUIRE(got.fitted.count(0));
  REQUIRE(got.fitted.count(1));
  REQUIRE(got.fitted.at(0).has_value());
  REQUIRE(got.fitted.at(1).has_value());
  CHECK(*got.fitted.at(0) ==
        AdditiveDerivationSpec::poly_times_ddt({Int(0), Int(2)}));
  CHECK(got.fitted.at(1)->is_zero());

  // The probe table really is the graph of the class action.
  const ClassProbeTable& table = got.probes.at(0);
  auto at_t = table.at(tval());
  REQUIRE(at_t.has_value());
  CHECK(*at_t == RingValue::poly({Int(0), Int(2)}));
  CHECK_FALSE(table.at(RingValue::poly({Int(9), Int(9)})).has_value());
}

TEST_CASE("line scaling by a plain weight is absorbed, not misfiled") {
  // Doubling one edge line is the transitive map f(0,1) = 2: the
  // pipeline must fold it into the table and fit the zero class action.
  AlgebraContext ctx = AlgebraContext::make(make(2, {{0, 1}}), kZ);
  BlackBoxMap doubler = [&ctx](const FiElement& beta) {
    FiElement out = ctx.zero();
    out.set(0, 1, beta.at(0, 1) + beta.at(0, 1));
    return out;
  };
  ProbeBudget budget;
  budget.tuples = 40;
  DecompositionReport rep = decompose(doubler, ctx, 2, budget);
  CHECK(rep.decomposable);
  CHECK(rep.transitive.at(0, 1) == RingValue::integer(Int(2)));
  REQUIRE(rep.fitted.count(0));
  CHECK(rep.fitted.at(0)->is_zero());
}

TEST_CASE("scalar action outside the catalog is reported, not fitted") {
  AlgebraContext ctx = AlgebraContext::make(make(2, {{0, 1}}), kZ);
  // Squaring the line scalar survives the support checks but is no
  // additive derivation, and over the integers nothing nonzero is.
  BlackBoxMap squarer = [&ctx](const FiElement& beta) {
    FiElement out = ctx.zero();
    out.set(0, 1, beta.at(0, 1) * beta.at(0, 1));
    return out;
  };
  ProbeBudget budget;
  budget.tuples = 40;
  DecompositionReport rep = decompose(squarer, ctx, 2, budget);
  CHECK_FALSE(rep.decomposable);
  const Verdict* fit = rep.check("class_fit");
  REQUIRE(fit);
  CHECK_FALSE(fit->pass);
  CHECK(fit->detail.find("no nonzero additive derivation") !=
        std::string::npos);
  CHECK_FALSE(rep.check("class_additivity")->pass);
  CHECK_FALSE(rep.all_fitted());
  CHECK(rep.check("strict_line_support")->pass);
}

TEST_CASE("full pipeline on a structured chain map") {
  AlgebraContext ctx = AlgebraContext::make(make(3, {{0, 1}, {1, 2}}), kP);
  MapSpec spec = chain3_structured(ctx);
  ProbeBudget budget;
  budget.tuples = 150;
  DecompositionReport rep = decompose(spec.black_box(), ctx, 2, budget);

  CHECK(rep.decomposable);
  REQUIRE(rep.checks.size() == kCheckOrder.size());
  for (std::size_t i = 0; i < kCheckOrder.size(); ++i) {
    CHECK(rep.checks[i].law == kCheckOrder[i]);
    CHECK(rep.checks[i].pass);
  }

  FiElement alpha = ctx.zero();
  alpha.set(0, 1, tval()).set(1, 2, pnum(2)).set(0, 2, pnum(1));
  CHECK(rep.corner == alpha);
  CHECK(rep.transitive.at(0, 1) == pnum(1));
  CHECK(rep.transitive.at(1, 2) == tval());
  REQUIRE(rep.fitted.count(0));
  CHECK(*rep.fitted.at(0) ==
        AdditiveDerivationSpec::poly_times_ddt({Int(0), Int(1)}));

  // The residual is exactly the central trace ingredient.
  FiElement probe = ctx.zero();
  probe.set(0, 0, tval()).set(0, 1, pnum(5));
  FiElement res = rep.residual(probe);
  CHECK(res == ctx.identity().scaled(tval()));
  CHECK(rep.structured_part().eval(probe) + res == spec.eval(probe));
}

TEST_CASE("a line-escaping map fails the support checks but still reports") {
  AlgebraContext ctx = AlgebraContext::make(make(3, {{0, 1}, {1, 2}}), kZ);
  BlackBoxMap escapee = [&ctx](const FiElement& beta) {
    return ctx.basis(0, 2).scaled(beta.at(0, 1));
  };
  ProbeBudget budget;
  budget.tuples = 60;
  DecompositionReport rep = decompose(escapee, ctx, 2, budget);

  CHECK_FALSE(rep.decomposable);
  REQUIRE(rep.checks.size() == kCheckOrder.size());
  for (std::size_t i = 0; i < kCheckOrder.size(); ++i)
    CHECK(rep.checks[i].law == kCheckOrder[i]);

  CHECK_FALSE(rep.check("lie_law")->pass);
  CHECK_FALSE(rep.check("strict_line_support")->pass);
  CHECK_FALSE(rep.check("class_line_support")->pass);
  CHECK_FALSE(rep.check("residual_central_annihilating")->pass);
  CHECK(rep.check("corner_antisymmetry")->pass);
  CHECK(rep.check("transitivity")->pass);
  CHECK(rep.check("diagonal_invariance")->pass);
  CHECK(rep.check("recomposition")->pass);
  CHECK(rep.check("strict_line_support")->detail.find("stray entry") !=
        std::string::npos);
}

TEST_CASE("diagonal leakage is caught by the invariance check") {
  AlgebraContext ctx = AlgebraContext::make(make(2, {{0, 1}}), kZ);
  BlackBoxMap leak = [&ctx](const FiElement& beta) {
    return ctx.basis(0, 1).scaled(beta.at(0, 0));
  };
  ProbeBudget budget;
  budget.tuples = 40;
  DecompositionReport rep = decompose(leak, ctx, 2, budget);
  CHECK_FALSE(rep.decomposable);
  CHECK_FALSE(rep.check("diagonal_invariance")->pass);
}

TEST_CASE("decompose rejects rings with torsion for the arity") {
  AlgebraContext ctx =
      AlgebraContext::make(make(2, {{0, 1}}), RingDescriptor::modular(Int(6)));
  MapSpec zero(ctx);
  ProbeBudget budget;
  CHECK_THROWS_AS(decompose(zero.black_box(), ctx, 2, budget),
                  ValidationError);
}

TEST_CASE("random structured maps round-trip through the pipeline") {
  std::mt19937_64 rng(4242);
  ProbeBudget budget;
  budget.tuples = 60;
  int done = 0;
  for (int trial = 0; done < 8 && trial < 40; ++trial) {
    auto p = testsupport::random_preorder(rng, 5);
    if (p->strict_edges().empty()) continue;
    ++done;
    AlgebraContext ctx = AlgebraContext::make(p, kP);
    testsupport::StructuredSample sample =
        testsupport::random_structured_map(rng, ctx);
    DecompositionReport rep = decompose(sample.spec.black_box(), ctx, 2, budget);
    CHECK(rep.decomposable);
    CHECK(rep.corner == sample.alpha_strict);
    for (const auto& [cls, spec] : sample.by_class) {
      REQUIRE(rep.fitted.count(cls));
      REQUIRE(rep.fitted.at(cls).has_value());
      CHECK(*rep.fitted.at(cls) == spec);
    }
  }
  CHECK(done == 8);
}

#include "fialg/verify.hpp"

#include <algorithm>

#include "fialg/errors.hpp"

namespace fialg {

std::vector<RingValue> default_scalar_pool(const RingDescriptor& ring) {
  std::vector<RingValue> pool;
  auto push = [&pool](RingValue v) {
    if (std::find(pool.begin(), pool.end(), v) == pool.end())
      pool.push_back(std::move(v));
  };
  for (int k : {0, 1, -1, 2, -2, 3}) push(RingValue::from_int(ring, k));
  if (ring.kind == RingDescriptor::Kind::IntPoly) {
    push(RingValue::poly({0, 1}));      // t
    push(RingValue::poly({0, 0, 1}));   // t^2
    push(RingValue::poly({1, 1}));      // t + 1
  }
  return pool;
}

Verdict Verdict::passed(std::string law, long probes) {
  Verdict v;
  v.law = std::move(law);
  v.pass = true;
  v.probes = probes;
  v.detail = "no violation found in " + std::to_string(probes) + " probes";
  return v;
}

Verdict Verdict::failed(std::string law, long probes,
                        std::vector<FiElement> tuple, FiElement lhs,
                        FiElement rhs, std::string detail) {
  Verdict v;
  v.law = std::move(law);
  v.pass = false;
  v.probes = probes;
  v.tuple = std::move(tuple);
  v.sides.push_back(std::move(lhs));
  v.sides.push_back(std::move(rhs));
  v.detail = std::move(detail);
  return v;
}

ProbeStream::ProbeStream(AlgebraContext ctx, const ProbeBudget& budget)
    : ctx_(std::move(ctx)), budget_(budget), gen_(budget.seed) {
  pool_ = budget_.pool.empty() ? default_scalar_pool(ctx_.ring) : budget_.pool;
  const Preorder& p = *ctx_.carrier;
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (p.leq(x, y)) all_pairs_.push_back({x, y});
  build_structured();
}

void ProbeStream::build_structured() {
  const Preorder& p = *ctx_.carrier;
  for (int x = 0; x < p.size(); ++x) structured_.push_back(ctx_.basis(x, x));
  for (auto [x, y] : p.strict_edges()) structured_.push_back(ctx_.basis(x, y));
  for (auto [x, y] : p.strict_edges())
    for (const RingValue& r : pool_)
      structured_.push_back(ctx_.basis(x, y).scaled(r));
  for (const RingValue& r : pool_) {
    std::vector<RingValue> d(p.size(), r);
    structured_.push_back(FiElement::diagonal(ctx_.carrier, ctx_.ring, d));
  }
  std::vector<RingValue> cycled;
  for (int x = 0; x < p.size(); ++x)
    cycled.push_back(pool_[std::size_t(x) % pool_.size()]);
  structured_.push_back(FiElement::diagonal(ctx_.carrier, ctx_.ring, cycled));
}

const std::vector<std::vector<FiElement>>& ProbeStream::structured_tuples(
    int arity) {
  if (tuple_arity_ == arity) return structured_tuples_;
  tuple_arity_ = arity;
  structured_tuples_.clear();
  tuple_pos_ = 0;
  const Preorder& p = *ctx_.carrier;
  auto padded = [arity](std::vector<FiElement> front, const FiElement& pad) {
    front.resize(std::size_t(arity), pad);
    return front;
  };
  FiElement cycled = structured_.back();
  for (auto [x, y] : p.strict_edges()) {
    FiElement exx = ctx_.basis(x, x);
    FiElement eyy = ctx_.basis(y, y);
    FiElement exy = ctx_.basis(x, y);
    structured_tuples_.push_back(padded({exx, eyy}, eyy));
    structured_tuples_.push_back(padded({cycled, exy}, eyy));
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      const RingValue& r = pool_[i];
      const RingValue& s = pool_[(i + 1) % pool_.size()];
      structured_tuples_.push_back(padded({exy.scaled(r), eyy}, eyy));
      structured_tuples_.push_back(padded({exx, exy.scaled(r)}, eyy));
      structured_tuples_.push_back(
          padded({exx - exy.scaled(r), exx + exy.scaled(s)}, eyy));
    }
    for (int z = 0; z < p.size(); ++z)
      structured_tuples_.push_back(padded({exy, ctx_.basis(z, z)}, eyy));
  }
  return structured_tuples_;
}

const std::vector<std::pair<FiElement, FiElement>>&
ProbeStream::structured_pairs() {
  if (!structured_pairs_.empty()) return structured_pairs_;
  const Preorder& p = *ctx_.carrier;
  const std::size_t n = structured_.size();
  for (std::size_t i = 0; i < n; ++i)
    structured_pairs_.push_back({structured_[i], structured_[(i + 1) % n]});
  for (auto [x, y] : p.strict_edges())
    for (auto [u, v] : p.strict_edges())
      if (u == y) structured_pairs_.push_back({ctx_.basis(x, y),
                                               ctx_.basis(u, v)});
  return structured_pairs_;
}

long ProbeStream::plan_size(long structured) const {
  return std::max(structured, long(budget_.tuples));
}

FiElement ProbeStream::random_element() {
  const Preorder& p = *ctx_.carrier;
  switch (gen_() % 4) {
    case 0: {
      auto [x, y] = all_pairs_[gen_() % all_pairs_.size()];
      return ctx_.basis(x, y);
    }
    case 1: {
      auto [x, y] = all_pairs_[gen_() % all_pairs_.size()];
      return ctx_.basis(x, y).scaled(pool_[gen_() % pool_.size()]);
    }
    case 2: {
      std::vector<RingValue> d;
      for (int x = 0; x < p.size(); ++x)
        d.push_back(pool_[gen_() % pool_.size()]);
      return FiElement::diagonal(ctx_.carrier, ctx_.ring, d);
    }
    default: {
      FiElement out = ctx_.zero();
      for (auto [x, y] : all_pairs_)
        if (long(gen_() % 1000) < long(budget_.sparse_permille)) {
          RingValue r = pool_[gen_() % pool_.size()];
          if (!r.is_zero()) out.set(x, y, r);
        }
      return out;
    }
  }
}

FiElement ProbeStream::next_element() {
  ++emitted_;
  if (element_pos_ < structured_.size()) return structured_[element_pos_++];
  return random_element();
}

std::vector<FiElement> ProbeStream::next_tuple(int arity) {
  ++emitted_;
  const auto& st = structured_tuples(arity);
  if (tuple_pos_ < st.size()) return st[tuple_pos_++];
  std::vector<FiElement> t;
  t.reserve(std::size_t(arity));
  for (int k = 0; k < arity; ++k) t.push_back(random_element());
  return t;
}

std::pair<FiElement, FiElement> lie_law_sides(
    const BlackBoxMap& L, const std::vector<FiElement>& tuple) {
  FiElement lhs = L(nested_commutator(tuple));
  std::vector<FiElement> scratch = tuple;
  FiElement rhs = lhs - lhs;  // zero with the right shape
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    scratch[k] = L(tuple[k]);
    rhs = rhs + nested_commutator(scratch);
    scratch[k] = tuple[k];
  }
  return {lhs, rhs};
}

std::pair<FiElement, FiElement> additivity_sides(const BlackBoxMap& D,
                                                 const FiElement& a,
                                                 const FiElement& b) {
  return {D(a + b), D(a) + D(b)};
}

std::pair<FiElement, FiElement> product_rule_sides(const BlackBoxMap& D,
                                                   const FiElement& a,
                                                   const FiElement& b) {
  return {D(a * b), D(a) * b + a * D(b)};
}

Verdict check_lie_n_derivation(const BlackBoxMap& L, const AlgebraContext& ctx,
                               int n, const ProbeBudget& budget) {
  Admissibility adm = validate_torsionfree(ctx.ring, n);
  if (!adm.admissible) throw ValidationError(adm.reason);
  ProbeStream stream(ctx, budget);
  const long total =
      stream.plan_size(long(stream.structured_tuples(n).size()));
  for (long i = 0; i < total; ++i) {
    std::vector<FiElement> tuple = stream.next_tuple(n);
    auto [lhs, rhs] = lie_law_sides(L, tuple);
    if (!(lhs == rhs))
      return Verdict::failed(
          "lie_" + std::to_string(n) + "_derivation", i + 1, std::move(tuple),
          std::move(lhs), std::move(rhs),
          "image of the nested commutator differs from the slotwise sum at "
          "probe " +
              std::to_string(i + 1));
  }
  return Verdict::passed("lie_" + std::to_string(n) + "_derivation", total);
}

Verdict check_derivation(const BlackBoxMap& D, const AlgebraContext& ctx,
                         const ProbeBudget& budget) {
  ProbeStream stream(ctx, budget);
  const auto& sp = stream.structured_pairs();
  const long total = stream.plan_size(long(sp.size()));
  for (long i = 0; i < total; ++i) {
    FiElement a = std::size_t(i) < sp.size() ? sp[std::size_t(i)].first
                                             : stream.random_element();
    FiElement b = std::size_t(i) < sp.size() ? sp[std::size_t(i)].second
                                             : stream.random_element();
    auto [al, ar] = additivity_sides(D, a, b);
    if (!(al == ar))
      return Verdict::failed("derivation", i + 1, {a, b}, std::move(al),
                             std::move(ar),
                             "additivity fails at probe " + std::to_string(i + 1));
    auto [pl, pr] = product_rule_sides(D, a, b);
    if (!(pl == pr))
      return Verdict::failed(
          "derivation", i + 1, {a, b}, std::move(pl), std::move(pr),
          "product rule fails at probe " + std::to_string(i + 1));
  }
  return Verdict::passed("derivation", total);
}

Verdict check_central_annihilating(const BlackBoxMap& kappa,
                                   const AlgebraContext& ctx, int n,
                                   const ProbeBudget& budget) {
  ProbeStream singles(ctx, budget);
  const long total_singles =
      singles.plan_size(long(singles.structured_elements().size()));
  for (long i = 0; i < total_singles; ++i) {
    FiElement beta = singles.next_element();
    FiElement image = kappa(beta);
    if (!image.central_witness())
      return Verdict::failed("central_annihilating", i + 1, {beta},
                             std::move(image), ctx.zero(),
                             "image is not central at probe " +
                                 std::to_string(i + 1));
  }
  ProbeStream tuples(ctx, budget);
  const long total_tuples =
      tuples.plan_size(long(tuples.structured_tuples(n).size()));
  for (long i = 0; i < total_tuples; ++i) {
    std::vector<FiElement> tuple = tuples.next_tuple(n);
    FiElement image = kappa(nested_commutator(tuple));
    if (!(image == ctx.zero()))
      return Verdict::failed("central_annihilating",
                             total_singles + i + 1, std::move(tuple),
                             std::move(image), ctx.zero(),
                             "nested commutator not annihilated at probe " +
                                 std::to_string(i + 1));
  }
  return Verdict::passed("central_annihilating", total_singles + total_tuples);
}

}  // namespace fialg

#include "fialg/fi_element.hpp"

#include <string>

namespace fialg {

FiElement::FiElement(std::shared_ptr<const Preorder> carrier,
                     RingDescriptor ring)
    : carrier_(std::move(carrier)), ring_(std::move(ring)) {
  if (!carrier_) throw ValidationError("element needs a carrier");
}

FiElement FiElement::basis(std::shared_ptr<const Preorder> carrier,
                           const RingDescriptor& ring, int x, int y) {
  FiElement out(std::move(carrier), ring);
  out.set(x, y, RingValue::one(ring));
  return out;
}

FiElement FiElement::identity(std::shared_ptr<const Preorder> carrier,
                              const RingDescriptor& ring) {
  FiElement out(std::move(carrier), ring);
  for (int x = 0; x < out.carrier().size(); ++x)
    out.set(x, x, RingValue::one(ring));
  return out;
}

FiElement FiElement::diagonal(std::shared_ptr<const Preorder> carrier,
                              const RingDescriptor& ring,
                              std::span<const RingValue> values) {
  FiElement out(std::move(carrier), ring);
  if (int(values.size()) != out.carrier().size())
    throw ValidationError("diagonal needs one value per vertex");
  for (int x = 0; x < out.carrier().size(); ++x)
    out.set(x, x, values[x]);
  return out;
}

RingValue FiElement::at(int x, int y) const {
  auto it = entries_.find({x, y});
  if (it == entries_.end()) return RingValue::zero(ring_);
  return it->second;
}

FiElement& FiElement::set(int x, int y, RingValue v) {
  if (!carrier_->leq(x, y))
    throw ValidationError("entry (" + std::to_string(x) + ", " +
                          std::to_string(y) + ") is not a related pair");
  if (!(v.descriptor() == ring_))
    throw RingMismatch("entry value from " + v.descriptor().name() +
                       " stored in an element over " + ring_.name());
  if (v.is_zero())
    entries_.erase({x, y});
  else
    entries_.insert_or_assign({x, y}, std::move(v));
  return *this;
}

void FiElement::require_same_shape(const FiElement& other) const {
  if (!(ring_ == other.ring_))
    throw RingMismatch("elements over different coefficient domains: " +
                       ring_.name() + " and " + other.ring_.name());
  if (carrier_ != other.carrier_ && !(*carrier_ == *other.carrier_))
    throw StructureMismatch("elements over different carriers");
}

FiElement FiElement::operator+(const FiElement& other) const {
  require_same_shape(other);
  FiElement out = *this;
  for (const auto& [key, v] : other.entries_) {
    auto it = out.entries_.find(key);
    if (it == out.entries_.end()) {
      out.entries_.insert({key, v});
    } else {
      RingValue s = it->second + v;
      if (s.is_zero())
        out.entries_.erase(it);
      else
        it->second = std::move(s);
    }
  }
  return out;
}

FiElement FiElement::operator-() const {
  FiElement out(carrier_, ring_);
  for (const auto& [key, v] : entries_) out.entries_.insert({key, -v});
  return out;
}

FiElement FiElement::operator-(const FiElement& other) const {
  return *this + (-other);
}

FiElement FiElement::operator*(const FiElement& other) const {
  require_same_shape(other);
  FiElement out(carrier_, ring_);
  for (const auto& [xz, va] : entries_) {
    auto [x, z] = xz;
    for (auto it = other.entries_.lower_bound({z, 0});
         it != other.entries_.end() && it->first.first == z; ++it) {
      int y = it->first.second;
      RingValue term = va * it->second;
      if (term.is_zero()) continue;
      auto slot = out.entries_.find({x, y});
      if (slot == out.entries_.end()) {
        out.entries_.insert({{x, y}, std::move(term)});
      } else {
        RingValue s = slot->second + term;
        if (s.is_zero())
          out.entries_.erase(slot);
        else
          slot->second = std::move(s);
      }
    }
  }
  return out;
}

FiElement FiElement::scaled(const RingValue& r) const {
  if (!(r.descriptor() == ring_))
    throw RingMismatch("scalar from " + r.descriptor().name() +
                       " applied to an element over " + ring_.name());
  FiElement out(carrier_, ring_);
  if (r.is_zero()) return out;
  for (const auto& [key, v] : entries_) {
    RingValue s = r * v;
    if (!s.is_zero()) out.entries_.insert({key, std::move(s)});
  }
  return out;
}

FiElement FiElement::diagonal_part() const {
  FiElement out(carrier_, ring_);
  for (const auto& [key, v] : entries_)
    if (key.first == key.second) out.entries_.insert({key, v});
  return out;
}

FiElement FiElement::strict_part() const {
  FiElement out(carrier_, ring_);
  for (const auto& [key, v] : entries_)
    if (key.first != key.second) out.entries_.insert({key, v});
  return out;
}

FiElement FiElement::restricted(int u, int v) const {
  if (!carrier_->leq(u, v))
    throw ValidationError("restriction corners (" + std::to_string(u) + ", " +
                          std::to_string(v) + ") are not related");
  FiElement out(carrier_, ring_);
  for (const auto& [key, val] : entries_)
    if (carrier_->leq(u, key.first) && carrier_->leq(key.second, v))
      out.entries_.insert({key, val});
  return out;
}

FiElement FiElement::component_part(int c) const {
  carrier_->component_vertices(c);  // range check
  FiElement out(carrier_, ring_);
  for (const auto& [key, val] : entries_)
    if (carrier_->component_of(key.first) == c) out.entries_.insert({key, val});
  return out;
}

RingValue FiElement::component_trace(int c) const {
  RingValue sum = RingValue::zero(ring_);
  for (int x : carrier_->component_vertices(c)) sum = sum + at(x, x);
  return sum;
}

std::optional<CenterWitness> FiElement::central_witness() const {
  for (const auto& [key, val] : entries_)
    if (key.first != key.second) return std::nullopt;
  CenterWitness w;
  for (int c = 0; c < carrier_->component_count(); ++c) {
    const auto& verts = carrier_->component_vertices(c);
    RingValue v = at(verts.front(), verts.front());
    for (int x : verts)
      if (!(at(x, x) == v)) return std::nullopt;
    w.by_component.push_back(std::move(v));
  }
  return w;
}

bool FiElement::operator==(const FiElement& other) const {
  if (!(ring_ == other.ring_)) return false;
  if (carrier_ != other.carrier_ && !(*carrier_ == *other.carrier_))
    return false;
  return entries_ == other.entries_;
}

FiElement bracket(const FiElement& a, const FiElement& b) {
  return a * b - b * a;
}

FiElement nested_commutator(std::span<const FiElement> args) {
  if (args.empty())
    throw ValidationError("nested commutator needs at least one argument");
  FiElement acc = args[0];
  for (std::size_t k = 1; k < args.size(); ++k) acc = bracket(acc, args[k]);
  return acc;
}

std::pair<FiElement, FiElement> split(const FiElement& a) {
  return {a.diagonal_part(), a.strict_part()};
}

}  // namespace fialg

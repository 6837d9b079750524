#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fialg/preorder.hpp"
#include "fialg/ring.hpp"

namespace fialg {

/// Values of a central element, one per carrier component.
struct CenterWitness {
  std::vector<RingValue> by_component;
};

/// Sparse coefficient table over the pairs x <= y of a shared carrier,
/// with convolution as product: (ab)(x,y) = sum over x <= z <= y of
/// a(x,z) b(z,y).  Zero entries are never stored.
class FiElement {
 public:
  FiElement(std::shared_ptr<const Preorder> carrier, RingDescriptor ring);

  static FiElement basis(std::shared_ptr<const Preorder> carrier,
                         const RingDescriptor& ring, int x, int y);
  static FiElement identity(std::shared_ptr<const Preorder> carrier,
                            const RingDescriptor& ring);
  static FiElement diagonal(std::shared_ptr<const Preorder> carrier,
                            const RingDescriptor& ring,
                            std::span<const RingValue> values);

  const Preorder& carrier() const { return *carrier_; }
  const std::shared_ptr<const Preorder>& carrier_ptr() const {
    return carrier_;
  }
  const RingDescriptor& ring() const { return ring_; }

  /// Zero when absent; also zero on non-pairs x !<= y.
  RingValue at(int x, int y) const;
  /// Stores v at (x, y); zero erases.  Throws unless x <= y.
  FiElement& set(int x, int y, RingValue v);
  const std::map<std::pair<int, int>, RingValue>& entries() const {
    return entries_;
  }
  bool is_zero() const { return entries_.empty(); }

  FiElement operator+(const FiElement& other) const;
  FiElement operator-(const FiElement& other) const;
  FiElement operator-() const;
  /// Convolution product.
  FiElement operator*(const FiElement& other) const;
  FiElement scaled(const RingValue& r) const;

  FiElement diagonal_part() const;
  FiElement strict_part() const;
  /// Entries with u <= x and y <= v.  Requires u <= v.
  FiElement restricted(int u, int v) const;
  /// Entries whose coordinates live in component c.
  FiElement component_part(int c) const;
  RingValue component_trace(int c) const;

  /// Present exactly when the element is diagonal and constant on each
  /// component, i.e. a combination of component identities.
  std::optional<CenterWitness> central_witness() const;

  bool operator==(const FiElement& other) const;

 private:
  void require_same_shape(const FiElement& other) const;

  std::shared_ptr<const Preorder> carrier_;
  RingDescriptor ring_;
  std::map<std::pair<int, int>, RingValue> entries_;
};

/// ab - ba.
FiElement bracket(const FiElement& a, const FiElement& b);

/// Left-nested commutator: args[0] for one argument, otherwise
/// bracket(nested_commutator(args[..k]), args[k]).  Throws on empty.
FiElement nested_commutator(std::span<const FiElement> args);

/// (diagonal part, strict part).
std::pair<FiElement, FiElement> split(const FiElement& a);

}  // namespace fialg

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fialg/errors.hpp"

namespace fialg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Integer-coefficient polynomial in one unknown t, constant term
/// first.  Canonical form carries no trailing zero coefficient, so the
/// zero polynomial is the empty vector.
using PolyCoeffs = std::vector<Int>;

PolyCoeffs poly_trim(PolyCoeffs coeffs);
PolyCoeffs poly_add(const PolyCoeffs& a, const PolyCoeffs& b);
PolyCoeffs poly_neg(const PolyCoeffs& a);
PolyCoeffs poly_mul(const PolyCoeffs& a, const PolyCoeffs& b);
PolyCoeffs poly_derivative(const PolyCoeffs& a);
std::string poly_to_string(const PolyCoeffs& a);

/// Which exact coefficient domain values live in.  Every RingValue
/// carries one; operations on mismatched descriptors throw RingMismatch.
struct RingDescriptor {
  enum class Kind { Integer, Rational, Modular, IntPoly };

  Kind kind = Kind::Integer;
  Int modulus;  // Modular only; > 0

  static RingDescriptor integers();
  static RingDescriptor rationals();
  static RingDescriptor modular(Int m);  // throws ValidationError unless m > 0
  static RingDescriptor int_polynomials();

  /// "int", "rat", "mod:<m>", "intpoly" -- the CLI spelling.
  std::string name() const;
  static std::optional<RingDescriptor> from_name(std::string_view name);

  bool operator==(const RingDescriptor&) const = default;
};

/// One exact scalar: an integer, a reduced fraction, a residue in
/// [0, m), or an integer polynomial.  Immutable value type.
class RingValue {
 public:
  RingValue() = default;  // integer 0

  static RingValue zero(const RingDescriptor& d);
  static RingValue one(const RingDescriptor& d);
  /// k * 1 in the given domain.
  static RingValue from_int(const RingDescriptor& d, const Int& k);

  static RingValue integer(Int v);
  static RingValue rational(Int num, Int den);  // throws ValidationError on den == 0
  static RingValue modular(Int residue, Int modulus);
  static RingValue poly(PolyCoeffs coeffs);

  const RingDescriptor& descriptor() const { return desc_; }
  bool is_zero() const;
  bool is_one() const;

  const Int& as_integer() const;      // Integer payload
  const Rat& as_rational() const;     // Rational payload
  const Int& as_residue() const;      // Modular payload, in [0, m)
  const PolyCoeffs& as_poly() const;  // IntPoly payload

  RingValue operator-() const;
  friend RingValue operator+(const RingValue& a, const RingValue& b);
  friend RingValue operator-(const RingValue& a, const RingValue& b);
  friend RingValue operator*(const RingValue& a, const RingValue& b);
  bool operator==(const RingValue& other) const;

  /// Serialized spelling: "5", "-2/3", "4 mod 15", or a polynomial
  /// rendered like "1 + 2*t - t^3".
  std::string to_string() const;

 private:
  RingValue(RingDescriptor d, std::variant<Int, Rat, PolyCoeffs> v);

  RingDescriptor desc_;
  std::variant<Int, Rat, PolyCoeffs> v_;  // Int doubles as the Modular residue
};

/// h(at) for an integer-coefficient h, evaluated by Horner's rule in
/// the domain of `at`.
RingValue evaluate_int_polynomial(const PolyCoeffs& h, const RingValue& at);

/// Whether k * r = 0 forces r = 0 for k = 2 and k = n - 1.  Only
/// Modular domains can fail: gcd(m, 2) and gcd(m, n-1) must be 1.
struct Admissibility {
  bool admissible = true;
  std::string reason;
  explicit operator bool() const { return admissible; }
};

Admissibility validate_torsionfree(const RingDescriptor& d, int n);

/// Additive self-map of one coefficient domain obeying the product
/// rule.  Zero is valid everywhere; PolyTimesDdt(p): q -> p * dq/dt is
/// the polynomial-domain family (over the other domains the zero map
/// is the only additive derivation, which keeps this catalog closed).
class AdditiveDerivationSpec {
 public:
  enum class Kind { Zero, PolyTimesDdt };

  AdditiveDerivationSpec() = default;  // Zero

  static AdditiveDerivationSpec zero();
  static AdditiveDerivationSpec poly_times_ddt(PolyCoeffs multiplier);

  Kind kind() const { return kind_; }
  const PolyCoeffs& multiplier() const { return multiplier_; }
  /// True for Zero and for PolyTimesDdt with zero multiplier.
  bool is_zero() const;

  /// Applies the map.  PolyTimesDdt rejects non-polynomial inputs.
  RingValue apply(const RingValue& r) const;

  /// Semantic equality: all spellings of the zero map are equal.
  bool operator==(const AdditiveDerivationSpec& other) const;

  std::string to_string() const;

 private:
  Kind kind_ = Kind::Zero;
  PolyCoeffs multiplier_;
};

}  // namespace fialg

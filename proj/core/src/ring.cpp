#include "fialg/ring.hpp"

#include <utility>

namespace fialg {

namespace {

Int normalize_residue(const Int& v, const Int& m) {
  Int r = v % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

PolyCoeffs poly_trim(PolyCoeffs coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

PolyCoeffs poly_add(const PolyCoeffs& a, const PolyCoeffs& b) {
  PolyCoeffs out(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return poly_trim(std::move(out));
}

PolyCoeffs poly_neg(const PolyCoeffs& a) {
  PolyCoeffs out = a;
  for (auto& c : out) c = -c;
  return out;
}

PolyCoeffs poly_mul(const PolyCoeffs& a, const PolyCoeffs& b) {
  if (a.empty() || b.empty()) return {};
  PolyCoeffs out(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return poly_trim(std::move(out));
}

PolyCoeffs poly_derivative(const PolyCoeffs& a) {
  if (a.size() <= 1) return {};
  PolyCoeffs out(a.size() - 1, Int(0));
  for (std::size_t k = 1; k < a.size(); ++k) out[k - 1] = Int(k) * a[k];
  return poly_trim(std::move(out));
}

std::string poly_to_string(const PolyCoeffs& a) {
  if (a.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    Int mag = abs(a[k]);
    bool negative = a[k] < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string coeff = mag.str();
    if (k == 0) {
      out += coeff;
    } else {
      if (mag != 1) out += coeff + "*";
      out += "t";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

RingDescriptor RingDescriptor::integers() { return {Kind::Integer, Int(0)}; }

RingDescriptor RingDescriptor::rationals() { return {Kind::Rational, Int(0)}; }

RingDescriptor RingDescriptor::modular(Int m) {
  if (m <= 0)
    throw ValidationError("modulus must be positive, got " + m.str());
  return {Kind::Modular, std::move(m)};
}

RingDescriptor RingDescriptor::int_polynomials() {
  return {Kind::IntPoly, Int(0)};
}

std::string RingDescriptor::name() const {
  switch (kind) {
    case Kind::Integer:
      return "int";
    case Kind::Rational:
      return "rat";
    case Kind::Modular:
      return "mod:" + modulus.str();
    case Kind::IntPoly:
      return "intpoly";
  }
  return "?";
}

std::optional<RingDescriptor> RingDescriptor::from_name(std::string_view name) {
  if (name == "int") return integers();
  if (name == "rat") return rationals();
  if (name == "intpoly") return int_polynomials();
  if (name.rfind("mod:", 0) == 0) {
    std::string digits(name.substr(4));
    if (digits.empty()) return std::nullopt;
    try {
      Int m(digits);
      if (m <= 0) return std::nullopt;
      return modular(std::move(m));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

RingValue::RingValue(RingDescriptor d, std::variant<Int, Rat, PolyCoeffs> v)
    : desc_(std::move(d)), v_(std::move(v)) {}

RingValue RingValue::zero(const RingDescriptor& d) { return from_int(d, 0); }

RingValue RingValue::one(const RingDescriptor& d) { return from_int(d, 1); }

RingValue RingValue::from_int(const RingDescriptor& d, const Int& k) {
  switch (d.kind) {
    case RingDescriptor::Kind::Integer:
      return integer(k);
    case RingDescriptor::Kind::Rational:
      return RingValue(d, Rat(k));
    case RingDescriptor::Kind::Modular:
      return modular(k, d.modulus);
    case RingDescriptor::Kind::IntPoly:
      return poly(k == 0 ? PolyCoeffs{} : PolyCoeffs{k});
  }
  throw Error("unreachable ring kind");
}

RingValue RingValue::integer(Int v) {
  return RingValue(RingDescriptor::integers(), std::move(v));
}

RingValue RingValue::rational(Int num, Int den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return RingValue(RingDescriptor::rationals(), Rat(num, den));
}

RingValue RingValue::modular(Int residue, Int modulus) {
  RingDescriptor d = RingDescriptor::modular(std::move(modulus));
  Int r = normalize_residue(residue, d.modulus);
  return RingValue(d, std::move(r));
}

RingValue RingValue::poly(PolyCoeffs coeffs) {
  return RingValue(RingDescriptor::int_polynomials(),
                   poly_trim(std::move(coeffs)));
}

bool RingValue::is_zero() const {
  switch (desc_.kind) {
    case RingDescriptor::Kind::Integer:
    case RingDescriptor::Kind::Modular:
      return std::get<Int>(v_) == 0;
    case RingDescriptor::Kind::Rational:
      return std::get<Rat>(v_) == 0;
    case RingDescriptor::Kind::IntPoly:
      return std::get<PolyCoeffs>(v_).empty();
  }
  return false;
}

bool RingValue::is_one() const { return *this == one(desc_); }

const Int& RingValue::as_integer() const {
  if (desc_.kind != RingDescriptor::Kind::Integer)
    throw RingMismatch("value is not an integer: " + to_string());
  return std::get<Int>(v_);
}

const Rat& RingValue::as_rational() const {
  if (desc_.kind != RingDescriptor::Kind::Rational)
    throw RingMismatch("value is not a rational: " + to_string());
  return std::get<Rat>(v_);
}

const Int& RingValue::as_residue() const {
  if (desc_.kind != RingDescriptor::Kind::Modular)
    throw RingMismatch("value is not a residue: " + to_string());
  return std::get<Int>(v_);
}

const PolyCoeffs& RingValue::as_poly() const {
  if (desc_.kind != RingDescriptor::Kind::IntPoly)
    throw RingMismatch("value is not a polynomial: " + to_string());
  return std::get<PolyCoeffs>(v_);
}

namespace {

void require_same_descriptor(const RingValue& a, const RingValue& b) {
  if (!(a.descriptor() == b.descriptor()))
    throw RingMismatch("mixed coefficient domains: " +
                       a.descriptor().name() + " and " + b.descriptor().name());
}

}  // namespace

RingValue RingValue::operator-() const {
  switch (desc_.kind) {
    case RingDescriptor::Kind::Integer:
      return integer(-std::get<Int>(v_));
    case RingDescriptor::Kind::Rational:
      return RingValue(desc_, Rat(-std::get<Rat>(v_)));
    case RingDescriptor::Kind::Modular:
      return modular(-std::get<Int>(v_), desc_.modulus);
    case RingDescriptor::Kind::IntPoly:
      return poly(poly_neg(std::get<PolyCoeffs>(v_)));
  }
  throw Error("unreachable ring kind");
}

RingValue operator+(const RingValue& a, const RingValue& b) {
  require_same_descriptor(a, b);
  switch (a.desc_.kind) {
    case RingDescriptor::Kind::Integer:
      return RingValue::integer(std::get<Int>(a.v_) + std::get<Int>(b.v_));
    case RingDescriptor::Kind::Rational:
      return RingValue(a.desc_, Rat(std::get<Rat>(a.v_) + std::get<Rat>(b.v_)));
    case RingDescriptor::Kind::Modular:
      return RingValue::modular(std::get<Int>(a.v_) + std::get<Int>(b.v_),
                                a.desc_.modulus);
    case RingDescriptor::Kind::IntPoly:
      return RingValue::poly(
          poly_add(std::get<PolyCoeffs>(a.v_), std::get<PolyCoeffs>(b.v_)));
  }
  throw Error("unreachable ring kind");
}

RingValue operator-(const RingValue& a, const RingValue& b) { return a + (-b); }

RingValue operator*(const RingValue& a, const RingValue& b) {
  require_same_descriptor(a, b);
  switch (a.desc_.kind) {
    case RingDescriptor::Kind::Integer:
      return RingValue::integer(std::get<Int>(a.v_) * std::get<Int>(b.v_));
    case RingDescriptor::Kind::Rational:
      return RingValue(a.desc_, Rat(std::get<Rat>(a.v_) * std::get<Rat>(b.v_)));
    case RingDescriptor::Kind::Modular:
      return RingValue::modular(std::get<Int>(a.v_) * std::get<Int>(b.v_),
                                a.desc_.modulus);
    case RingDescriptor::Kind::IntPoly:
      return RingValue::poly(
          poly_mul(std::get<PolyCoeffs>(a.v_), std::get<PolyCoeffs>(b.v_)));
  }
  throw Error("unreachable ring kind");
}

bool RingValue::operator==(const RingValue& other) const {
  if (!(desc_ == other.desc_)) return false;
  return v_ == other.v_;
}

std::string RingValue::to_string() const {
  switch (desc_.kind) {
    case RingDescriptor::Kind::Integer:
      return std::get<Int>(v_).str();
    case RingDescriptor::Kind::Rational: {
      const Rat& q = std::get<Rat>(v_);
      return numerator(q).str() + "/" + denominator(q).str();
    }
    case RingDescriptor::Kind::Modular:
      return std::get<Int>(v_).str() + " mod " + desc_.modulus.str();
    case RingDescriptor::Kind::IntPoly:
      return poly_to_string(std::get<PolyCoeffs>(v_));
  }
  return "?";
}

RingValue evaluate_int_polynomial(const PolyCoeffs& h, const RingValue& at) {
  const RingDescriptor& d = at.descriptor();
  RingValue acc = RingValue::zero(d);
  for (auto it = h.rbegin(); it != h.rend(); ++it)
    acc = acc * at + RingValue::from_int(d, *it);
  return acc;
}

Admissibility validate_torsionfree(const RingDescriptor& d, int n) {
  if (n < 2)
    return {false, "law arity must be at least 2, got " + std::to_string(n)};
  if (d.kind != RingDescriptor::Kind::Modular) return {true, ""};
  for (Int k : {Int(2), Int(n - 1)}) {
    if (k <= 1) continue;
    Int g = gcd(d.modulus, k);
    if (g != 1)
      return {false, "modulus " + d.modulus.str() + " shares factor " +
                         g.str() + " with " + k.str() +
                         ", so nonzero " + k.str() + "-torsion exists"};
  }
  return {true, ""};
}

AdditiveDerivationSpec AdditiveDerivationSpec::zero() { return {}; }

AdditiveDerivationSpec AdditiveDerivationSpec::poly_times_ddt(
    PolyCoeffs multiplier) {
  AdditiveDerivationSpec spec;
  spec.kind_ = Kind::PolyTimesDdt;
  spec.multiplier_ = poly_trim(std::move(multiplier));
  return spec;
}

bool AdditiveDerivationSpec::is_zero() const {
  return kind_ == Kind::Zero || multiplier_.empty();
}

RingValue AdditiveDerivationSpec::apply(const RingValue& r) const {
  if (kind_ == Kind::Zero) return RingValue::zero(r.descriptor());
  if (r.descriptor().kind != RingDescriptor::Kind::IntPoly)
    throw RingMismatch(
        "poly_times_ddt is only defined over the polynomial domain, got " +
        r.descriptor().name());
  return RingValue::poly(poly_mul(multiplier_, poly_derivative(r.as_poly())));
}

bool AdditiveDerivationSpec::operator==(
    const AdditiveDerivationSpec& other) const {
  if (is_zero() || other.is_zero()) return is_zero() && other.is_zero();
  return multiplier_ == other.multiplier_;
}

std::string AdditiveDerivationSpec::to_string() const {
  if (is_zero()) return "zero";
  return "(" + poly_to_string(multiplier_) + ")*d/dt";
}

}  // namespace fialg

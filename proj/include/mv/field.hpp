#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "mv/fppoly.hpp"

namespace mv {

using Int = boost::multiprecision::cpp_int;

// Ground field descriptor: Q or F_p(t).
struct FieldDesc {
  enum class Kind { Rationals, RationalFunctions };
  Kind kind = Kind::Rationals;
  int64_t characteristic = 0;  // prime p, RationalFunctions only
  std::string variable = "t";  // RationalFunctions only

  static FieldDesc rationals() { return FieldDesc{}; }
  static FieldDesc rational_functions(int64_t p, std::string var = "t");

  bool operator==(const FieldDesc& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::Rationals) return true;
    return characteristic == o.characteristic && variable == o.variable;
  }
  bool operator!=(const FieldDesc& o) const { return !(*this == o); }
  std::string to_string() const;
};

// Exact element of the ground field, always in canonical form:
//  - Q: gcd(num, den) = 1, den > 0
//  - F_p(t): gcd(num, den) = 1, den monic, coefficients in [0, p)
class FieldElem {
 public:
  explicit FieldElem(const FieldDesc& f = FieldDesc::rationals());  // zero
  static FieldElem from_int(const FieldDesc& f, const Int& n);
  static FieldElem rational(const Int& num, const Int& den);
  static FieldElem fraction(const FieldDesc& f, const Int& num, const Int& den);
  static FieldElem poly_fraction(const FieldDesc& f, const FpPoly& num,
                                 const FpPoly& den);

  const FieldDesc& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;  // throws on zero divisor
  FieldElem operator-() const;
  FieldElem inverse() const;
  FieldElem pow(int64_t e) const;  // negative exponents allowed for units

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  // rational representation accessors (Q only)
  const Int& num() const { return num_; }
  const Int& den() const { return den_; }
  // polynomial representation accessors (F_p(t) only)
  const FpPoly& pnum() const { return pnum_; }
  const FpPoly& pden() const { return pden_; }

  // height: max(|num|, |den|) over Q, max degree over F_p(t) (as Int)
  Int height() const;

  std::string render() const;

 private:
  FieldDesc field_;
  Int num_{0}, den_{1};
  FpPoly pnum_, pden_;
  void normalize();
  void check_same_field(const FieldElem& o) const;
};

// Canonical total order on field elements.  0 comes first; after that the
// key over Q is (height asc, |num| desc, |den| asc, positive first) and over
// F_p(t) (height asc, num degree desc, den degree asc, coefficient order).
// This order drives every "first witness" and "first counterexample" rule.
bool canonical_less(const FieldElem& a, const FieldElem& b);

struct CanonicalLess {
  bool operator()(const FieldElem& a, const FieldElem& b) const {
    return canonical_less(a, b);
  }
};

void sort_canonical(std::vector<FieldElem>& xs);

// Element grammar parser (shared with the instance and sentence parsers):
//   elem   := signed ("/" signed)?
//   signed := "-"? atom
//   atom   := integer | polyExpr | "(" signed ")"
FieldElem parse_element(const std::string& text, const FieldDesc& field);

// All nonzero elements u * prod(g_i^{e_i}) with |e_i| <= heightBound over the
// given generators, together with 0; u ranges over {+-1} for Q and over the
// nonzero prime-field constants for F_p(t).  Sorted canonically.
std::vector<FieldElem> sample_universe(const FieldDesc& field,
                                       int64_t heightBound,
                                       const std::vector<FieldElem>& generators);

// Every field element of height <= h whose numerator and denominator are
// (up to sign / constants) products of the given generators, plus 0.
std::vector<FieldElem> smooth_elements(const FieldDesc& field, const Int& h,
                                       const std::vector<FieldElem>& generators);

// Every rational a/b in canonical form with |a|, |b| <= h, plus 0.
std::vector<FieldElem> all_rationals_up_to_height(int64_t h);

}  // namespace mv

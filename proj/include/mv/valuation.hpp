#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mv/field.hpp"

namespace mv {

// value of an element under a discrete valuation; infinite only for 0
struct ValueExt {
  bool infinite = false;
  int64_t v = 0;

  static ValueExt inf() { return ValueExt{true, 0}; }
  static ValueExt of(int64_t n) { return ValueExt{false, n}; }

  bool operator==(const ValueExt& o) const {
    return infinite == o.infinite && (infinite || v == o.v);
  }
  bool operator!=(const ValueExt& o) const { return !(*this == o); }
  // infinite compares above every finite value
  bool operator<(const ValueExt& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return v < o.v;
  }
  bool operator>=(const ValueExt& o) const { return !(*this < o); }
  bool geq(int64_t n) const { return infinite || v >= n; }
  std::string to_string() const;
};

ValueExt min_value(const ValueExt& a, const ValueExt& b);

// discrete rank-1 valuation: p-adic on Q, f-adic or degree on F_p(t)
class Valuation {
 public:
  enum class Kind { PAdic, PolyAdic, Degree };

  static Valuation padic(const Int& p);
  static Valuation polyadic(const FpPoly& f, const std::string& var = "t");
  static Valuation degree(const FieldDesc& field);

  Kind kind() const { return kind_; }
  const FieldDesc& field() const { return field_; }
  const Int& prime() const { return prime_; }
  const FpPoly& poly() const { return poly_; }

  bool operator==(const Valuation& o) const;
  bool operator!=(const Valuation& o) const { return !(*this == o); }

  ValueExt val(const FieldElem& x) const;
  bool in_ring(const FieldElem& x) const { return val(x).geq(0); }
  FieldElem uniformizer() const;  // p, f, or 1/t
  std::string render() const;     // "padic 2", "polyadic t^2+1", "degree"

  // default is an unusable placeholder; every factory validates its input
  Valuation() = default;

 private:
  Kind kind_ = Kind::PAdic;
  FieldDesc field_;
  Int prime_{0};
  FpPoly poly_;
};

std::vector<ValueExt> value_vector(const std::vector<Valuation>& vs,
                                   const FieldElem& x);

// some x with v(x) > 0 > w(x), for distinct v, w over one field
FieldElem incomparability_witness(const Valuation& v, const Valuation& w);

struct ApproxTarget {
  Valuation v;
  FieldElem y;
  int64_t k;
};

// strong approximation: z with val(v_i, z - y_i) >= k_i for all i.  The
// result is re-verified before returning, so a returned value is always
// correct; construction retries with doubled precision until it verifies.
FieldElem approximate(const std::vector<ApproxTarget>& targets);

// element whose value vector under vs is exactly the given integers
FieldElem element_with_value_vector(const std::vector<Valuation>& vs,
                                    const std::vector<int64_t>& targets);

}  // namespace mv

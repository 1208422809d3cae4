#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mv {

// Dense polynomial over the prime field F_p.  Coefficients are kept in
// [0, p); the zero polynomial has an empty coefficient vector.
class FpPoly {
 public:
  FpPoly() : p_(2) {}
  FpPoly(int64_t p, std::vector<int64_t> coeffs);
  static FpPoly zero(int64_t p) { return FpPoly(p, {}); }
  static FpPoly constant(int64_t p, int64_t c) { return FpPoly(p, {c}); }
  static FpPoly variable(int64_t p) { return FpPoly(p, {0, 1}); }

  int64_t p() const { return p_; }
  // degree of the zero polynomial is -1
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  int64_t leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  int64_t coeff(size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  const std::vector<int64_t>& coeffs() const { return coeffs_; }
  bool is_monic() const { return leading() == 1; }

  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator*(const FpPoly& o) const;
  FpPoly operator-() const;
  bool operator==(const FpPoly& o) const {
    return p_ == o.p_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const FpPoly& o) const { return !(*this == o); }

  // quotient and remainder; divisor must be nonzero
  static void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r);
  FpPoly operator/(const FpPoly& o) const;
  FpPoly operator%(const FpPoly& o) const;

  // monic gcd; gcd(0, 0) = 0
  static FpPoly gcd(FpPoly a, FpPoly b);

  FpPoly scaled(int64_t c) const;  // c * this
  FpPoly monic() const;            // divide by leading coefficient

  // number of times `f` divides this (this != 0, deg f >= 1)
  int multiplicity(const FpPoly& f) const;

  // trial division by every monic polynomial of degree <= deg/2
  bool is_irreducible() const;

  // total order used for canonical element ordering: by degree, then
  // lexicographic on coefficient vectors (highest degree first)
  static int compare(const FpPoly& a, const FpPoly& b);

  std::string to_string(const std::string& var) const;

 private:
  int64_t p_;
  std::vector<int64_t> coeffs_;
  void trim();
  int64_t inv_mod(int64_t a) const;
};

}  // namespace mv

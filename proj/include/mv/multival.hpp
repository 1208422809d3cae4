#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mv/field.hpp"
#include "mv/valuation.hpp"

namespace mv {

// R = O_1 cap ... cap O_n for pairwise distinct rank-1 valuations
class MultiValRing {
 public:
  explicit MultiValRing(std::vector<Valuation> vs);
  std::size_t n() const { return vals_.size(); }
  const std::vector<Valuation>& valuations() const { return vals_; }
  const Valuation& at(std::size_t i) const { return vals_[i]; }
  const FieldDesc& field() const { return field_; }

  bool contains(const FieldElem& x) const;
  std::vector<ValueExt> valvec(const FieldElem& x) const;
  // R' >= R as rings iff R' uses a subset of R's valuations
  bool superring_of(const MultiValRing& sub) const;
  std::optional<std::size_t> index_of(const Valuation& v) const;
  std::string render() const;

 private:
  std::vector<Valuation> vals_;
  FieldDesc field_;
};

// value-vector module M(gamma) = {x : v_i(x) >= gamma_i}; Bottom = {0};
// the all-(-inf) vector is K itself
class ModuleVec {
 public:
  struct Gamma {
    bool negInf = false;
    int64_t g = 0;
  };

  static ModuleVec bottom(std::size_t n);
  static ModuleVec top(std::size_t n);  // K
  static ModuleVec of(const std::vector<int64_t>& g);
  static ModuleVec make(std::size_t n, const std::vector<Gamma>& g);

  std::size_t n() const { return n_; }
  bool is_bottom() const { return bottom_; }
  bool is_top() const;
  const Gamma& at(std::size_t i) const { return gamma_[i]; }
  bool all_finite() const;

  bool contains(const MultiValRing& R, const FieldElem& x) const;
  // intersection (lattice meet): componentwise max
  ModuleVec meet(const ModuleVec& o) const;
  // sum (lattice join): componentwise min
  ModuleVec join(const ModuleVec& o) const;
  // subset order: A <= B iff gamma_A >= gamma_B componentwise
  bool leq(const ModuleVec& o) const;
  bool operator==(const ModuleVec& o) const;
  bool operator!=(const ModuleVec& o) const { return !(*this == o); }
  // c * M(gamma) = M(gamma + valvec(c)), c nonzero
  ModuleVec scaled(const MultiValRing& R, const FieldElem& c) const;

  std::string render() const;

  ModuleVec() = default;  // 0-ary placeholder; use the factories

 private:
  std::size_t n_ = 0;
  bool bottom_ = false;
  std::vector<Gamma> gamma_;
};

// answer to "x in sum of x_j R?", self-verifying either way
struct SumCertificate {
  bool positive = false;
  std::vector<FieldElem> coeffs;  // positive: x = sum gens[j] * coeffs[j]
  std::size_t refuteIndex = 0;    // refutation: val_k(x) < min_j val_k(x_j)
  std::string describe(const MultiValRing& R) const;
};

SumCertificate member_sum(const MultiValRing& R, const FieldElem& x,
                          const std::vector<FieldElem>& gens);

// which of n+1 elements lies in the span of the others (W_n selection)
std::pair<std::size_t, SumCertificate> wset_select(
    const MultiValRing& R, const std::vector<FieldElem>& xs);

struct WeightResult {
  std::size_t n = 0;
  std::vector<FieldElem> lowerWitness;  // element i refutes membership in the rest
};

WeightResult weight(const MultiValRing& R);

struct MaxIdeal {
  std::size_t index;  // which valuation cuts the ideal out
  Valuation v;
  bool contains(const MultiValRing& R, const FieldElem& x) const;
};

std::vector<MaxIdeal> maximal_ideals(const MultiValRing& R);

FieldElem jacobson_witness(const MultiValRing& R);

// a_S for S subset of the non-pivot indices: val_pivot(a_S) > 0 and
// val_j(a_S) > 0 iff j in S
struct Selector {
  std::vector<std::size_t> subset;  // indices into R (pivot excluded)
  FieldElem a;
};

std::vector<Selector> crt_selectors(const MultiValRing& R, std::size_t pIndex);

bool localization_member(const MultiValRing& R, std::size_t pIndex,
                         const FieldElem& x);

struct NotIntegralReport {
  std::size_t valIndex = 0;  // valuation with val(1/x) < 0
  int64_t inverseValue = 0;
  int degreeBound = 0;
  std::size_t relationsTested = 0;
  bool allNonzero = false;
};

NotIntegralReport not_integral_witness(const MultiValRing& R,
                                       const FieldElem& x,
                                       int degreeBound = 4);

struct DivisionContinuityReport {
  ModuleVec Iprime;
  std::size_t samplesTested = 0;
  bool ok = false;
};

DivisionContinuityReport division_continuity(const MultiValRing& R,
                                             const ModuleVec& I);

std::vector<FieldElem> subring_generated(const FieldDesc& field,
                                         const std::vector<FieldElem>& seed,
                                         int depth);

struct CoembedResult {
  bool coembeddable = false;
  FieldElem a, b;              // aX <= Y and bY <= X when coembeddable
  std::size_t obstruction = 0;  // component where one side is unbounded
};

CoembedResult coembeddable(const MultiValRing& R, const ModuleVec& X,
                           const ModuleVec& Y);

// valuations whose rings contain R; for this class, exactly R's components
std::vector<Valuation> coarsening_report(const MultiValRing& R);

struct IndependenceWitness {
  FieldElem x, y, z;
  int64_t k1 = 0, k2 = 0;
};

struct ClassifyResult {
  bool independent = false;
  Valuation common;  // valid when !independent
  std::vector<IndependenceWitness> witnesses;
};

ClassifyResult classify_pair(const MultiValRing& R, const MultiValRing& R1,
                             const MultiValRing& R2);

struct VnResult {
  bool pass = false;
  FieldElem witness;  // first counterexample when !pass
};

VnResult vn_check(const MultiValRing& R, const std::vector<FieldElem>& qs,
                  const std::vector<FieldElem>& universe);

struct BumpReport {
  bool coembeddableBranch = false;  // Rp = R
  std::size_t weightOfRp = 0;       // W_{n-1} branch: m <= n-1
};

BumpReport verify_bump(const MultiValRing& R, const MultiValRing& Rp);

}  // namespace mv

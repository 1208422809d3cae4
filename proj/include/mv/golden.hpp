#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mv/multival.hpp"

namespace mv {

// the value-vector lattice of a multivaluation ring, restricted to a finite
// fragment |gamma_i| <= bound (plus Bottom and Top) for enumeration
struct GoldenLatticeView {
  MultiValRing R;
  int64_t bound = 4;
  int64_t scaleHeight = 16;
};

struct GoldenAxiomReport {
  bool latticeAxiom = false;       // 0, K present; meets/joins stay inside
  bool scalingAxiom = false;       // c * M(gamma) = M(gamma + valvec(c))
  bool rankAxiom = false;          // fragment cube rank = n
  bool intersectionAxiom = false;  // nonzero meets of nonzero elements
  bool nondegeneracyAxiom = false; // an element besides Bottom and Top
  int fragmentRank = 0;
  bool all() const {
    return latticeAxiom && scalingAxiom && rankAxiom && intersectionAxiom &&
           nondegeneracyAxiom;
  }
};

GoldenAxiomReport golden_axioms(const GoldenLatticeView& V);

struct PedestalResult {
  ModuleVec A;               // = R as a module over itself
  std::vector<ModuleVec> Bs; // coordinate relaxations, a strict n-cube over A
};

PedestalResult pedestal(const GoldenLatticeView& V);

std::vector<FieldElem> guard_set(const GoldenLatticeView& V,
                                 const ModuleVec& A);

struct GuardCheck {
  bool guarded = false;
  ModuleVec counterexample;  // contains S but not A, when !guarded
};

GuardCheck check_guard(const GoldenLatticeView& V,
                       const std::vector<FieldElem>& S, const ModuleVec& A);

FieldElem scale_into(const GoldenLatticeView& V,
                     const std::vector<FieldElem>& S, const ModuleVec& A);

}  // namespace mv

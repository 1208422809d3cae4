#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mv/multival.hpp"

namespace mv {

// term of the sentence language: a field expression over bound variables
struct Term {
  enum class K { Var, Lit, Add, Sub, Mul, Div, Neg, Pow };
  K k = K::Lit;
  std::string name;      // Var
  int slot = -1;         // Var: resolved binding index
  FieldElem lit;         // Lit
  int64_t exp = 1;       // Pow
  std::vector<Term> kids;
};

// one summand of a neighborhood expression: coeff * U (coeff optional)
struct Summand {
  bool hasCoeff = false;
  Term coeff;
  std::string var;
  int slot = -1;
};

struct Sentence {
  enum class K {
    NAll, NEx,      // neighborhood quantifiers
    EAll, EEx,      // element quantifiers over Scope or a neighborhood var
    CEx,            // nonzero constant quantifier
    And, Or, Not, Implies,
    Mem, Eq, Neq
  };
  K k = K::Eq;
  std::string var;
  int slot = -1;
  int basis = 0;          // neighborhood quantifiers: 0 = first structure
  std::string scopeTag;   // EAll/EEx: empty = Scope, else a neighborhood var
  int scopeSlot = -1;
  std::vector<Sentence> kids;
  Term t1, t2;            // Mem: t1; Eq/Neq: t1, t2
  std::vector<Summand> sum;
};

constexpr std::size_t kMaxSummands = 8;

// parse + slot resolution; throws ParseError with position
Sentence parse_sentence(const std::string& text, const FieldDesc& field);
std::string print_sentence(const Sentence& s);

struct PolarityResult {
  bool ok = true;
  std::string path;     // node trail to the violation
  std::string message;
};

PolarityResult check_polarity(const Sentence& s);

// evaluation scope: basis {cR : c in scaleSet}, bounded element domain
struct Structure {
  FieldDesc field;
  MultiValRing basisRing;
  std::vector<FieldElem> scaleSet;
  std::vector<FieldElem> elemScope;

  // scaleSet {+-s, +-1/s} from uniformizer products of height <= scaleHeight;
  // elemScope = smooth fractions of height <= elemHeight plus the power
  // ladder (N/pi_i)^k, k <= ladderK, whose members witness W_m refutations
  static Structure standard(const MultiValRing& R, int64_t elemHeight,
                            int64_t scaleHeight, int ladderK);
  // grading that keeps multi-quantifier scans tractable as n grows
  static Structure graded(const MultiValRing& R);
};

struct WitnessNode {
  std::string label;  // "forallN U = 2", "atom x in U -> false", ...
  bool holds = false;
  std::vector<WitnessNode> kids;
};

struct EvalResult {
  bool holds = false;  // HoldsOnScope / FailsOnScope
  WitnessNode witness;
};

// st2 supplies the basis for quantifiers with basis = 1 (independence runs)
EvalResult evaluate(const Sentence& s, const Structure& st,
                    const Structure* st2 = nullptr);

// walk the witness tree, re-deciding every recorded step; throws
// InternalCheckError on any mismatch
void replay_witness(const Sentence& s, const Structure& st,
                    const EvalResult& r, const Structure* st2 = nullptr);

// named sentences; n or qs are consumed where meaningful
Sentence builtin_sentence(const std::string& name, const FieldDesc& field,
                          int n = 0, const std::vector<FieldElem>& qs = {});
std::vector<std::string> builtin_names();

}  // namespace mv

#include <doctest.h>

#include "mv/errors.hpp"
#include "mv/multival.hpp"

using namespace mv;

namespace {
const FieldDesc Q = FieldDesc::rationals();
const FieldDesc F5 = FieldDesc::rational_functions(5, "t");

FieldElem q(int64_t n, int64_t d = 1) { return FieldElem::fraction(Q, n, d); }

MultiValRing ring23() {
  return MultiValRing({Valuation::padic(2), Valuation::padic(3)});
}
MultiValRing ring235() {
  return MultiValRing(
      {Valuation::padic(2), Valuation::padic(3), Valuation::padic(5)});
}

// verify a certificate against its defining equations, not the producer
void verify_cert(const MultiValRing& R, const FieldElem& x,
                 const std::vector<FieldElem>& gens,
                 const SumCertificate& cert) {
  if (cert.positive) {
    REQUIRE(cert.coeffs.size() == gens.size());
    FieldElem sum(R.field());
    for (size_t j = 0; j < gens.size(); ++j) {
      CHECK(R.contains(cert.coeffs[j]));
      sum = sum + gens[j] * cert.coeffs[j];
    }
    CHECK(sum == x);
  } else {
    size_t k = cert.refuteIndex;
    ValueExt xv = R.at(k).val(x);
    for (const auto& g : gens) CHECK(xv < R.at(k).val(g));
  }
}
}  // namespace

TEST_CASE("ring membership") {
  auto R = ring23();
  CHECK(R.contains(q(6)));
  CHECK(R.contains(q(5, 7)));
  CHECK(!R.contains(q(1, 2)));
  CHECK(!R.contains(q(5, 6)));
  CHECK(R.contains(q(0)));
  CHECK_THROWS_AS(
      MultiValRing({Valuation::padic(2), Valuation::padic(2)}), DomainError);
}

TEST_CASE("module sum membership") {
  auto R = ring23();
  auto c1 = member_sum(R, q(3), {q(2)});
  CHECK(!c1.positive);
  CHECK(c1.refuteIndex == 0);  // v2(3) = 0 < 1 = v2(2)
  verify_cert(R, q(3), {q(2)}, c1);

  auto c2 = member_sum(R, q(6), {q(4), q(9)});
  CHECK(c2.positive);
  verify_cert(R, q(6), {q(4), q(9)}, c2);

  auto c3 = member_sum(R, q(0), {q(7)});
  CHECK(c3.positive);
  verify_cert(R, q(0), {q(7)}, c3);
}

TEST_CASE("membership agrees with bounded brute force") {
  auto R = ring23();
  auto u = sample_universe(Q, 2, {q(2), q(3)});
  auto rCoeffs = sample_universe(Q, 2, {q(2), q(3)});
  for (const auto& x : u)
    for (const auto& g1 : u) {
      if (g1.is_zero()) continue;
      auto cert = member_sum(R, x, {g1});
      verify_cert(R, x, {g1}, cert);
      if (!cert.positive) {
        // no single bounded coefficient can work
        for (const auto& c : rCoeffs)
          if (R.contains(c)) CHECK(g1 * c != x);
      }
    }
}

TEST_CASE("wset selection") {
  auto R = ring23();
  auto [i1, c1] = wset_select(R, {q(4), q(9), q(1)});
  CHECK(i1 == 2);
  verify_cert(R, q(1), {q(4), q(9)}, c1);

  MultiValRing R2({Valuation::padic(2)});
  auto [i2, c2] = wset_select(R2, {q(1), q(2)});
  CHECK(i2 == 1);
  verify_cert(R2, q(2), {q(1)}, c2);

  auto [i3, c3] = wset_select(R, {q(3), q(0), q(2)});
  CHECK(i3 == 1);  // the zero entry is always selectable

  CHECK_THROWS_AS(wset_select(R, {q(1), q(2)}), DomainError);
  CHECK_THROWS_AS(wset_select(R2, {q(0), q(0)}), DomainError);
}

TEST_CASE("weight with two-sided certificates") {
  MultiValRing R1({Valuation::padic(2)});
  CHECK(weight(R1).n == 1);

  auto w2 = weight(ring23());
  CHECK(w2.n == 2);
  REQUIRE(w2.lowerWitness.size() == 2);
  CHECK(w2.lowerWitness[0] == q(3));
  CHECK(w2.lowerWitness[1] == q(2));

  auto w3 = weight(ring235());
  CHECK(w3.n == 3);
  CHECK(w3.lowerWitness == std::vector<FieldElem>{q(15), q(10), q(6)});
  auto R = ring235();
  for (size_t i = 0; i < 3; ++i) {
    std::vector<FieldElem> rest;
    for (size_t j = 0; j < 3; ++j)
      if (j != i) rest.push_back(w3.lowerWitness[j]);
    auto cert = member_sum(R, w3.lowerWitness[i], rest);
    CHECK(!cert.positive);
    verify_cert(R, w3.lowerWitness[i], rest, cert);
  }
}

TEST_CASE("maximal ideals") {
  auto R = ring23();
  auto ms = maximal_ideals(R);
  REQUIRE(ms.size() == 2);
  CHECK(ms[0].contains(R, q(6)));
  CHECK(ms[1].contains(R, q(6)));
  CHECK(ms[0].contains(R, q(2)));
  CHECK(!ms[1].contains(R, q(2)));
  CHECK(!ms[0].contains(R, q(5)));
  CHECK(!ms[1].contains(R, q(5)));
  CHECK(maximal_ideals(MultiValRing({Valuation::padic(2)})).size() == 1);
}

TEST_CASE("jacobson witness") {
  CHECK(jacobson_witness(ring23()) == q(6));
  CHECK(jacobson_witness(MultiValRing({Valuation::padic(2)})) == q(2));
  MultiValRing Rf({Valuation::polyadic(FpPoly::variable(5)),
                   Valuation::polyadic(FpPoly(5, {1, 1}))});
  CHECK(jacobson_witness(Rf) == parse_element("t^2+t", F5));
}

TEST_CASE("crt selectors") {
  auto R = ring23();
  auto sels = crt_selectors(R, 0);
  REQUIRE(sels.size() == 2);
  CHECK(sels[0].subset.empty());
  CHECK(sels[0].a == q(2));
  CHECK(sels[1].subset == std::vector<size_t>{1});
  CHECK(sels[1].a == q(6));

  auto R3 = ring235();
  auto sels3 = crt_selectors(R3, 0);
  CHECK(sels3.size() == 4);
  for (const auto& s : sels3) {
    CHECK(R3.at(0).val(s.a).geq(1));
    for (size_t j = 1; j < 3; ++j) {
      bool inS = std::find(s.subset.begin(), s.subset.end(), j) !=
                 s.subset.end();
      CHECK(R3.at(j).val(s.a).geq(1) == inS);
    }
  }

  MultiValRing R1({Valuation::padic(2)});
  auto sels1 = crt_selectors(R1, 0);
  REQUIRE(sels1.size() == 1);
  CHECK(sels1[0].a == q(2));
}

TEST_CASE("localization membership") {
  auto R = ring23();
  CHECK(localization_member(R, 0, q(3)));   // 1/(3+2) = 1/5 in R
  CHECK(!localization_member(R, 0, q(2)));  // 2 + a_S stays in m_1
  CHECK(localization_member(R, 0, q(1)));
  CHECK_THROWS_AS(localization_member(R, 0, q(1, 2)), DomainError);
}

TEST_CASE("non-integrality of inverses") {
  auto R = ring23();
  auto rep = not_integral_witness(R, q(2));
  CHECK(rep.valIndex == 0);
  CHECK(rep.inverseValue == -1);
  CHECK(rep.allNonzero);
  CHECK(not_integral_witness(R, q(6)).allNonzero);
  CHECK_THROWS_AS(not_integral_witness(R, q(1)), DomainError);
}

TEST_CASE("division continuity") {
  auto R = ring23();
  auto r1 = division_continuity(R, ModuleVec::of({2, 0}));
  CHECK(r1.ok);
  CHECK(r1.Iprime == ModuleVec::of({2, 1}));
  // spot value x = 12 from I': 1/(1+12) - 1 = -12/13 lands in I
  CHECK(ModuleVec::of({2, 0}).contains(
      R, (q(1) / q(13)) - q(1)));
  CHECK(division_continuity(R, ModuleVec::of({0, 0})).Iprime ==
        ModuleVec::of({1, 1}));
  CHECK(division_continuity(R, ModuleVec::of({1, 1})).Iprime ==
        ModuleVec::of({1, 1}));
}

TEST_CASE("subring generated") {
  auto gen = subring_generated(Q, {q(1, 2)}, 1);
  CHECK(std::find(gen.begin(), gen.end(), q(1, 4)) != gen.end());
  CHECK(std::find(gen.begin(), gen.end(), q(-1, 2)) != gen.end());
  auto gen2 = subring_generated(Q, {q(1, 2)}, 2);
  CHECK(std::find(gen2.begin(), gen2.end(), q(1, 16)) != gen2.end());
  for (const auto& x : subring_generated(Q, {}, 3)) CHECK(x.den() == 1);
}

TEST_CASE("co-embeddability of value-vector modules") {
  auto R = ring23();
  auto c1 = coembeddable(R, ModuleVec::of({0, 0}), ModuleVec::of({1, 0}));
  CHECK(c1.coembeddable);
  // aX <= Y and bY <= X by gamma comparison
  CHECK(ModuleVec::of({0, 0}).scaled(R, c1.a).leq(ModuleVec::of({1, 0})));
  CHECK(ModuleVec::of({1, 0}).scaled(R, c1.b).leq(ModuleVec::of({0, 0})));

  ModuleVec X = ModuleVec::make(2, {{false, 0}, {true, 0}});
  ModuleVec Y = ModuleVec::make(2, {{true, 0}, {false, 0}});
  auto c2 = coembeddable(R, X, Y);
  CHECK(!c2.coembeddable);
  CHECK(c2.obstruction == 0);

  auto c3 = coembeddable(R, ModuleVec::of({1, -2}), ModuleVec::of({1, -2}));
  CHECK(c3.coembeddable);
  CHECK(c3.a == q(1));
  CHECK(c3.b == q(1));
}

TEST_CASE("coarsening report") {
  auto cs = coarsening_report(ring23());
  REQUIRE(cs.size() == 2);
  CHECK(cs[0] == Valuation::padic(2));
  CHECK(cs[1] == Valuation::padic(3));
  CHECK(coarsening_report(MultiValRing({Valuation::padic(2)})).size() == 1);
  MultiValRing Rf(
      {Valuation::polyadic(FpPoly::variable(5)), Valuation::degree(F5)});
  CHECK(coarsening_report(Rf).size() == 2);
}

TEST_CASE("independence dichotomy") {
  auto R = ring235();
  MultiValRing R23({Valuation::padic(2), Valuation::padic(3)});
  MultiValRing R35({Valuation::padic(3), Valuation::padic(5)});
  auto shared = classify_pair(R, R23, R35);
  CHECK(!shared.independent);
  CHECK(shared.common == Valuation::padic(3));

  MultiValRing R2({Valuation::padic(2)});
  MultiValRing R3({Valuation::padic(3)});
  auto indep = classify_pair(R, R2, R3);
  CHECK(indep.independent);
  CHECK(indep.witnesses.size() >= 5);
  // z is simultaneously near x in tau_1 and near y in tau_2
  for (const auto& w : indep.witnesses) {
    CHECK(Valuation::padic(2).val(w.z - w.x).geq(w.k1));
    CHECK(Valuation::padic(3).val(w.z - w.y).geq(w.k2));
  }
  // the reference target: z = 65 decomposes as 64 + 1 with v2(64) >= 3
  CHECK(Valuation::padic(2).val(q(65) - q(1)).geq(3));

  auto same = classify_pair(R, R23, R23);
  CHECK(!same.independent);
}

TEST_CASE("vn check") {
  auto R = ring23();
  auto universe = all_rationals_up_to_height(40);
  auto pass = vn_check(R, {q(0), q(1)}, universe);
  CHECK(pass.pass);
  auto fail = vn_check(R, {q(0)}, universe);
  CHECK(!fail.pass);
  CHECK(fail.witness == q(3, 2));
  // the witness really escapes: x and 1/x both outside R
  CHECK(!R.contains(q(3, 2)));
  CHECK(!R.contains(q(2, 3)));
  MultiValRing R2({Valuation::padic(2)});
  CHECK(vn_check(R2, {q(0)}, universe).pass);
}

TEST_CASE("weight drop under coarsening") {
  auto R = ring23();
  MultiValRing R2({Valuation::padic(2)});
  auto b1 = verify_bump(R, R2);
  CHECK(!b1.coembeddableBranch);
  CHECK(b1.weightOfRp == 1);

  auto b2 = verify_bump(R, R);
  CHECK(b2.coembeddableBranch);

  auto R3 = ring235();
  auto b3 = verify_bump(R3, R);
  CHECK(!b3.coembeddableBranch);
  CHECK(b3.weightOfRp == 2);

  CHECK_THROWS_AS(verify_bump(R2, R), DomainError);
}

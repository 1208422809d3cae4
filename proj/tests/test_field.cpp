#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mv/errors.hpp"
#include "mv/field.hpp"

using namespace mv;

namespace {
const FieldDesc Q = FieldDesc::rationals();
const FieldDesc F5 = FieldDesc::rational_functions(5, "t");

FieldElem q(int64_t n, int64_t d = 1) { return FieldElem::fraction(Q, n, d); }
}  // namespace

TEST_CASE("rational canonical form") {
  CHECK(parse_element("3/8", Q) == q(3, 8));
  CHECK(parse_element("-6/-4", Q) == q(3, 2));
  CHECK(q(-6, -4).render() == "3/2");
  CHECK(q(6, -4).render() == "-3/2");
  CHECK(q(0, 7) == q(0));
  CHECK(q(12, 8).num() == 3);
  CHECK(q(12, 8).den() == 2);
  // idempotence: rebuilding from the canonical parts changes nothing
  FieldElem x = q(30, -42);
  CHECK(FieldElem::rational(x.num(), x.den()) == x);
}

TEST_CASE("polynomial fraction canonical form") {
  FieldElem x = parse_element("(t^2+1)/(2*t)", F5);
  // denominator monic: 1/2 = 3 mod 5 moves to the numerator
  CHECK(x.pden().is_monic());
  CHECK(x.pden() == FpPoly::variable(5));
  CHECK(x.pnum() == FpPoly(5, {3, 0, 3}));
  FieldElem t = parse_element("t", F5);
  CHECK(x * (t + t) == parse_element("t^2+1", F5));
  CHECK(FieldElem::poly_fraction(F5, x.pnum(), x.pden()) == x);
}

TEST_CASE("arithmetic") {
  CHECK(q(1, 2) + q(1, 3) == q(5, 6));
  CHECK(q(1) / (q(1) + q(1, 2)) == q(2, 3));
  FieldElem t = parse_element("t", F5);
  CHECK(t * t.inverse() == FieldElem::from_int(F5, 1));
  CHECK(q(2).pow(-3) == q(1, 8));
  CHECK(q(0).pow(0) == q(1));
  CHECK_THROWS_AS(q(1) / q(0), DomainError);
}

TEST_CASE("field axioms on a sample universe") {
  auto elems = sample_universe(Q, 1, {q(2), q(3)});
  for (const auto& a : elems)
    for (const auto& b : elems) {
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a - b == -(b - a));
      if (!b.is_zero()) CHECK(a / b * b == a);
      for (const auto& c : elems) CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("sample universe contents") {
  auto u1 = sample_universe(Q, 1, {q(2)});
  std::vector<FieldElem> expect = {q(0), q(1),     q(-1), q(2),
                                   q(-2), q(1, 2), q(-1, 2)};
  sort_canonical(expect);
  CHECK(u1 == expect);

  auto u2 = sample_universe(Q, 1, {q(2), q(3)});
  CHECK(std::find(u2.begin(), u2.end(), q(2, 3)) != u2.end());
  CHECK(std::find(u2.begin(), u2.end(), q(3, 2)) != u2.end());

  // frozen regression cardinality for bound 2, support {2,3}
  CHECK(sample_universe(Q, 2, {q(2), q(3)}).size() == 51);
}

TEST_CASE("canonical order is total and drives first-witness rules") {
  auto u = sample_universe(Q, 2, {q(2), q(3)});
  CHECK(u.front() == q(0));
  for (size_t i = 0; i + 1 < u.size(); ++i) {
    CHECK(canonical_less(u[i], u[i + 1]));
    CHECK(!canonical_less(u[i + 1], u[i]));
  }
  CHECK(canonical_less(q(1), q(2)));
  CHECK(canonical_less(q(2), q(1, 2)));  // larger numerator first at a height
}

TEST_CASE("parse and render round-trip") {
  auto u = sample_universe(Q, 2, {q(2), q(3), q(5)});
  for (const auto& x : u) CHECK(parse_element(x.render(), Q) == x);
  FieldElem t = parse_element("t", F5);
  auto uf = sample_universe(F5, 2, {t, t + FieldElem::from_int(F5, 1)});
  for (const auto& x : uf) CHECK(parse_element(x.render(), F5) == x);
  CHECK_THROWS_AS(parse_element("", Q), ParseError);
  CHECK_THROWS_AS(parse_element("1/0", Q), ParseError);
  CHECK_THROWS_AS(parse_element("t", Q), ParseError);
}

TEST_CASE("height") {
  CHECK(q(3, 8).height() == 8);
  CHECK(q(-12).height() == 12);
  CHECK(parse_element("(t^2+1)/t", F5).height() == 2);
  auto all = all_rationals_up_to_height(3);
  for (const auto& x : all) CHECK(x.height() <= 3);
  CHECK(all.size() == 15);  // 0 and +-{1, 2, 3, 1/2, 3/2, 1/3, 2/3}
}

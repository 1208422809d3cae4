#include "mv/valuation.hpp"

#include <algorithm>
#include <sstream>

#include "mv/errors.hpp"

namespace mv {

std::string ValueExt::to_string() const {
  if (infinite) return "inf";
  return std::to_string(v);
}

ValueExt min_value(const ValueExt& a, const ValueExt& b) {
  return a < b ? a : b;
}

namespace {

bool is_prime(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// multiplicity of prime p in nonzero n
int64_t int_multiplicity(Int n, const Int& p) {
  int64_t m = 0;
  n = abs(n);
  while (n % p == 0) {
    n /= p;
    ++m;
  }
  return m;
}

}  // namespace

Valuation Valuation::padic(const Int& p) {
  if (!is_prime(p)) throw DomainError("padic valuation needs a prime, got " +
                                      p.convert_to<std::string>());
  Valuation v;
  v.kind_ = Kind::PAdic;
  v.field_ = FieldDesc::rationals();
  v.prime_ = p;
  return v;
}

Valuation Valuation::polyadic(const FpPoly& f, const std::string& var) {
  if (!f.is_monic() || f.degree() < 1)
    throw DomainError("polyadic valuation needs a monic nonconstant polynomial");
  if (!f.is_irreducible())
    throw DomainError("polyadic polynomial is reducible: " + f.to_string(var));
  Valuation v;
  v.kind_ = Kind::PolyAdic;
  v.field_ = FieldDesc::rational_functions(f.p(), var);
  v.poly_ = f;
  return v;
}

Valuation Valuation::degree(const FieldDesc& field) {
  if (field.kind != FieldDesc::Kind::RationalFunctions)
    throw DomainError("degree valuation only exists on rational function fields");
  Valuation v;
  v.kind_ = Kind::Degree;
  v.field_ = field;
  return v;
}

bool Valuation::operator==(const Valuation& o) const {
  if (kind_ != o.kind_ || field_ != o.field_) return false;
  switch (kind_) {
    case Kind::PAdic:
      return prime_ == o.prime_;
    case Kind::PolyAdic:
      return poly_ == o.poly_;
    case Kind::Degree:
      return true;
  }
  return false;
}

ValueExt Valuation::val(const FieldElem& x) const {
  if (x.field() != field_)
    throw DomainError("valuation " + render() + " applied to element of " +
                      x.field().to_string());
  if (x.is_zero()) return ValueExt::inf();
  switch (kind_) {
    case Kind::PAdic:
      return ValueExt::of(int_multiplicity(x.num(), prime_) -
                          int_multiplicity(x.den(), prime_));
    case Kind::PolyAdic:
      return ValueExt::of(x.pnum().multiplicity(poly_) -
                          x.pden().multiplicity(poly_));
    case Kind::Degree:
      return ValueExt::of(x.pden().degree() - x.pnum().degree());
  }
  throw InternalCheckError("unreachable valuation kind");
}

FieldElem Valuation::uniformizer() const {
  switch (kind_) {
    case Kind::PAdic:
      return FieldElem::from_int(field_, prime_);
    case Kind::PolyAdic:
      return FieldElem::poly_fraction(field_, poly_,
                                      FpPoly::constant(poly_.p(), 1));
    case Kind::Degree:
      return FieldElem::poly_fraction(field_,
                                      FpPoly::constant(field_.characteristic, 1),
                                      FpPoly::variable(field_.characteristic));
  }
  throw InternalCheckError("unreachable valuation kind");
}

std::string Valuation::render() const {
  switch (kind_) {
    case Kind::PAdic: {
      std::ostringstream os;
      os << "padic " << prime_;
      return os.str();
    }
    case Kind::PolyAdic:
      return "polyadic " + poly_.to_string(field_.variable);
    case Kind::Degree:
      return "degree";
  }
  return "?";
}

std::vector<ValueExt> value_vector(const std::vector<Valuation>& vs,
                                   const FieldElem& x) {
  std::vector<ValueExt> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(v.val(x));
  return out;
}

FieldElem incomparability_witness(const Valuation& v, const Valuation& w) {
  if (v == w) throw DomainError("incomparability witness of equal valuations");
  if (v.field() != w.field()) throw DomainError("valuations over different fields");
  const FieldDesc& f = v.field();
  if (v.kind() == Valuation::Kind::PAdic)
    return FieldElem::fraction(f, v.prime(), w.prime());
  if (v.kind() == Valuation::Kind::Degree)
    return w.uniformizer().inverse().pow(
        std::max<int64_t>(w.poly().degree(), 1));
  // v is PolyAdic
  if (w.kind() == Valuation::Kind::Degree) return v.uniformizer();
  // f-adic against g-adic: f/g has v_f = 1, v_g = -1, but beware deg f needs
  // no adjustment since both are finite places
  return v.uniformizer() / w.uniformizer();
}

namespace {

bool verify_targets(const FieldElem& z, const std::vector<ApproxTarget>& ts) {
  for (const auto& t : ts)
    if (!t.v.val(z - t.y).geq(t.k)) return false;
  return true;
}

}  // namespace

FieldElem approximate(const std::vector<ApproxTarget>& targets) {
  if (targets.empty()) throw DomainError("approximate needs at least one target");
  const FieldDesc& f = targets[0].v.field();
  for (size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].v.field() != f || targets[i].y.field() != f)
      throw DomainError("approximate targets over different fields");
    for (size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i].v == targets[j].v)
        throw DomainError("duplicate valuation in approximate targets");
  }
  if (targets.size() == 1) {
    // a single congruence is satisfied by the target value itself
    return targets[0].y;
  }
  const size_t n = targets.size();
  int64_t N = 1;
  for (const auto& t : targets) N = std::max(N, t.k + 1);
  for (int attempt = 0; attempt < 40; ++attempt, N *= 2) {
    // e_i ~ 1 at v_i and ~ 0 at every v_j, j != i, built from idempotent
    // approximations u = 1/(1 + x^N) with v_i(x) > 0 > v_j(x)
    FieldElem z(f);
    for (size_t i = 0; i < n; ++i) {
      if (targets[i].y.is_zero()) continue;
      FieldElem e = FieldElem::from_int(f, 1);
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        FieldElem x = incomparability_witness(targets[i].v, targets[j].v);
        FieldElem xn = x.pow(N);
        FieldElem one = FieldElem::from_int(f, 1);
        e = e * (one / (one + xn));
      }
      z = z + targets[i].y * e;
    }
    if (verify_targets(z, targets)) return z;
  }
  throw InternalCheckError("approximate failed to converge");
}

FieldElem element_with_value_vector(const std::vector<Valuation>& vs,
                                    const std::vector<int64_t>& targets) {
  if (vs.size() != targets.size() || vs.empty())
    throw DomainError("element_with_value_vector arity mismatch");
  const FieldDesc& f = vs[0].field();
  // a plain product of uniformizer powers usually already works and gives
  // readable witnesses like 3/2 or 15
  FieldElem prod = FieldElem::from_int(f, 1);
  for (size_t i = 0; i < vs.size(); ++i)
    prod = prod * vs[i].uniformizer().pow(targets[i]);
  bool ok = true;
  for (size_t i = 0; i < vs.size(); ++i)
    if (vs[i].val(prod) != ValueExt::of(targets[i])) {
      ok = false;
      break;
    }
  if (ok) return prod;
  std::vector<ApproxTarget> ts;
  for (size_t i = 0; i < vs.size(); ++i)
    ts.push_back({vs[i], vs[i].uniformizer().pow(targets[i]), targets[i] + 1});
  FieldElem z = approximate(ts);
  for (size_t i = 0; i < vs.size(); ++i)
    if (vs[i].val(z) != ValueExt::of(targets[i]))
      throw InternalCheckError("element_with_value_vector verification failed");
  return z;
}

}  // namespace mv

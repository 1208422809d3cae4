#include "mv/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "mv/errors.hpp"

namespace mv {

FieldDesc FieldDesc::rational_functions(int64_t p, std::string var) {
  if (p < 2) throw DomainError("field characteristic must be a prime >= 2");
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw DomainError("field characteristic must be prime");
  FieldDesc f;
  f.kind = Kind::RationalFunctions;
  f.characteristic = p;
  f.variable = std::move(var);
  return f;
}

std::string FieldDesc::to_string() const {
  if (kind == Kind::Rationals) return "Q";
  std::ostringstream os;
  os << "F" << characteristic << "(" << variable << ")";
  return os.str();
}

FieldElem::FieldElem(const FieldDesc& f) : field_(f) {
  if (f.kind == FieldDesc::Kind::RationalFunctions) {
    pnum_ = FpPoly::zero(f.characteristic);
    pden_ = FpPoly::constant(f.characteristic, 1);
  }
}

FieldElem FieldElem::from_int(const FieldDesc& f, const Int& n) {
  FieldElem e(f);
  if (f.kind == FieldDesc::Kind::Rationals) {
    e.num_ = n;
    e.den_ = 1;
  } else {
    Int r = n % f.characteristic;
    if (r < 0) r += f.characteristic;
    e.pnum_ = FpPoly::constant(f.characteristic, r.convert_to<int64_t>());
  }
  return e;
}

FieldElem FieldElem::rational(const Int& num, const Int& den) {
  return fraction(FieldDesc::rationals(), num, den);
}

FieldElem FieldElem::fraction(const FieldDesc& f, const Int& num,
                              const Int& den) {
  if (f.kind != FieldDesc::Kind::Rationals)
    return from_int(f, num) / from_int(f, den);
  if (den == 0) throw DomainError("division by zero");
  FieldElem e(f);
  e.num_ = num;
  e.den_ = den;
  e.normalize();
  return e;
}

FieldElem FieldElem::poly_fraction(const FieldDesc& f, const FpPoly& num,
                                   const FpPoly& den) {
  if (f.kind != FieldDesc::Kind::RationalFunctions)
    throw DomainError("polynomial fraction over Q");
  if (den.is_zero()) throw DomainError("division by zero");
  FieldElem e(f);
  e.pnum_ = num;
  e.pden_ = den;
  e.normalize();
  return e;
}

void FieldElem::normalize() {
  if (field_.kind == FieldDesc::Kind::Rationals) {
    if (den_ == 0) throw DomainError("division by zero");
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    Int g = boost::multiprecision::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  } else {
    if (pden_.is_zero()) throw DomainError("division by zero");
    if (pnum_.is_zero()) {
      pden_ = FpPoly::constant(field_.characteristic, 1);
      return;
    }
    FpPoly g = FpPoly::gcd(pnum_, pden_);
    pnum_ = pnum_ / g;
    pden_ = pden_ / g;
    // make denominator monic
    int64_t lead = pden_.leading();
    if (lead != 1) {
      FpPoly unit = FpPoly::constant(field_.characteristic, lead);
      pnum_ = pnum_ / unit;
      pden_ = pden_ / unit;
    }
  }
}

void FieldElem::check_same_field(const FieldElem& o) const {
  if (field_ != o.field_)
    throw DomainError("mixed-field arithmetic: " + field_.to_string() +
                      " vs " + o.field_.to_string());
}

bool FieldElem::is_zero() const {
  return field_.kind == FieldDesc::Kind::Rationals ? num_ == 0
                                                   : pnum_.is_zero();
}

bool FieldElem::is_one() const {
  if (field_.kind == FieldDesc::Kind::Rationals)
    return num_ == 1 && den_ == 1;
  return pnum_.is_one() && pden_.is_one();
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same_field(o);
  FieldElem r(field_);
  if (field_.kind == FieldDesc::Kind::Rationals) {
    r.num_ = num_ * o.den_ + o.num_ * den_;
    r.den_ = den_ * o.den_;
  } else {
    r.pnum_ = pnum_ * o.pden_ + o.pnum_ * pden_;
    r.pden_ = pden_ * o.pden_;
  }
  r.normalize();
  return r;
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same_field(o);
  FieldElem r(field_);
  if (field_.kind == FieldDesc::Kind::Rationals) {
    r.num_ = num_ * o.num_;
    r.den_ = den_ * o.den_;
  } else {
    r.pnum_ = pnum_ * o.pnum_;
    r.pden_ = pden_ * o.pden_;
  }
  r.normalize();
  return r;
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  return *this * o.inverse();
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  if (field_.kind == FieldDesc::Kind::Rationals)
    r.num_ = -r.num_;
  else
    r.pnum_ = -r.pnum_;
  return r;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  FieldElem r(field_);
  if (field_.kind == FieldDesc::Kind::Rationals) {
    r.num_ = den_;
    r.den_ = num_;
  } else {
    r.pnum_ = pden_;
    r.pden_ = pnum_;
  }
  r.normalize();
  return r;
}

FieldElem FieldElem::pow(int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem acc = from_int(field_, 1);
  FieldElem base = *this;
  uint64_t k = static_cast<uint64_t>(e);
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (field_ != o.field_) return false;
  if (field_.kind == FieldDesc::Kind::Rationals)
    return num_ == o.num_ && den_ == o.den_;
  return pnum_ == o.pnum_ && pden_ == o.pden_;
}

Int FieldElem::height() const {
  if (field_.kind == FieldDesc::Kind::Rationals) {
    Int a = abs(num_);
    return a > den_ ? a : den_;
  }
  int64_t d = std::max(pnum_.degree(), pden_.degree());
  return Int(d < 0 ? 0 : d);
}

std::string FieldElem::render() const {
  std::ostringstream os;
  if (field_.kind == FieldDesc::Kind::Rationals) {
    os << num_;
    if (den_ != 1) os << "/" << den_;
  } else {
    bool wrapNum = pnum_.degree() > 0 && !pden_.is_one();
    if (wrapNum)
      os << "(" << pnum_.to_string(field_.variable) << ")";
    else
      os << pnum_.to_string(field_.variable);
    if (!pden_.is_one()) {
      os << "/";
      if (pden_.degree() > 0)
        os << "(" << pden_.to_string(field_.variable) << ")";
      else
        os << pden_.to_string(field_.variable);
    }
  }
  return os.str();
}

bool canonical_less(const FieldElem& a, const FieldElem& b) {
  bool az = a.is_zero(), bz = b.is_zero();
  if (az || bz) return az && !bz;
  const FieldDesc& f = a.field();
  if (f.kind == FieldDesc::Kind::Rationals) {
    Int ha = a.height(), hb = b.height();
    if (ha != hb) return ha < hb;
    Int na = abs(a.num()), nb = abs(b.num());
    if (na != nb) return na > nb;  // larger numerator first: 3/2 before 2/3
    if (a.den() != b.den()) return a.den() < b.den();
    if ((a.num() > 0) != (b.num() > 0)) return a.num() > 0;
    return false;
  }
  Int ha = a.height(), hb = b.height();
  if (ha != hb) return ha < hb;
  int64_t nda = a.pnum().degree(), ndb = b.pnum().degree();
  if (nda != ndb) return nda > ndb;
  if (a.pden().degree() != b.pden().degree())
    return a.pden().degree() < b.pden().degree();
  int c = FpPoly::compare(a.pnum(), b.pnum());
  if (c != 0) return c < 0;
  return FpPoly::compare(a.pden(), b.pden()) < 0;
}

void sort_canonical(std::vector<FieldElem>& xs) {
  std::sort(xs.begin(), xs.end(), CanonicalLess{});
}

namespace {

// recursive-descent parser over the shared element grammar
struct ElemParser {
  const std::string& s;
  const FieldDesc& field;
  size_t pos = 0;

  explicit ElemParser(const std::string& text, const FieldDesc& f)
      : s(text), field(f) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, pos);
  }

  FieldElem parse() {
    FieldElem v = parse_expr();
    skip_ws();
    if (pos != s.size()) fail("unexpected trailing input");
    return v;
  }

  // expr := term (("+" | "-") term)*     (needed inside polynomial text)
  FieldElem parse_expr() {
    FieldElem v = parse_term();
    for (;;) {
      skip_ws();
      if (eat('+')) {
        v = v + parse_term();
      } else if (pos < s.size() && s[pos] == '-') {
        ++pos;
        v = v - parse_term();
      } else {
        return v;
      }
    }
  }

  // term := factor (("*" factor) | ("/" factor) | juxtaposed factor)*
  FieldElem parse_term() {
    FieldElem v = parse_factor();
    for (;;) {
      skip_ws();
      if (eat('*')) {
        v = v * parse_factor();
      } else if (eat('/')) {
        FieldElem d = parse_factor();
        if (d.is_zero()) fail("division by zero");
        v = v / d;
      } else if (pos < s.size() &&
                 (std::isalpha(static_cast<unsigned char>(s[pos])) ||
                  s[pos] == '(')) {
        v = v * parse_factor();  // "3t", "2(t+1)"
      } else {
        return v;
      }
    }
  }

  // factor := ("-")? base ("^" nat)?
  FieldElem parse_factor() {
    skip_ws();
    if (eat('-')) return -parse_factor();
    FieldElem v = parse_base();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      if (pos == start) fail("expected exponent");
      int64_t e = std::stoll(s.substr(start, pos - start));
      v = v.pow(e);
    }
    return v;
  }

  FieldElem parse_base() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of element");
    if (eat('(')) {
      FieldElem v = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      return FieldElem::from_int(field, Int(s.substr(start, pos - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) ||
              s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      if (field.kind != FieldDesc::Kind::RationalFunctions)
        fail("unknown symbol '" + name + "' in rational element");
      if (name != field.variable)
        fail("unknown symbol '" + name + "', field variable is '" +
             field.variable + "'");
      return FieldElem::poly_fraction(
          field, FpPoly::variable(field.characteristic),
          FpPoly::constant(field.characteristic, 1));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

FieldElem parse_element(const std::string& text, const FieldDesc& field) {
  return ElemParser(text, field).parse();
}

std::vector<FieldElem> sample_universe(
    const FieldDesc& field, int64_t heightBound,
    const std::vector<FieldElem>& generators) {
  if (heightBound < 0) throw DomainError("negative height bound");
  for (const auto& g : generators) {
    if (g.field() != field) throw DomainError("generator from wrong field");
    if (g.is_zero()) throw DomainError("zero generator");
  }
  std::vector<FieldElem> units;
  if (field.kind == FieldDesc::Kind::Rationals) {
    units.push_back(FieldElem::from_int(field, 1));
    units.push_back(FieldElem::from_int(field, -1));
  } else {
    for (int64_t c = 1; c < field.characteristic; ++c)
      units.push_back(FieldElem::from_int(field, c));
  }
  std::vector<FieldElem> out;
  out.push_back(FieldElem(field));  // zero
  std::vector<int64_t> e(generators.size(), -heightBound);
  for (;;) {
    FieldElem prod = FieldElem::from_int(field, 1);
    for (size_t i = 0; i < generators.size(); ++i)
      prod = prod * generators[i].pow(e[i]);
    for (const auto& u : units) out.push_back(u * prod);
    size_t i = 0;
    for (; i < e.size(); ++i) {
      if (e[i] < heightBound) {
        ++e[i];
        break;
      }
      e[i] = -heightBound;
    }
    if (i == e.size()) break;
    if (e.empty()) break;
  }
  sort_canonical(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<FieldElem> smooth_elements(
    const FieldDesc& field, const Int& h,
    const std::vector<FieldElem>& generators) {
  // numerator/denominator candidates: products of generators with height <= h
  std::vector<FieldElem> parts;
  parts.push_back(FieldElem::from_int(field, 1));
  for (size_t head = 0; head < parts.size(); ++head) {
    FieldElem base = parts[head];
    for (const auto& g : generators) {
      FieldElem next = base * g;
      if (next.height() > h) continue;
      if (std::find(parts.begin(), parts.end(), next) == parts.end())
        parts.push_back(next);
    }
  }
  std::vector<FieldElem> units;
  if (field.kind == FieldDesc::Kind::Rationals) {
    units.push_back(FieldElem::from_int(field, 1));
    units.push_back(FieldElem::from_int(field, -1));
  } else {
    for (int64_t c = 1; c < field.characteristic; ++c)
      units.push_back(FieldElem::from_int(field, c));
  }
  std::vector<FieldElem> out;
  out.push_back(FieldElem(field));
  for (const auto& a : parts)
    for (const auto& b : parts) {
      FieldElem q = a / b;
      if (q.height() > h) continue;
      for (const auto& u : units) out.push_back(u * q);
    }
  sort_canonical(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<FieldElem> all_rationals_up_to_height(int64_t h) {
  std::vector<FieldElem> out;
  out.push_back(FieldElem(FieldDesc::rationals()));
  for (int64_t a = 1; a <= h; ++a)
    for (int64_t b = 1; b <= h; ++b) {
      if (boost::multiprecision::gcd(Int(a), Int(b)) != 1) continue;
      out.push_back(FieldElem::rational(a, b));
      out.push_back(FieldElem::rational(-a, b));
    }
  sort_canonical(out);
  return out;
}

}  // namespace mv

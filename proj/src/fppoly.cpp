#include "mv/fppoly.hpp"

#include "mv/errors.hpp"

namespace mv {

namespace {
int64_t mod_norm(int64_t x, int64_t p) {
  int64_t r = x % p;
  return r < 0 ? r + p : r;
}
}  // namespace

FpPoly::FpPoly(int64_t p, std::vector<int64_t> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
  if (p_ < 2) throw DomainError("characteristic must be >= 2");
  for (auto& c : coeffs_) c = mod_norm(c, p_);
  trim();
}

void FpPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

int64_t FpPoly::inv_mod(int64_t a) const {
  // extended Euclid; a nonzero mod p_, p_ prime
  int64_t t = 0, newt = 1, r = p_, newr = mod_norm(a, p_);
  while (newr != 0) {
    int64_t q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (r != 1) throw DomainError("not invertible mod p");
  return mod_norm(t, p_);
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  std::vector<int64_t> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
  return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
  std::vector<int64_t> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
  return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::operator-() const {
  std::vector<int64_t> c(coeffs_);
  for (auto& x : c) x = -x;
  return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
  if (is_zero() || o.is_zero()) return zero(p_);
  std::vector<int64_t> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j)
      c[i + j] = (c[i + j] + coeffs_[i] * o.coeffs_[j]) % p_;
  return FpPoly(p_, std::move(c));
}

void FpPoly::divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  int64_t p = a.p_;
  std::vector<int64_t> rem = a.coeffs_;
  std::vector<int64_t> quo;
  int db = b.degree();
  if (static_cast<int>(rem.size()) - 1 >= db)
    quo.assign(rem.size() - db, 0);
  int64_t linv = b.inv_mod(b.leading());
  for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
    if (rem[i] == 0) continue;
    int64_t f = (rem[i] * linv) % p;
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j)
      rem[i - db + j] = mod_norm(rem[i - db + j] - f * b.coeff(j), p);
  }
  q = FpPoly(p, std::move(quo));
  r = FpPoly(p, std::move(rem));
}

FpPoly FpPoly::operator/(const FpPoly& o) const {
  FpPoly q, r;
  divmod(*this, o, q, r);
  return q;
}

FpPoly FpPoly::operator%(const FpPoly& o) const {
  FpPoly q, r;
  divmod(*this, o, q, r);
  return r;
}

FpPoly FpPoly::gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = b;
    b = r;
  }
  return a.is_zero() ? a : a.monic();
}

FpPoly FpPoly::scaled(int64_t c) const {
  std::vector<int64_t> v(coeffs_);
  for (auto& x : v) x = x * mod_norm(c, p_);
  return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(inv_mod(leading()));
}

int FpPoly::multiplicity(const FpPoly& f) const {
  if (is_zero()) throw DomainError("multiplicity of zero polynomial");
  if (f.degree() < 1) throw DomainError("multiplicity by constant");
  int m = 0;
  FpPoly cur = *this, q, r;
  for (;;) {
    divmod(cur, f, q, r);
    if (!r.is_zero()) return m;
    ++m;
    cur = q;
  }
}

bool FpPoly::is_irreducible() const {
  int d = degree();
  if (d < 1) return false;
  if (d == 1) return true;
  // enumerate monic divisor candidates of degree 1..d/2
  for (int dg = 1; dg <= d / 2; ++dg) {
    std::vector<int64_t> c(dg + 1, 0);
    c[dg] = 1;
    // count through the p^dg lower coefficient tuples
    for (;;) {
      if ((*this % FpPoly(p_, c)).is_zero()) return false;
      int i = 0;
      while (i < dg && ++c[i] == p_) c[i++] = 0;
      if (i == dg) break;
    }
  }
  return true;
}

int FpPoly::compare(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i) ? -1 : 1;
  return 0;
}

std::string FpPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    int64_t c = coeff(i);
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace mv

#include "mv/multival.hpp"

#include <algorithm>
#include <sstream>

#include "mv/errors.hpp"

namespace mv {

MultiValRing::MultiValRing(std::vector<Valuation> vs) : vals_(std::move(vs)) {
  if (vals_.empty()) throw DomainError("ring needs at least one valuation");
  field_ = vals_[0].field();
  for (std::size_t i = 0; i < vals_.size(); ++i) {
    if (vals_[i].field() != field_)
      throw DomainError("ring valuations live on different fields");
    for (std::size_t j = i + 1; j < vals_.size(); ++j)
      if (vals_[i] == vals_[j])
        throw DomainError("duplicate valuation: " + vals_[i].render());
  }
}

bool MultiValRing::contains(const FieldElem& x) const {
  for (const auto& v : vals_)
    if (!v.in_ring(x)) return false;
  return true;
}

std::vector<ValueExt> MultiValRing::valvec(const FieldElem& x) const {
  return value_vector(vals_, x);
}

bool MultiValRing::superring_of(const MultiValRing& sub) const {
  for (const auto& v : vals_)
    if (!sub.index_of(v)) return false;
  return true;
}

std::optional<std::size_t> MultiValRing::index_of(const Valuation& v) const {
  for (std::size_t i = 0; i < vals_.size(); ++i)
    if (vals_[i] == v) return i;
  return std::nullopt;
}

std::string MultiValRing::render() const {
  std::string s = "intersect(";
  for (std::size_t i = 0; i < vals_.size(); ++i) {
    if (i) s += ", ";
    s += vals_[i].render();
  }
  return s + ")";
}

ModuleVec ModuleVec::bottom(std::size_t n) {
  ModuleVec m;
  m.n_ = n;
  m.bottom_ = true;
  return m;
}

ModuleVec ModuleVec::top(std::size_t n) {
  ModuleVec m;
  m.n_ = n;
  m.gamma_.assign(n, Gamma{true, 0});
  return m;
}

ModuleVec ModuleVec::of(const std::vector<int64_t>& g) {
  ModuleVec m;
  m.n_ = g.size();
  for (int64_t x : g) m.gamma_.push_back(Gamma{false, x});
  return m;
}

ModuleVec ModuleVec::make(std::size_t n, const std::vector<Gamma>& g) {
  if (g.size() != n) throw DomainError("module vector arity mismatch");
  ModuleVec m;
  m.n_ = n;
  m.gamma_ = g;
  return m;
}

bool ModuleVec::is_top() const {
  if (bottom_) return false;
  return std::all_of(gamma_.begin(), gamma_.end(),
                     [](const Gamma& g) { return g.negInf; });
}

bool ModuleVec::all_finite() const {
  if (bottom_) return false;
  return std::none_of(gamma_.begin(), gamma_.end(),
                      [](const Gamma& g) { return g.negInf; });
}

bool ModuleVec::contains(const MultiValRing& R, const FieldElem& x) const {
  if (R.n() != n_) throw DomainError("module vector arity mismatch");
  if (bottom_) return x.is_zero();
  for (std::size_t i = 0; i < n_; ++i) {
    if (gamma_[i].negInf) continue;
    if (!R.at(i).val(x).geq(gamma_[i].g)) return false;
  }
  return true;
}

ModuleVec ModuleVec::meet(const ModuleVec& o) const {
  if (o.n_ != n_) throw DomainError("module vector arity mismatch");
  if (bottom_ || o.bottom_) return bottom(n_);
  ModuleVec m;
  m.n_ = n_;
  for (std::size_t i = 0; i < n_; ++i) {
    const Gamma &a = gamma_[i], &b = o.gamma_[i];
    if (a.negInf)
      m.gamma_.push_back(b);
    else if (b.negInf)
      m.gamma_.push_back(a);
    else
      m.gamma_.push_back(Gamma{false, std::max(a.g, b.g)});
  }
  return m;
}

ModuleVec ModuleVec::join(const ModuleVec& o) const {
  if (o.n_ != n_) throw DomainError("module vector arity mismatch");
  if (bottom_) return o;
  if (o.bottom_) return *this;
  ModuleVec m;
  m.n_ = n_;
  for (std::size_t i = 0; i < n_; ++i) {
    const Gamma &a = gamma_[i], &b = o.gamma_[i];
    if (a.negInf || b.negInf)
      m.gamma_.push_back(Gamma{true, 0});
    else
      m.gamma_.push_back(Gamma{false, std::min(a.g, b.g)});
  }
  return m;
}

bool ModuleVec::leq(const ModuleVec& o) const {
  if (o.n_ != n_) throw DomainError("module vector arity mismatch");
  if (bottom_) return true;
  if (o.bottom_) return false;
  for (std::size_t i = 0; i < n_; ++i) {
    const Gamma &a = gamma_[i], &b = o.gamma_[i];
    if (b.negInf) continue;
    if (a.negInf || a.g < b.g) return false;
  }
  return true;
}

bool ModuleVec::operator==(const ModuleVec& o) const {
  if (n_ != o.n_ || bottom_ != o.bottom_) return false;
  if (bottom_) return true;
  for (std::size_t i = 0; i < n_; ++i) {
    if (gamma_[i].negInf != o.gamma_[i].negInf) return false;
    if (!gamma_[i].negInf && gamma_[i].g != o.gamma_[i].g) return false;
  }
  return true;
}

ModuleVec ModuleVec::scaled(const MultiValRing& R, const FieldElem& c) const {
  if (c.is_zero()) throw DomainError("scaling a module by zero");
  if (R.n() != n_) throw DomainError("module vector arity mismatch");
  if (bottom_) return *this;
  ModuleVec m;
  m.n_ = n_;
  for (std::size_t i = 0; i < n_; ++i) {
    if (gamma_[i].negInf) {
      m.gamma_.push_back(gamma_[i]);
    } else {
      m.gamma_.push_back(Gamma{false, gamma_[i].g + R.at(i).val(c).v});
    }
  }
  return m;
}

std::string ModuleVec::render() const {
  if (bottom_) return "Bottom";
  if (is_top()) return "K";
  std::string s = "M(";
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) s += ",";
    s += gamma_[i].negInf ? "-inf" : std::to_string(gamma_[i].g);
  }
  return s + ")";
}

std::string SumCertificate::describe(const MultiValRing& R) const {
  std::ostringstream os;
  if (positive) {
    os << "coefficients";
    for (const auto& c : coeffs) os << " " << c.render();
  } else {
    os << "refuted at " << R.at(refuteIndex).render();
  }
  return os.str();
}

SumCertificate member_sum(const MultiValRing& R, const FieldElem& x,
                          const std::vector<FieldElem>& gens) {
  if (gens.empty()) throw DomainError("member_sum needs generators");
  bool allZero = true;
  for (const auto& g : gens)
    if (!g.is_zero()) allZero = false;
  if (allZero) throw DomainError("member_sum generators all zero");
  const std::size_t n = R.n(), m = gens.size();
  auto xv = R.valvec(x);
  std::vector<std::vector<ValueExt>> gv;
  for (const auto& g : gens) gv.push_back(R.valvec(g));
  // criterion: membership iff val_k(x) >= min_j val_k(x_j) for every k
  std::vector<std::size_t> argmin(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < m; ++j)
      if (gv[j][k] < gv[best][k]) best = j;
    argmin[k] = best;
    if (xv[k] < gv[best][k])
      return SumCertificate{false, {}, k};
  }
  SumCertificate cert;
  cert.positive = true;
  cert.coeffs.assign(m, FieldElem(R.field()));
  if (x.is_zero()) return cert;  // all-zero coefficients
  // partition of unity across the distinct argmin indices
  std::vector<std::size_t> J;
  for (std::size_t k = 0; k < n; ++k)
    if (std::find(J.begin(), J.end(), argmin[k]) == J.end())
      J.push_back(argmin[k]);
  const FieldElem one = FieldElem::from_int(R.field(), 1);
  for (int64_t prec = 2; prec < (int64_t(1) << 40); prec *= 2) {
    std::vector<FieldElem> e(J.size(), FieldElem(R.field()));
    FieldElem rest = one;
    for (std::size_t t = 0; t + 1 < J.size(); ++t) {
      std::vector<ApproxTarget> ts;
      for (std::size_t k = 0; k < n; ++k)
        ts.push_back({R.at(k),
                      argmin[k] == J[t] ? one : FieldElem(R.field()), prec});
      e[t] = approximate(ts);
      rest = rest - e[t];
    }
    e[J.size() - 1] = rest;  // exact partition of unity
    std::vector<FieldElem> coeffs(m, FieldElem(R.field()));
    bool ok = true;
    for (std::size_t t = 0; t < J.size(); ++t) {
      coeffs[J[t]] = e[t] * x / gens[J[t]];
      if (!R.contains(coeffs[J[t]])) ok = false;
    }
    if (!ok) continue;
    FieldElem sum(R.field());
    for (std::size_t j = 0; j < m; ++j) sum = sum + coeffs[j] * gens[j];
    if (sum != x)
      throw InternalCheckError("partition of unity lost exactness");
    cert.coeffs = std::move(coeffs);
    return cert;
  }
  throw InternalCheckError("member_sum certificate construction diverged");
}

std::pair<std::size_t, SumCertificate> wset_select(
    const MultiValRing& R, const std::vector<FieldElem>& xs) {
  const std::size_t n = R.n();
  if (xs.size() != n + 1)
    throw DomainError("wset_select needs exactly n+1 elements");
  bool allZero = true;
  for (const auto& x : xs)
    if (!x.is_zero()) allZero = false;
  if (allZero) throw DomainError("wset_select elements all zero");
  std::vector<std::vector<ValueExt>> vv;
  for (const auto& x : xs) vv.push_back(R.valvec(x));
  std::vector<char> taken(xs.size(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < xs.size(); ++j)
      if (vv[j][k] < vv[best][k]) best = j;
    taken[best] = 1;
  }
  std::size_t pick = 0;
  while (pick < xs.size() && taken[pick]) ++pick;
  if (pick == xs.size())
    throw InternalCheckError("pigeonhole selection failed");
  std::vector<FieldElem> gens;
  for (std::size_t j = 0; j < xs.size(); ++j)
    if (j != pick) gens.push_back(xs[j]);
  SumCertificate cert = member_sum(R, xs[pick], gens);
  if (!cert.positive)
    throw InternalCheckError("selected element failed membership");
  return {pick, cert};
}

WeightResult weight(const MultiValRing& R) {
  WeightResult w;
  w.n = R.n();
  for (std::size_t i = 0; i < R.n(); ++i) {
    std::vector<int64_t> t(R.n(), 1);
    t[i] = 0;
    w.lowerWitness.push_back(element_with_value_vector(R.valuations(), t));
  }
  // each witness must be refuted against the others
  for (std::size_t i = 0; i < w.lowerWitness.size(); ++i) {
    if (R.n() == 1) break;  // single element, nothing to refute against
    std::vector<FieldElem> rest;
    for (std::size_t j = 0; j < w.lowerWitness.size(); ++j)
      if (j != i) rest.push_back(w.lowerWitness[j]);
    if (member_sum(R, w.lowerWitness[i], rest).positive)
      throw InternalCheckError("weight lower witness not independent");
  }
  return w;
}

bool MaxIdeal::contains(const MultiValRing& R, const FieldElem& x) const {
  if (!R.contains(x)) return false;
  ValueExt v = R.at(index).val(x);
  return v.infinite || v.v > 0;
}

std::vector<MaxIdeal> maximal_ideals(const MultiValRing& R) {
  std::vector<MaxIdeal> out;
  for (std::size_t i = 0; i < R.n(); ++i) out.push_back({i, R.at(i)});
  return out;
}

FieldElem jacobson_witness(const MultiValRing& R) {
  FieldElem x =
      element_with_value_vector(R.valuations(), std::vector<int64_t>(R.n(), 1));
  for (const auto& v : R.valuations())
    if (!v.val(x).geq(1)) throw InternalCheckError("jacobson witness rejected");
  return x;
}

std::vector<Selector> crt_selectors(const MultiValRing& R, std::size_t pIndex) {
  if (pIndex >= R.n()) throw DomainError("selector pivot index out of range");
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < R.n(); ++i)
    if (i != pIndex) others.push_back(i);
  std::vector<Selector> out;
  for (std::uint32_t mask = 0; mask < (1u << others.size()); ++mask) {
    Selector sel;
    std::vector<int64_t> t(R.n(), 0);
    t[pIndex] = 1;
    for (std::size_t b = 0; b < others.size(); ++b)
      if (mask & (1u << b)) {
        sel.subset.push_back(others[b]);
        t[others[b]] = 1;
      }
    sel.a = element_with_value_vector(R.valuations(), t);
    out.push_back(std::move(sel));
  }
  return out;
}

bool localization_member(const MultiValRing& R, std::size_t pIndex,
                         const FieldElem& x) {
  if (!R.contains(x)) throw DomainError("localization_member needs x in R");
  bool found = false;
  for (const auto& sel : crt_selectors(R, pIndex)) {
    FieldElem denom = x + sel.a;
    if (denom.is_zero()) continue;
    if (R.contains(denom.inverse())) {
      found = true;
      break;
    }
  }
  bool direct = R.at(pIndex).val(x) == ValueExt::of(0);
  if (found != direct)
    throw InternalCheckError(
        "selector criterion disagrees with direct valuation test");
  return found;
}

NotIntegralReport not_integral_witness(const MultiValRing& R,
                                       const FieldElem& x, int degreeBound) {
  if (x.is_zero()) throw DomainError("not_integral_witness needs x != 0");
  NotIntegralReport rep;
  rep.degreeBound = degreeBound;
  bool inIdeal = false;
  for (std::size_t i = 0; i < R.n(); ++i) {
    ValueExt v = R.at(i).val(x);
    if (!v.infinite && v.v > 0) {
      rep.valIndex = i;
      inIdeal = true;
      break;
    }
  }
  if (!inIdeal)
    throw DomainError("element lies in no maximal ideal");
  FieldElem y = x.inverse();
  rep.inverseValue = R.at(rep.valIndex).val(y).v;  // strictly negative
  // monic relations y^d + c_{d-1} y^{d-1} + ... + c_0 with small coefficients
  // from R can never vanish: the leading term has strictly least value
  std::vector<FieldElem> coeffPool;
  coeffPool.push_back(FieldElem(R.field()));
  coeffPool.push_back(FieldElem::from_int(R.field(), 1));
  coeffPool.push_back(FieldElem::from_int(R.field(), -1));
  coeffPool.push_back(jacobson_witness(R));
  rep.allNonzero = true;
  for (int d = 1; d <= degreeBound; ++d) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    for (;;) {
      FieldElem acc = y.pow(d);
      for (int j = 0; j < d; ++j) acc = acc + coeffPool[idx[j]] * y.pow(j);
      ++rep.relationsTested;
      if (acc.is_zero()) rep.allNonzero = false;
      std::size_t t = 0;
      for (; t < idx.size(); ++t) {
        if (idx[t] + 1 < coeffPool.size()) {
          ++idx[t];
          break;
        }
        idx[t] = 0;
      }
      if (t == idx.size()) break;
    }
  }
  if (!rep.allNonzero)
    throw InternalCheckError("found a monic integral relation for 1/x");
  return rep;
}

DivisionContinuityReport division_continuity(const MultiValRing& R,
                                             const ModuleVec& I) {
  if (I.is_bottom()) throw DomainError("division_continuity needs a nonzero ideal");
  if (!I.all_finite()) throw DomainError("ideal vector must be finite");
  for (std::size_t i = 0; i < I.n(); ++i)
    if (I.at(i).g < 0) throw DomainError("ideal vector must satisfy gamma >= 0");
  DivisionContinuityReport rep{ModuleVec::of({}), 0, true};
  std::vector<int64_t> gp;
  for (std::size_t i = 0; i < I.n(); ++i)
    gp.push_back(std::max<int64_t>(I.at(i).g, 1));
  rep.Iprime = ModuleVec::of(gp);
  const FieldElem one = FieldElem::from_int(R.field(), 1);
  // sample I' via exact value vectors gp + offsets
  std::vector<int64_t> off(I.n(), 0);
  for (;;) {
    std::vector<int64_t> t(gp);
    for (std::size_t i = 0; i < I.n(); ++i) t[i] += off[i];
    FieldElem x = element_with_value_vector(R.valuations(), t);
    FieldElem delta = one / (one + x) - one;
    if (!I.contains(R, delta)) rep.ok = false;
    ++rep.samplesTested;
    std::size_t i = 0;
    for (; i < off.size(); ++i) {
      if (off[i] < 2) {
        ++off[i];
        break;
      }
      off[i] = 0;
    }
    if (i == off.size()) break;
  }
  return rep;
}

std::vector<FieldElem> subring_generated(const FieldDesc& field,
                                         const std::vector<FieldElem>& seed,
                                         int depth) {
  if (depth < 0) throw DomainError("negative depth");
  std::vector<FieldElem> u = seed;
  u.push_back(FieldElem(field));
  u.push_back(FieldElem::from_int(field, 1));
  sort_canonical(u);
  u.erase(std::unique(u.begin(), u.end()), u.end());
  for (int step = 0; step < depth; ++step) {
    std::vector<FieldElem> next = u;
    for (const auto& a : u)
      for (const auto& b : u) {
        next.push_back(a - b);
        next.push_back(a * b);
      }
    sort_canonical(next);
    next.erase(std::unique(next.begin(), next.end()), next.end());
    u = std::move(next);
  }
  return u;
}

CoembedResult coembeddable(const MultiValRing& R, const ModuleVec& X,
                           const ModuleVec& Y) {
  CoembedResult res{false, FieldElem(R.field()), FieldElem(R.field()), 0};
  if (X.is_bottom() || Y.is_bottom()) {
    // {0} scales to itself only; co-embeddable iff both are Bottom
    res.coembeddable = X.is_bottom() && Y.is_bottom();
    res.a = res.b = FieldElem::from_int(R.field(), 1);
    return res;
  }
  for (std::size_t i = 0; i < X.n(); ++i)
    if (X.at(i).negInf != Y.at(i).negInf) {
      res.obstruction = i;
      return res;
    }
  res.coembeddable = true;
  std::vector<int64_t> ta, tb;
  for (std::size_t i = 0; i < X.n(); ++i) {
    if (X.at(i).negInf) {
      ta.push_back(0);
      tb.push_back(0);
    } else {
      ta.push_back(std::max<int64_t>(Y.at(i).g - X.at(i).g, 0));
      tb.push_back(std::max<int64_t>(X.at(i).g - Y.at(i).g, 0));
    }
  }
  // restrict to the finite components for element construction
  std::vector<Valuation> finvals;
  std::vector<int64_t> fa, fb;
  for (std::size_t i = 0; i < X.n(); ++i)
    if (!X.at(i).negInf) {
      finvals.push_back(R.at(i));
      fa.push_back(ta[i]);
      fb.push_back(tb[i]);
    }
  if (finvals.empty()) {
    res.a = res.b = FieldElem::from_int(R.field(), 1);
    return res;
  }
  res.a = element_with_value_vector(finvals, fa);
  res.b = element_with_value_vector(finvals, fb);
  if (!X.scaled(R, res.a).leq(Y) || !Y.scaled(R, res.b).leq(X))
    throw InternalCheckError("co-embedding witnesses failed verification");
  return res;
}

std::vector<Valuation> coarsening_report(const MultiValRing& R) {
  // for intersections of rank-1 valuation rings the V-topological
  // coarsenings are exactly the component topologies; re-verify on samples
  // that R sits inside each component ring
  std::vector<FieldElem> gens;
  for (const auto& v : R.valuations()) gens.push_back(v.uniformizer());
  auto samples = sample_universe(R.field(), 2, gens);
  for (const auto& v : R.valuations())
    for (const auto& x : samples)
      if (R.contains(x) && !v.in_ring(x))
        throw InternalCheckError("component ring does not contain R");
  return R.valuations();
}

ClassifyResult classify_pair(const MultiValRing& R, const MultiValRing& R1,
                             const MultiValRing& R2) {
  if (!R1.superring_of(R) || !R2.superring_of(R))
    throw DomainError("classify_pair arguments must be superrings of R");
  ClassifyResult res;
  for (const auto& v : R1.valuations())
    if (R2.index_of(v)) {
      res.independent = false;
      res.common = v;
      return res;
    }
  res.independent = true;
  const FieldDesc& f = R.field();
  // batch of approximation witnesses for U + V = K
  std::vector<std::tuple<FieldElem, FieldElem, int64_t, int64_t>> batch = {
      {FieldElem::from_int(f, 1), FieldElem::from_int(f, 2), 3, 2},
      {FieldElem::from_int(f, 0), FieldElem::from_int(f, 1), 2, 2},
      {FieldElem::from_int(f, 1), FieldElem::from_int(f, 0), 2, 3},
      {FieldElem::from_int(f, 2), FieldElem::from_int(f, 1), 1, 4},
      {FieldElem::from_int(f, 1), FieldElem::from_int(f, 1), 3, 3},
  };
  for (const auto& [x, y, k1, k2] : batch) {
    std::vector<ApproxTarget> ts;
    for (const auto& v : R1.valuations()) ts.push_back({v, x, k1});
    for (const auto& v : R2.valuations()) ts.push_back({v, y, k2});
    FieldElem z = approximate(ts);
    for (const auto& v : R1.valuations())
      if (!v.val(z - x).geq(k1))
        throw InternalCheckError("independence witness failed re-verification");
    for (const auto& v : R2.valuations())
      if (!v.val(z - y).geq(k2))
        throw InternalCheckError("independence witness failed re-verification");
    res.witnesses.push_back({x, y, z, k1, k2});
  }
  return res;
}

VnResult vn_check(const MultiValRing& R, const std::vector<FieldElem>& qs,
                  const std::vector<FieldElem>& universe) {
  if (qs.empty()) throw DomainError("vn_check needs at least one q");
  for (std::size_t i = 0; i < qs.size(); ++i)
    for (std::size_t j = i + 1; j < qs.size(); ++j)
      if (qs[i] == qs[j]) throw DomainError("duplicate q in vn_check");
  for (const auto& x : universe) {
    if (R.contains(x)) continue;
    bool hit = false;
    for (const auto& q : qs) {
      FieldElem d = x - q;
      if (d.is_zero()) continue;
      if (R.contains(d.inverse())) {
        hit = true;
        break;
      }
    }
    if (!hit) return VnResult{false, x};
  }
  return VnResult{true, FieldElem(R.field())};
}

BumpReport verify_bump(const MultiValRing& R, const MultiValRing& Rp) {
  if (!Rp.superring_of(R))
    throw DomainError("verify_bump needs a superring of R");
  BumpReport rep;
  if (Rp.n() == R.n()) {
    rep.coembeddableBranch = true;
    rep.weightOfRp = R.n();
    return rep;
  }
  rep.coembeddableBranch = false;
  rep.weightOfRp = weight(Rp).n;
  if (rep.weightOfRp > R.n() - 1)
    throw InternalCheckError("coarsened ring weight exceeds n-1");
  return rep;
}

}  // namespace mv

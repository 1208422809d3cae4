#include "mv/finmodule.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mv {

namespace {

bool mask_less(const GroupMask& a, const GroupMask& b) {
  if (a.count() != b.count()) return a.count() < b.count();
  for (std::size_t i = 0; i < kMaxModuleOrder; ++i)
    if (a[i] != b[i]) return b[i];
  return false;
}

}  // namespace

FinModule::FinModule(std::vector<int64_t> ds, std::size_t maxOrder)
    : ds_(std::move(ds)) {
  for (int64_t d : ds_) {
    if (d < 1) throw DomainError("cyclic order must be positive");
    order_ *= static_cast<std::size_t>(d);
    if (order_ > maxOrder)
      throw DomainError("module order exceeds the bound of " +
                        std::to_string(maxOrder));
  }
}

std::size_t FinModule::add(std::size_t a, std::size_t b) const {
  std::size_t out = 0, radix = 1;
  for (int64_t d : ds_) {
    std::size_t ud = static_cast<std::size_t>(d);
    std::size_t ca = (a / radix) % ud, cb = (b / radix) % ud;
    out += ((ca + cb) % ud) * radix;
    radix *= ud;
  }
  return out;
}

std::size_t FinModule::smul(int64_t k, std::size_t a) const {
  std::size_t out = 0, radix = 1;
  for (int64_t d : ds_) {
    std::size_t ud = static_cast<std::size_t>(d);
    int64_t ca = static_cast<int64_t>((a / radix) % ud);
    int64_t c = (k % d) * ca % d;
    if (c < 0) c += d;
    out += static_cast<std::size_t>(c) * radix;
    radix *= ud;
  }
  return out;
}

int64_t FinModule::exponent() const {
  int64_t e = 1;
  for (int64_t d : ds_) e = std::lcm(e, d);
  return e;
}

GroupMask FinModule::closure(GroupMask seed) const {
  seed.set(0);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t a = 0; a < order_; ++a) {
      if (!seed[a]) continue;
      for (std::size_t b = a; b < order_; ++b) {
        if (!seed[b]) continue;
        std::size_t s = add(a, b);
        if (!seed[s]) {
          seed.set(s);
          grew = true;
        }
      }
    }
  }
  return seed;
}

const std::vector<GroupMask>& FinModule::subgroups() const {
  if (!subgroups_.empty()) return subgroups_;
  std::vector<GroupMask> found;
  std::set<GroupMask, bool (*)(const GroupMask&, const GroupMask&)> seen(
      mask_less);
  GroupMask zero;
  zero.set(0);
  found.push_back(zero);
  seen.insert(zero);
  // grow each known subgroup by one generator until saturation
  for (std::size_t head = 0; head < found.size(); ++head) {
    GroupMask h = found[head];
    for (std::size_t g = 1; g < order_; ++g) {
      if (h[g]) continue;
      // <H, g> = union over k of (H + k*g), since the group is abelian
      GroupMask ext = h;
      std::size_t kg = g;
      while (kg != 0) {
        for (std::size_t x = 0; x < order_; ++x)
          if (h[x]) ext.set(add(x, kg));
        kg = add(kg, g);
      }
      if (seen.insert(ext).second) found.push_back(ext);
    }
  }
  std::sort(found.begin(), found.end(), mask_less);
  subgroups_ = std::move(found);
  return subgroups_;
}

SubgroupLattice::SubgroupLattice(const FinModule& m)
    : m_(m), subs_(m.subgroups()), index_(mask_less) {
  for (std::size_t i = 0; i < subs_.size(); ++i)
    index_[subs_[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    if (subs_[i].count() == 1) bottom_ = static_cast<int>(i);
    if (subs_[i].count() == m.order()) top_ = static_cast<int>(i);
  }
}

int SubgroupLattice::index_of(const GroupMask& g) const {
  auto it = index_.find(g);
  if (it == index_.end())
    throw InternalCheckError("mask is not a subgroup");
  return it->second;
}

int SubgroupLattice::join(int a, int b) const {
  if (leq(a, b)) return b;
  if (leq(b, a)) return a;
  auto key = std::minmax(a, b);
  auto it = joinCache_.find(key);
  if (it != joinCache_.end()) return it->second;
  int j = index_of(m_.closure(subs_[a] | subs_[b]));
  joinCache_[key] = j;
  return j;
}

std::vector<int> SubgroupLattice::covers_of(int a) const {
  // in a finite abelian group, B covers A exactly when [B : A] is prime
  std::vector<int> out;
  std::size_t na = subs_[a].count();
  for (int b = 0; b < size(); ++b) {
    if (b == a || !leq(a, b)) continue;
    std::size_t idx = subs_[b].count() / na;
    bool prime = idx >= 2;
    for (std::size_t d = 2; d * d <= idx; ++d)
      if (idx % d == 0) prime = false;
    if (prime) out.push_back(b);
  }
  return out;
}

SemisimpleResult semisimple_subquotient(const FinModule& m) {
  const auto& subs = m.subgroups();
  // rad = product of the distinct primes dividing the exponent
  int64_t e = m.exponent(), rad = 1;
  for (int64_t p = 2; p <= e; ++p) {
    if (e % p) continue;
    rad *= p;
    while (e % p == 0) e /= p;
  }
  auto omega = [](std::size_t k) {
    int c = 0;
    for (std::size_t p = 2; p <= k; ++p)
      while (k % p == 0) {
        k /= p;
        ++c;
      }
    return c;
  };
  SemisimpleResult best;
  best.A = best.B = subs.empty() ? GroupMask{} : subs[0];
  std::vector<std::size_t> radMap(m.order());
  for (std::size_t x = 0; x < m.order(); ++x) radMap[x] = m.smul(rad, x);
  // exhaustive over subgroup pairs: B/A is semisimple iff rad * B <= A
  for (const auto& A : subs) {
    for (const auto& B : subs) {
      if ((A & B) != A) continue;  // need A <= B
      bool semisimple = true;
      for (std::size_t x = 0; x < m.order() && semisimple; ++x)
        if (B[x] && !A[radMap[x]]) semisimple = false;
      if (!semisimple) continue;
      int len = omega(B.count() / A.count());
      if (len > best.length) {
        best.length = len;
        best.A = A;
        best.B = B;
      }
    }
  }
  SubgroupLattice lat(m);
  int rank = cube_rank_strict(lat);
  if (rank != best.length)
    throw InternalCheckError(
        "semisimple length disagrees with submodule-lattice cube rank");
  return best;
}

}  // namespace mv

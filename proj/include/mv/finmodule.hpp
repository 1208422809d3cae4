#pragma once

#include <bitset>
#include <cstdint>
#include <map>
#include <vector>

#include "mv/errors.hpp"
#include "mv/lattice.hpp"

namespace mv {

constexpr std::size_t kMaxModuleOrder = 256;
using GroupMask = std::bitset<kMaxModuleOrder>;

// finite abelian group Z/d_1 + ... + Z/d_k as a Z-module; elements are
// indexed by mixed-radix tuples
class FinModule {
 public:
  explicit FinModule(std::vector<int64_t> ds,
                     std::size_t maxOrder = kMaxModuleOrder);

  std::size_t order() const { return order_; }
  const std::vector<int64_t>& cyclic_orders() const { return ds_; }
  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t smul(int64_t k, std::size_t a) const;
  int64_t exponent() const;

  // all subgroups as element masks, deterministically ordered
  const std::vector<GroupMask>& subgroups() const;
  GroupMask closure(GroupMask seed) const;

 private:
  std::vector<int64_t> ds_;
  std::size_t order_ = 1;
  mutable std::vector<GroupMask> subgroups_;
};

// subgroup lattice exposing the interface cube_rank expects; joins are
// computed lazily via closures
class SubgroupLattice {
 public:
  explicit SubgroupLattice(const FinModule& m);
  int size() const { return static_cast<int>(subs_.size()); }
  bool leq(int a, int b) const {
    return (subs_[a] & subs_[b]) == subs_[a];
  }
  int meet(int a, int b) const { return index_of(subs_[a] & subs_[b]); }
  int join(int a, int b) const;
  int bottom() const { return bottom_; }
  int top() const { return top_; }
  std::vector<int> covers_of(int a) const;
  const GroupMask& mask(int a) const { return subs_[a]; }
  int index_of(const GroupMask& g) const;

 private:
  const FinModule& m_;
  std::vector<GroupMask> subs_;
  std::map<GroupMask, int, bool (*)(const GroupMask&, const GroupMask&)> index_;
  mutable std::map<std::pair<int, int>, int> joinCache_;
  int bottom_ = 0, top_ = 0;
};

struct SemisimpleResult {
  GroupMask A, B;       // A <= B with B/A semisimple of maximal length
  int length = 0;       // = cube rank of the submodule lattice
};

SemisimpleResult semisimple_subquotient(const FinModule& m);

}  // namespace mv

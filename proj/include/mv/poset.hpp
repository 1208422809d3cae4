#pragma once

#include <cstddef>
#include <vector>

namespace mv {

// finite poset given by an explicit reflexive-transitive-antisymmetric
// relation; construction validates all three properties
class FinPoset {
 public:
  FinPoset(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& le);
  std::size_t size() const { return n_; }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * n_ + b]; }
  bool lt(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }

 private:
  std::size_t n_;
  std::vector<char> leq_;
};

// minimum chain partition via maximum bipartite matching on the strict
// order; cross-checked against a brute-force maximum antichain when the
// poset is small enough to enumerate
std::vector<std::vector<std::size_t>> dilworth_chains(const FinPoset& p);

std::vector<std::size_t> max_antichain_bruteforce(const FinPoset& p);

}  // namespace mv

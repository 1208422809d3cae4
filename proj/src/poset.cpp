#include "mv/poset.hpp"

#include <algorithm>

#include "mv/errors.hpp"

namespace mv {

FinPoset::FinPoset(std::size_t n,
                   const std::vector<std::pair<std::size_t, std::size_t>>& le)
    : n_(n), leq_(n * n, 0) {
  for (std::size_t i = 0; i < n; ++i) leq_[i * n + i] = 1;
  for (auto [a, b] : le) {
    if (a >= n || b >= n) throw DomainError("poset relation index out of range");
    leq_[a * n + b] = 1;
  }
  // transitive closure, then validate the input really was transitive and
  // antisymmetric (closure of an antisymmetric relation can create cycles,
  // which we reject)
  auto closed = leq_;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (closed[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (closed[k * n + j]) closed[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && closed[i * n + j] && closed[j * n + i])
        throw DomainError("relation is not a partial order (cycle)");
  leq_ = closed;
}

namespace {

// Kuhn's augmenting-path matching on the strict-order bipartite graph
bool try_kuhn(const FinPoset& p, std::size_t u, std::vector<int>& matchTo,
              std::vector<char>& used) {
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (!p.lt(u, v) || used[v]) continue;
    used[v] = 1;
    if (matchTo[v] < 0 ||
        try_kuhn(p, static_cast<std::size_t>(matchTo[v]), matchTo, used)) {
      matchTo[v] = static_cast<int>(u);
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::vector<std::size_t>> dilworth_chains(const FinPoset& p) {
  const std::size_t n = p.size();
  std::vector<int> matchTo(n, -1);  // matchTo[v] = u means edge u -> v in chains
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<char> used(n, 0);
    try_kuhn(p, u, matchTo, used);
  }
  std::vector<int> next(n, -1);
  std::vector<char> hasPred(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    if (matchTo[v] >= 0) {
      next[matchTo[v]] = static_cast<int>(v);
      hasPred[v] = 1;
    }
  std::vector<std::vector<std::size_t>> chains;
  for (std::size_t s = 0; s < n; ++s) {
    if (hasPred[s]) continue;
    std::vector<std::size_t> chain;
    for (int cur = static_cast<int>(s); cur >= 0; cur = next[cur])
      chain.push_back(static_cast<std::size_t>(cur));
    chains.push_back(std::move(chain));
  }
  if (n <= 12) {
    auto anti = max_antichain_bruteforce(p);
    if (anti.size() != chains.size())
      throw InternalCheckError("chain count disagrees with maximum antichain");
  }
  return chains;
}

std::vector<std::size_t> max_antichain_bruteforce(const FinPoset& p) {
  const std::size_t n = p.size();
  if (n > 25) throw DomainError("poset too large for brute-force antichain");
  std::vector<std::size_t> best;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sel.push_back(i);
    if (sel.size() <= best.size()) continue;
    bool ok = true;
    for (std::size_t a = 0; a < sel.size() && ok; ++a)
      for (std::size_t b = a + 1; b < sel.size() && ok; ++b)
        if (p.leq(sel[a], sel[b]) || p.leq(sel[b], sel[a])) ok = false;
    if (ok) best = sel;
  }
  return best;
}

}  // namespace mv

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mv/errors.hpp"

namespace mv {

// finite lattice from covering pairs; meet/join existence and modularity are
// verified at construction
class FinLattice {
 public:
  FinLattice(std::size_t n,
             const std::vector<std::pair<std::size_t, std::size_t>>& covers,
             std::size_t maxSize = 64);

  static FinLattice boolean_lattice(int k, std::size_t maxSize = 64);
  static FinLattice chain(int len, std::size_t maxSize = 64);
  FinLattice product(const FinLattice& o, std::size_t maxSize = 64) const;

  int size() const { return static_cast<int>(n_); }
  bool leq(int a, int b) const { return leq_[a * n_ + b]; }
  int meet(int a, int b) const { return meet_[a * n_ + b]; }
  int join(int a, int b) const { return join_[a * n_ + b]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }
  std::vector<int> covers_of(int a) const;

 private:
  std::size_t n_;
  std::vector<char> leq_;
  std::vector<int> meet_, join_;
  int bottom_ = 0, top_ = 0;
};

enum class CubeMethod { StrictCube, MeetDrop, JoinDrop, All };

struct CubeWitness {
  int base = 0;
  std::vector<int> independents;  // each > base; prefix-join meets drop to base
};

namespace detail {

// height of every element: longest chain up from the bottom
template <class L>
std::vector<int> heights(const L& lat) {
  const int n = lat.size();
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  // topological by number of elements below
  std::vector<int> below(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && lat.leq(b, a)) ++below[a];
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return below[a] < below[b]; });
  std::vector<int> h(n, 0);
  for (int idx : order)
    for (int b = 0; b < n; ++b)
      if (b != idx && lat.leq(b, idx)) h[idx] = std::max(h[idx], h[b] + 1);
  return h;
}

// largest meet-irredundant family: every member strictly matters for the meet
template <class L>
int max_irredundant(const L& lat) {
  const int n = lat.size();
  auto h = heights(lat);
  const int heightCap = h[lat.top()];
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return h[a] > h[b]; });  // coatoms first
  int best = 0;
  // family state: full meet M and, per member i, the meet of the others;
  // every prefix of an irredundant family is irredundant, so enumerating
  // families in increasing position order is complete
  std::vector<int> others;
  auto dfs = [&](auto&& self, int startPos, int M) -> void {
    best = std::max(best, static_cast<int>(others.size()));
    if (best >= heightCap) return;  // family size can never exceed height
    if (static_cast<int>(others.size()) + h[M] <= best) return;
    for (int pos = startPos; pos < n; ++pos) {
      int a = order[pos];
      int M2 = lat.meet(M, a);
      // the new member's meet-of-others is the old M, so M2 != M is both
      // the strict-drop condition and the irredundancy condition for a
      if (M2 == M) continue;
      bool ok = true;
      std::vector<int> next(others.size() + 1);
      for (std::size_t i = 0; i < others.size(); ++i) {
        next[i] = lat.meet(others[i], a);
        if (next[i] == M2) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      next.back() = M;
      std::swap(others, next);
      self(self, pos + 1, M2);
      std::swap(others, next);
      if (best >= heightCap) return;
    }
  };
  dfs(dfs, 0, lat.top());
  return best;
}

template <class L>
struct DualView {
  const L& lat;
  int size() const { return lat.size(); }
  bool leq(int a, int b) const { return lat.leq(b, a); }
  int meet(int a, int b) const { return lat.join(a, b); }
  int join(int a, int b) const { return lat.meet(a, b); }
  int bottom() const { return lat.top(); }
  int top() const { return lat.bottom(); }
};

// longest independent sequence of covers over the given base
template <class L>
int strict_over_base(const L& lat, int base, const std::vector<int>& h,
                     int globalBest, std::vector<int>* witness) {
  auto covers = lat.covers_of(base);
  if (covers.empty()) return 0;
  int socle = base;
  for (int c : covers) socle = lat.join(socle, c);
  const int cap = h[socle] - h[base];
  if (cap <= globalBest && !witness) return 0;  // cannot improve
  int best = 0;
  std::vector<int> cur, bestSeq;
  auto dfs = [&](auto&& self, int startPos, int P) -> void {
    if (static_cast<int>(cur.size()) > best) {
      best = static_cast<int>(cur.size());
      bestSeq = cur;
    }
    if (best >= cap) return;
    if (static_cast<int>(cur.size()) + h[socle] - h[P] <= best) return;
    for (std::size_t pos = startPos; pos < covers.size(); ++pos) {
      int c = covers[pos];
      if (lat.meet(P, c) != base) continue;  // not independent of the prefix
      cur.push_back(c);
      self(self, pos + 1, lat.join(P, c));
      cur.pop_back();
      if (best >= cap) return;
    }
  };
  dfs(dfs, 0, base);
  if (witness) *witness = bestSeq;
  return best;
}

}  // namespace detail

template <class L>
int cube_rank_strict(const L& lat) {
  auto h = detail::heights(lat);
  const int heightCap = h[lat.top()];
  int best = 0;
  for (int a = 0; a < lat.size(); ++a) {
    best = std::max(best,
                    detail::strict_over_base(lat, a, h, best, nullptr));
    if (best >= heightCap) break;
  }
  return best;
}

template <class L>
int cube_rank_meetdrop(const L& lat) {
  return detail::max_irredundant(lat);
}

template <class L>
int cube_rank_joindrop(const L& lat) {
  return detail::max_irredundant(detail::DualView<L>{lat});
}

template <class L>
int cube_rank(const L& lat, CubeMethod m = CubeMethod::All) {
  switch (m) {
    case CubeMethod::StrictCube:
      return cube_rank_strict(lat);
    case CubeMethod::MeetDrop:
      return cube_rank_meetdrop(lat);
    case CubeMethod::JoinDrop:
      return cube_rank_joindrop(lat);
    case CubeMethod::All: {
      int a = cube_rank_strict(lat);
      int b = cube_rank_meetdrop(lat);
      int c = cube_rank_joindrop(lat);
      if (a != b || b != c)
        throw InternalCheckError(
            "cube rank characterizations disagree: strict=" +
            std::to_string(a) + " meetDrop=" + std::to_string(b) +
            " joinDrop=" + std::to_string(c));
      return a;
    }
  }
  throw DomainError("unknown cube rank method");
}

template <class L>
std::optional<CubeWitness> strict_cube_witness(const L& lat, int r) {
  if (r < 1) throw DomainError("strict cube witness needs r >= 1");
  auto h = detail::heights(lat);
  for (int a = 0; a < lat.size(); ++a) {
    std::vector<int> seq;
    int got = detail::strict_over_base(lat, a, h, 0, &seq);
    if (got >= r) {
      seq.resize(static_cast<std::size_t>(r));
      return CubeWitness{a, seq};
    }
  }
  return std::nullopt;
}

// check the CubeWitness invariants explicitly
template <class L>
bool verify_cube_witness(const L& lat, const CubeWitness& w) {
  int P = w.base;
  for (std::size_t i = 0; i < w.independents.size(); ++i) {
    int b = w.independents[i];
    if (b == w.base || !lat.leq(w.base, b)) return false;
    if (i > 0 && lat.meet(P, b) != w.base) return false;
    P = i == 0 ? b : lat.join(P, b);
  }
  return true;
}

}  // namespace mv

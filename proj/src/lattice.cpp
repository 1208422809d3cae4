#include "mv/lattice.hpp"

namespace mv {

FinLattice::FinLattice(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers,
    std::size_t maxSize)
    : n_(n), leq_(n * n, 0), meet_(n * n, -1), join_(n * n, -1) {
  if (n == 0) throw DomainError("lattice needs at least one element");
  if (n > maxSize)
    throw DomainError("lattice exceeds the size bound of " +
                      std::to_string(maxSize));
  for (std::size_t i = 0; i < n; ++i) leq_[i * n + i] = 1;
  for (auto [a, b] : covers) {
    if (a >= n || b >= n) throw DomainError("cover index out of range");
    leq_[a * n + b] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k * n + j]) leq_[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && leq_[i * n + j] && leq_[j * n + i])
        throw DomainError("cover relation contains a cycle");
  // meets and joins must exist and be unique
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      int m = -1, j = -1;
      for (std::size_t c = 0; c < n; ++c) {
        if (leq_[c * n + a] && leq_[c * n + b] &&
            (m < 0 || leq_[m * n + c]))
          m = static_cast<int>(c);
        if (leq_[a * n + c] && leq_[b * n + c] &&
            (j < 0 || leq_[c * n + j]))
          j = static_cast<int>(c);
      }
      // verify m really is greatest and j least among bounds
      if (m < 0 || j < 0) throw DomainError("not a lattice: missing bound");
      for (std::size_t c = 0; c < n; ++c) {
        if (leq_[c * n + a] && leq_[c * n + b] && !leq_[c * n + m])
          throw DomainError("not a lattice: meet not unique");
        if (leq_[a * n + c] && leq_[b * n + c] &&
            !leq_[static_cast<std::size_t>(j) * n + c])
          throw DomainError("not a lattice: join not unique");
      }
      meet_[a * n + b] = m;
      join_[a * n + b] = j;
    }
  bottom_ = top_ = -1;
  for (std::size_t i = 0; i < n; ++i) {
    bool isBot = true, isTop = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (!leq_[i * n + j]) isBot = false;
      if (!leq_[j * n + i]) isTop = false;
    }
    if (isBot) bottom_ = static_cast<int>(i);
    if (isTop) top_ = static_cast<int>(i);
  }
  if (bottom_ < 0 || top_ < 0)
    throw DomainError("not a lattice: no global bottom or top");
  // modularity: a <= c implies a v (b ^ c) = (a v b) ^ c
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      if (!leq_[a * n + c]) continue;
      for (std::size_t b = 0; b < n; ++b)
        if (join_[a * n + meet_[b * n + c]] !=
            meet_[static_cast<std::size_t>(join_[a * n + b]) * n + c])
          throw DomainError("lattice is not modular");
    }
}

FinLattice FinLattice::boolean_lattice(int k, std::size_t maxSize) {
  if (k < 0 || k > 20) throw DomainError("boolean lattice exponent out of range");
  std::size_t n = std::size_t(1) << k;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t s = 0; s < n; ++s)
    for (int b = 0; b < k; ++b)
      if (!(s & (std::size_t(1) << b)))
        covers.push_back({s, s | (std::size_t(1) << b)});
  return FinLattice(n, covers, maxSize);
}

FinLattice FinLattice::chain(int len, std::size_t maxSize) {
  if (len < 1) throw DomainError("chain needs at least one element");
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (int i = 0; i + 1 < len; ++i)
    covers.push_back({static_cast<std::size_t>(i),
                      static_cast<std::size_t>(i + 1)});
  return FinLattice(static_cast<std::size_t>(len), covers, maxSize);
}

FinLattice FinLattice::product(const FinLattice& o, std::size_t maxSize) const {
  std::size_t n = n_ * o.n_;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  // order pairs suffice; construction closes transitively anyway
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t x = 0; x < o.n_; ++x)
      for (std::size_t b = 0; b < n_; ++b)
        for (std::size_t y = 0; y < o.n_; ++y)
          if (leq_[a * n_ + b] && o.leq_[x * o.n_ + y])
            covers.push_back({a * o.n_ + x, b * o.n_ + y});
  return FinLattice(n, covers, maxSize);
}

std::vector<int> FinLattice::covers_of(int a) const {
  std::vector<int> out;
  for (std::size_t b = 0; b < n_; ++b) {
    if (static_cast<int>(b) == a || !leq(a, static_cast<int>(b))) continue;
    bool isCover = true;
    for (std::size_t c = 0; c < n_ && isCover; ++c)
      if (static_cast<int>(c) != a && static_cast<int>(c) != static_cast<int>(b) &&
          leq(a, static_cast<int>(c)) && leq(static_cast<int>(c), static_cast<int>(b)))
        isCover = false;
    if (isCover) out.push_back(static_cast<int>(b));
  }
  return out;
}

}  // namespace mv

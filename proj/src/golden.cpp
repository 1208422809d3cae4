#include "mv/golden.hpp"

#include <algorithm>

#include "mv/errors.hpp"
#include "mv/lattice.hpp"

namespace mv {

namespace {

// all gamma vectors with entries in {-1, 0, 1}
std::vector<std::vector<int64_t>> unit_grid(std::size_t n) {
  std::vector<std::vector<int64_t>> out;
  std::vector<int64_t> g(n, -1);
  for (;;) {
    out.push_back(g);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (g[i] < 1) {
        ++g[i];
        break;
      }
      g[i] = -1;
    }
    if (i == n) break;
  }
  return out;
}

// the unit-grid fragment as an explicit finite lattice: index 0 is Bottom,
// then the grid vectors, then Top
FinLattice fragment_lattice(std::size_t n) {
  auto grid = unit_grid(n);
  std::size_t total = grid.size() + 2;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    order.push_back({0, i + 1});
    order.push_back({i + 1, total - 1});
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (i == j) continue;
      bool le = true;  // module order: gamma_i >= gamma_j componentwise
      for (std::size_t k = 0; k < n; ++k)
        if (grid[i][k] < grid[j][k]) le = false;
      if (le) order.push_back({i + 1, j + 1});
    }
  }
  order.push_back({0, total - 1});
  return FinLattice(total, order, 128);
}

ModuleVec min_vector(const MultiValRing& R, const std::vector<FieldElem>& S,
                     bool& any) {
  std::vector<int64_t> m(R.n(), 0);
  any = false;
  for (const auto& s : S) {
    if (s.is_zero()) continue;
    auto vv = R.valvec(s);
    for (std::size_t i = 0; i < R.n(); ++i)
      m[i] = any ? std::min(m[i], vv[i].v) : m[i];
    if (!any)
      for (std::size_t i = 0; i < R.n(); ++i) m[i] = vv[i].v;
    any = true;
  }
  return ModuleVec::of(m);
}

}  // namespace

GoldenAxiomReport golden_axioms(const GoldenLatticeView& V) {
  const MultiValRing& R = V.R;
  const std::size_t n = R.n();
  GoldenAxiomReport rep;
  auto grid = unit_grid(n);

  // Lattice: Bottom and Top exist by representation; meets and joins of
  // fragment vectors are again fragment-shaped vectors
  rep.latticeAxiom = true;
  for (const auto& a : grid)
    for (const auto& b : grid) {
      ModuleVec A = ModuleVec::of(a), B = ModuleVec::of(b);
      ModuleVec m = A.meet(B), j = A.join(B);
      if (m.is_bottom() || j.is_bottom() || m.is_top() || j.is_top())
        rep.latticeAxiom = false;
      if (!(m.leq(A) && m.leq(B) && A.leq(j) && B.leq(j)))
        rep.latticeAxiom = false;
    }

  // Scaling: c * M(gamma) = M(gamma + valvec(c)), checked extensionally
  std::vector<FieldElem> gens;
  for (const auto& v : R.valuations()) gens.push_back(v.uniformizer());
  auto scales = smooth_elements(R.field(), Int(V.scaleHeight), gens);
  auto samples = sample_universe(R.field(), 2, gens);
  rep.scalingAxiom = true;
  std::vector<std::vector<int64_t>> testVecs = {std::vector<int64_t>(n, 0),
                                                std::vector<int64_t>(n, 1)};
  if (n > 1) {
    std::vector<int64_t> mixed(n, 0);
    mixed[0] = -1;
    testVecs.push_back(mixed);
  }
  for (const auto& c : scales) {
    if (c.is_zero()) continue;
    for (const auto& g : testVecs) {
      ModuleVec M = ModuleVec::of(g);
      ModuleVec Mc = M.scaled(R, c);
      for (const auto& x : samples) {
        bool lhs = M.contains(R, x);
        bool rhs = Mc.contains(R, c * x);
        if (lhs != rhs) rep.scalingAxiom = false;
      }
    }
  }

  // Rank: cube rank of the fragment equals the number of valuations
  FinLattice frag = fragment_lattice(n);
  rep.fragmentRank = n <= 3 ? cube_rank(frag, CubeMethod::All)
                            : cube_rank(frag, CubeMethod::StrictCube);
  rep.rankAxiom = rep.fragmentRank == static_cast<int>(n);

  // Intersection: meets of nonzero elements are nonzero
  rep.intersectionAxiom = true;
  for (const auto& a : grid)
    for (const auto& b : grid)
      if (ModuleVec::of(a).meet(ModuleVec::of(b)).is_bottom())
        rep.intersectionAxiom = false;

  // Non-degeneracy: some member besides {0} and K
  rep.nondegeneracyAxiom = !grid.empty();
  return rep;
}

PedestalResult pedestal(const GoldenLatticeView& V) {
  const std::size_t n = V.R.n();
  PedestalResult res{ModuleVec::of(std::vector<int64_t>(n, 0)), {}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int64_t> g(n, 0);
    g[i] = -1;
    res.Bs.push_back(ModuleVec::of(g));
  }
  // cube witness invariants, in vector arithmetic
  ModuleVec P = res.A;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(res.A.leq(res.Bs[i])) || res.A == res.Bs[i])
      throw InternalCheckError("pedestal relaxation does not lie above A");
    if (i > 0 && P.meet(res.Bs[i]) != res.A)
      throw InternalCheckError("pedestal relaxations are not independent");
    P = i == 0 ? res.Bs[i] : P.join(res.Bs[i]);
  }
  return res;
}

std::vector<FieldElem> guard_set(const GoldenLatticeView& V,
                                 const ModuleVec& A) {
  const MultiValRing& R = V.R;
  if (!(A == ModuleVec::of(std::vector<int64_t>(R.n(), 0))))
    throw DomainError("guard_set expects the pedestal M(0,...,0)");
  std::vector<FieldElem> S;
  for (std::size_t i = 0; i < R.n(); ++i) {
    std::vector<int64_t> t(R.n(), 0);
    t[i] = -1;
    S.push_back(element_with_value_vector(R.valuations(), t));
  }
  GuardCheck gc = check_guard(V, S, A);
  if (!gc.guarded) throw InternalCheckError("guard set failed its own check");
  return S;
}

GuardCheck check_guard(const GoldenLatticeView& V,
                       const std::vector<FieldElem>& S, const ModuleVec& A) {
  const MultiValRing& R = V.R;
  bool any = false;
  ModuleVec m = min_vector(R, S, any);
  // the least module containing S is M(min of the value vectors); guarding
  // reduces to A <= M(m).  With no nonzero elements, only Bottom is forced.
  ModuleVec least = any ? m : ModuleVec::bottom(R.n());
  GuardCheck out;
  out.guarded = A.leq(least);
  out.counterexample = out.guarded ? ModuleVec::bottom(R.n()) : least;
  return out;
}

FieldElem scale_into(const GoldenLatticeView& V,
                     const std::vector<FieldElem>& S, const ModuleVec& A) {
  const MultiValRing& R = V.R;
  if (A.is_bottom()) throw DomainError("cannot scale into Bottom");
  bool any = false;
  ModuleVec m = min_vector(R, S, any);
  FieldElem c = FieldElem::from_int(R.field(), 1);
  if (any) {
    std::vector<int64_t> t(R.n(), 0);
    for (std::size_t i = 0; i < R.n(); ++i)
      if (!A.at(i).negInf)
        t[i] = std::max<int64_t>(A.at(i).g - m.at(i).g, 0);
    c = element_with_value_vector(R.valuations(), t);
  }
  for (const auto& s : S)
    if (!A.contains(R, c * s))
      throw InternalCheckError("scale_into witness failed verification");
  return c;
}

}  // namespace mv

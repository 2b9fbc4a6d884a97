#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "divrank/corpus.hpp"
#include "divrank/geometry.hpp"
#include "divrank/rank.hpp"

namespace divrank {

struct SuiteReport {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::size_t boundary = 0;           // duality only: samples exactly on the boundary
  std::vector<std::string> examples;  // first few failures, human readable
};

namespace detail {

/// Calls f(d) for every divisor with entries in [lo, hi] whose degree lies in [deg_lo, deg_hi].
template <class F>
void for_each_box_divisor(std::size_t n, std::int64_t lo, std::int64_t hi, std::int64_t deg_lo, std::int64_t deg_hi,
                          F&& f) {
  Divisor d = Divisor::zero(n);
  auto rec = [&](auto&& self, std::size_t i, std::int64_t partial) -> void {
    if (i == n) {
      if (partial >= deg_lo && partial <= deg_hi) f(d);
      return;
    }
    const auto rest = static_cast<std::int64_t>(n - i - 1);
    for (std::int64_t c = lo; c <= hi; ++c) {
      const std::int64_t s = partial + c;
      if (s + rest * hi < deg_lo || s + rest * lo > deg_hi) continue;
      d[i] = c;
      self(self, i + 1, s);
    }
  };
  rec(rec, 0, 0);
}

inline void note_failure(SuiteReport& r, std::string what) {
  ++r.failures;
  if (r.examples.size() < 5) r.examples.push_back(std::move(what));
}

}  // namespace detail

/// r(D) - r(K - D) = deg D - (g - 1) on every corpus divisor with entries in [-3, 4] and degree in
/// [-1, 2g - 1]. r(D) comes from the dispatching geometric engine applied to a seeded random
/// equivalent divisor; r(K - D) from the brute-force oracle.
inline SuiteReport riemann_roch_suite(std::uint64_t seed) {
  SuiteReport r;
  r.name = "rr";
  std::mt19937_64 gen(seed);
  for (const auto& [name, g] : corpus()) {
    RankContext ctx(g);
    const auto genus = ctx.genus();
    const std::size_t n1 = g.vertex_count();
    detail::for_each_box_divisor(n1, -3, 4, -1, 2 * genus - 1, [&](const Divisor& d) {
      Divisor w = Divisor::zero(n1);
      for (std::size_t i = 0; i < n1; ++i) w[i] = static_cast<std::int64_t>((gen() >> 32) % 3) - 1;
      const auto lhs = rank(ctx, d + apply_laplacian(g, w)).rank - rank_bruteforce(ctx, ctx.canonical() - d).rank;
      ++r.checked;
      if (lhs != d.degree() - (genus - 1)) detail::note_failure(r, name + " D=" + join(d));
    });
  }
  return r;
}

/// rank_geometric == rank_bruteforce for entries in [-2, 3] and degree in [0, g - 1]; witnesses are
/// also checked (lattice membership and the attained deg+).
inline SuiteReport oracle_suite() {
  SuiteReport r;
  r.name = "oracle";
  for (const auto& [name, g] : corpus()) {
    RankContext ctx(g);
    if (ctx.genus() == 0) continue;
    detail::for_each_box_divisor(g.vertex_count(), -2, 3, 0, ctx.genus() - 1, [&](const Divisor& d) {
      auto geo = rank_geometric(ctx, d);
      auto bf = rank_bruteforce(ctx, d);
      ++r.checked;
      bool ok = geo.rank == bf.rank && geo.witness;
      if (ok) {
        const auto& w = *geo.witness;
        ok = ctx.lattice().contains(w.q) &&
             (d - orientation_divisor(g, w.pi) + w.q).degree_plus() == geo.rank + 1 && w.degplus == geo.rank + 1;
      }
      if (!ok)
        detail::note_failure(r, name + " D=" + join(d) + " geometric=" + std::to_string(geo.rank) +
                                    " bruteforce=" + std::to_string(bf.rank));
    });
  }
  return r;
}

/// Tiling at t in {Cov/4, Cov/2, 3Cov/4}, `samples` seeded points per graph.
inline SuiteReport duality_suite(std::uint64_t seed, std::size_t samples = 1000) {
  SuiteReport r;
  r.name = "duality";
  for (const auto& [name, g] : corpus()) {
    CritGeometry geom(g);
    const auto dist = tiling_distances(geom, samples, seed);
    const auto& cov = geom.covering_radius();
    for (int k = 1; k <= 3; ++k) {
      const Rational t = cov * k / 4;
      auto rep = classify_tiling(dist, t, cov);
      r.checked += rep.samples;
      r.boundary += rep.boundary;
      for (std::size_t i = 0; i < rep.violations; ++i)
        detail::note_failure(r, name + " t=" + to_string(t));
    }
  }
  return r;
}

}  // namespace divrank

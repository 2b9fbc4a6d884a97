#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace divrank;

namespace {

Divisor random_divisor(std::size_t n, std::mt19937_64& gen, std::int64_t lo, std::int64_t hi) {
  Divisor d = Divisor::zero(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = lo + static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
  return d;
}

/// Random divisor whose degree lies in [deg_lo, deg_hi].
Divisor random_in_degree(std::size_t n, std::mt19937_64& gen, std::int64_t deg_lo, std::int64_t deg_hi) {
  for (;;) {
    auto d = random_divisor(n, gen, -2, 3);
    if (d.degree() >= deg_lo && d.degree() <= deg_hi) return d;
  }
}

}  // namespace

TEST(Orientations, EnumerateAll) {
  auto pts = enumerate_orientation_points(complete_graph(3));
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_EQ(pts.front().nu, (Divisor{-1, 0, 1}));
  EXPECT_EQ(pts.back().nu, (Divisor{1, 0, -1}));
  auto b = enumerate_orientation_points(banana_graph(3));
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].nu, (Divisor{-1, 2}));
  EXPECT_EQ(b[1].nu, (Divisor{2, -1}));
  for (const auto& p : b) EXPECT_EQ(p.nu.degree(), 1);
}

TEST(Orientations, DistinctKeepsFirstPermutation) {
  for (const auto& [name, g] : corpus()) {
    auto all = enumerate_orientation_points(g);
    auto distinct = distinct_orientation_points(g);
    std::set<Divisor> seen;
    std::size_t j = 0;
    for (const auto& p : all)
      if (seen.insert(p.nu).second) {
        ASSERT_LT(j, distinct.size());
        EXPECT_EQ(distinct[j].permutation, p.permutation) << name;
        ++j;
      }
    EXPECT_EQ(j, distinct.size()) << name;
  }
}

TEST(Bruteforce, Examples) {
  RankContext tri(complete_graph(3));
  EXPECT_EQ(rank_bruteforce(tri, Divisor{0, 0, 0}).rank, 0);
  EXPECT_EQ(rank_bruteforce(tri, Divisor{-1, 0, 0}).rank, -1);
  RankContext b3(banana_graph(3));
  EXPECT_EQ(rank_bruteforce(b3, Divisor{1, 0}).rank, 0);
  EXPECT_EQ(rank_bruteforce(tri, Divisor{0, 0, 0}).method, Method::bruteforce);
}

TEST(Geometric, Examples) {
  RankContext tri(complete_graph(3));
  auto r = rank_geometric(tri, Divisor{0, 0, 0});
  EXPECT_EQ(r.rank, 0);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->degplus, 1);
  EXPECT_EQ(r.method, Method::geometric);
  RankContext b3(banana_graph(3));
  EXPECT_EQ(rank_geometric(b3, Divisor{1, 0}).rank, 0);
  EXPECT_EQ(rank_geometric(b3, Divisor{0, 0}).rank, 0);
  EXPECT_THROW(rank_geometric(tri, Divisor{1, 0, 0}), Error);
  EXPECT_THROW(rank_geometric(tri, Divisor{-1, 0, 0}), Error);
  try {
    rank_geometric(tri, Divisor{2, 0, 0});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegreeOutOfRange);
  }
}

TEST(Dispatch, Examples) {
  RankContext tri(complete_graph(3));
  auto high = rank(tri, Divisor{3, 0, 0});
  EXPECT_EQ(high.rank, 2);
  EXPECT_EQ(high.method, Method::dispatch);
  RankContext k4(complete_graph(4));
  EXPECT_EQ(rank(k4, Divisor{1, 1, 1, 1}).rank, 2);
  EXPECT_EQ(rank(k4, Divisor::zero(4)).rank, 0);
  EXPECT_EQ(rank(tri, Divisor{-5, 0, 0}).rank, -1);
  EXPECT_EQ(rank(tri, Divisor{-1, 0, 0}).rank, -1);
  EXPECT_THROW(rank(tri, Divisor{0, 0}), Error);
}

// Against the definition-based oracle (independent effectivity test by lattice membership).
TEST(Geometric, MatchesDefinitionOracle) {
  std::mt19937_64 gen(31);
  for (const auto& [name, g] : corpus()) {
    RankContext ctx(g);
    if (ctx.genus() == 0) continue;
    const int trials = g.vertex_count() >= 5 ? 10 : 25;
    for (int k = 0; k < trials; ++k) {
      auto d = random_in_degree(g.vertex_count(), gen, 0, ctx.genus() - 1);
      EXPECT_EQ(rank_geometric(ctx, d).rank, oracle::rank(g, d)) << name << " D=" << join(d);
    }
  }
}

TEST(Dispatch, RiemannRochWithDefinitionOracle) {
  std::mt19937_64 gen(37);
  for (const auto& [name, g] : corpus()) {
    RankContext ctx(g);
    const auto gg = ctx.genus();
    for (int k = 0; k < 15; ++k) {
      auto d = random_in_degree(g.vertex_count(), gen, -1, 2 * gg - 1);
      EXPECT_EQ(rank(ctx, d).rank - oracle::rank(g, ctx.canonical() - d), d.degree() - (gg - 1))
          << name << " D=" << join(d);
    }
  }
}

TEST(Properties, InvarianceEquivarianceMonotonicity) {
  std::mt19937_64 gen(41);
  for (const auto& [name, g] : corpus()) {
    RankContext ctx(g);
    const auto n = g.vertex_count();
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), gen);
    RankContext relabelled(relabel(g, sigma));
    for (int k = 0; k < 20; ++k) {
      auto d = random_divisor(n, gen, -2, 3);
      const auto r = rank(ctx, d).rank;
      auto w = random_divisor(n, gen, -2, 2);
      EXPECT_EQ(rank(ctx, d + apply_laplacian(g, w)).rank, r) << name;
      EXPECT_EQ(rank(relabelled, relabel(d, sigma)).rank, r) << name;
      for (std::size_t v = 0; v < n; ++v) {
        auto up = rank(ctx, d + Divisor::unit(n, v)).rank;
        EXPECT_TRUE(up == r || up == r + 1) << name;
      }
    }
  }
}

TEST(Witness, ValidOnEveryGeometricResult) {
  std::mt19937_64 gen(43);
  for (const auto& [name, g] : corpus()) {
    RankContext ctx(g);
    if (ctx.genus() == 0) continue;
    for (int k = 0; k < 30; ++k) {
      auto d = random_in_degree(g.vertex_count(), gen, 0, ctx.genus() - 1);
      auto r = rank_geometric(ctx, d);
      ASSERT_TRUE(r.witness);
      const auto& w = *r.witness;
      EXPECT_TRUE(oracle::in_lattice(g, w.q)) << name;
      EXPECT_EQ((d - oracle::nu(g, w.pi) + w.q).degree_plus(), r.rank + 1) << name;
      EXPECT_EQ(w.degplus, r.rank + 1) << name;
    }
  }
}

TEST(Decide, Examples) {
  RankContext tri(complete_graph(3));
  EXPECT_TRUE(decide_rank_at_most(tri, Divisor{0, 0, 0}, 0));
  EXPECT_FALSE(decide_rank_at_most(tri, Divisor{0, 0, 0}, -1));
  RankContext b3(banana_graph(3));
  EXPECT_TRUE(decide_rank_at_most(b3, Divisor{1, 0}, 1));
  EXPECT_THROW(decide_rank_at_most(tri, Divisor{3, 0, 0}, 0), Error);
}

TEST(Decide, ConsistentWithRankForEveryThreshold) {
  std::mt19937_64 gen(47);
  for (const auto& [name, g] : corpus()) {
    RankContext ctx(g);
    if (ctx.genus() == 0) continue;
    for (int k = 0; k < 15; ++k) {
      auto d = random_in_degree(g.vertex_count(), gen, 0, ctx.genus() - 1);
      const auto r = rank_geometric(ctx, d).rank;
      for (std::int64_t r0 = -1; r0 <= ctx.genus() - 1; ++r0)
        EXPECT_EQ(decide_rank_at_most(ctx, d, r0), r <= r0) << name << " D=" << join(d) << " r0=" << r0;
      EXPECT_EQ(rank_by_binary_search(ctx, d), r) << name;
    }
  }
}

TEST(Sweep, ParallelOutputIsIdentical) {
  std::mt19937_64 gen(53);
  for (const auto& [name, g] : corpus()) {
    RankContext ctx(g);
    if (ctx.genus() == 0) continue;
    for (int k = 0; k < 10; ++k) {
      auto d = random_in_degree(g.vertex_count(), gen, 0, ctx.genus() - 1);
      auto one = rank_geometric(ctx, d);
      for (unsigned p : {2u, 3u, 4u, 7u}) {
        auto many = rank_geometric(ctx, d, SweepOptions{p, {}});
        EXPECT_EQ(many.rank, one.rank) << name;
        EXPECT_EQ(many.witness, one.witness) << name << " parallel=" << p;
      }
    }
  }
}

TEST(Sweep, TraceVisitsEveryDistinctNu) {
  RankContext ctx(corpus().back().graph);
  const Divisor d{1, 0, 1, 0};
  std::vector<TraceEntry> seen;
  SweepOptions opts;
  opts.trace = [&](const TraceEntry& e) { seen.push_back(e); };
  auto r = rank_geometric(ctx, d, opts);
  ASSERT_EQ(seen.size(), ctx.orientations().size());
  std::int64_t best = INT64_MAX;
  for (const auto& e : seen) {
    EXPECT_EQ(e.solution.value, coset_min_degplus(ctx.lattice(), d - e.nu).value);
    best = std::min(best, e.solution.value);
  }
  EXPECT_EQ(best, r.rank + 1);
  EXPECT_EQ(r.witness, rank_geometric(ctx, d).witness);
}

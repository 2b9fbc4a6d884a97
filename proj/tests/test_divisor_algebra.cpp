#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace divrank;

namespace {

Multigraph triangle() { return complete_graph(3); }

template <class F>
void for_each_box(std::size_t n, std::int64_t lo, std::int64_t hi, F&& f) {
  Divisor d = Divisor::zero(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      f(d);
      return;
    }
    for (std::int64_t c = lo; c <= hi; ++c) {
      d[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
}

Divisor random_firing(std::size_t n, std::mt19937_64& gen, int span) {
  Divisor w = Divisor::zero(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<std::int64_t>(gen() % (2 * span + 1)) - span;
  return w;
}

}  // namespace

TEST(DivisorType, DegreeAndDegPlus) {
  Divisor d{2, -3, 1, 0};
  EXPECT_EQ(d.degree(), 0);
  EXPECT_EQ(d.degree_plus(), 3);
  EXPECT_FALSE(d.is_effective());
  EXPECT_TRUE((Divisor{0, 1}).is_effective());
  EXPECT_GE(d.degree_plus(), d.degree());
}

TEST(DivisorFormat, ParseValuesAndFile) {
  EXPECT_EQ(parse_divisor_values("1 -2 3"), (Divisor{1, -2, 3}));
  EXPECT_EQ(parse_divisor_values("1,-2,3"), (Divisor{1, -2, 3}));
  EXPECT_EQ(parse_divisor_file("# c\ndiv 0 1 -1\n"), (Divisor{0, 1, -1}));
  EXPECT_EQ(parse_divisor_file(format_divisor_file(Divisor{4, -4})), (Divisor{4, -4}));
  EXPECT_THROW(parse_divisor_values("1 a"), Error);
  try {
    parse_divisor_file("# header\n\ndiv 1 z\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Equivalence, Examples) {
  auto g = triangle();
  auto cert = linearly_equivalent(g, Divisor{2, -1, -1}, Divisor{0, 0, 0});
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->firing_vector, (Divisor{1, 0, 0}));
  EXPECT_FALSE(linearly_equivalent(g, Divisor{1, -1, 0}, Divisor{0, 0, 0}));
  auto same = linearly_equivalent(g, Divisor{5, -2, 0}, Divisor{5, -2, 0});
  ASSERT_TRUE(same);
  EXPECT_EQ(same->firing_vector, (Divisor{0, 0, 0}));
  EXPECT_THROW(linearly_equivalent(g, Divisor{0, 0}, Divisor{0, 0, 0}), Error);
}

TEST(Equivalence, CertificatesHoldAndMatchOracle) {
  std::mt19937_64 gen(11);
  for (const auto& [name, g] : corpus()) {
    const auto n = g.vertex_count();
    for (int k = 0; k < 50; ++k) {
      auto a = random_firing(n, gen, 3);
      auto b = a + apply_laplacian(g, random_firing(n, gen, 2));
      if (k % 2) b[0] += 1, b[n - 1] -= 1;  // usually breaks equivalence
      auto cert = linearly_equivalent(g, a, b);
      EXPECT_EQ(cert.has_value(), oracle::in_lattice(g, a - b)) << name;
      if (cert) {
        EXPECT_EQ(a - b, apply_laplacian(g, cert->firing_vector)) << name;
      }
    }
  }
}

TEST(Reduce, Examples) {
  EXPECT_EQ(reduced_divisor(triangle(), Divisor{0, 0, 0}, 0), (Divisor{0, 0, 0}));
  EXPECT_EQ(reduced_divisor(triangle(), Divisor{-2, 1, 1}, 0), (Divisor{0, 0, 0}));
  EXPECT_EQ(reduced_divisor(banana_graph(3), Divisor{4, -3}, 1), (Divisor{1, 0}));
}

TEST(Reduce, PropertiesAgainstOracle) {
  std::mt19937_64 gen(7);
  for (const auto& [name, g] : corpus()) {
    const auto n = g.vertex_count();
    for (std::size_t base = 0; base < n; ++base) {
      for (int k = 0; k < 40; ++k) {
        auto d = random_firing(n, gen, 6);
        auto red = reduce_with_burn_order(g, d, base);
        EXPECT_TRUE(oracle::is_reduced_form_of(g, d, red.reduced, base)) << name << " d=" << join(d);
        EXPECT_EQ(red.reduced, d - apply_laplacian(g, red.firing)) << name;
        EXPECT_EQ(reduced_divisor(g, red.reduced, base), red.reduced) << name;  // idempotent
        // an equivalent divisor reduces to the same thing
        auto e = d + apply_laplacian(g, random_firing(n, gen, 3));
        EXPECT_EQ(reduced_divisor(g, e, base), red.reduced) << name;
      }
    }
  }
}

TEST(Reduce, LargeChipCounts) {
  auto g = corpus().back().graph;
  Divisor d{1000000, -999999, 5, -6};
  auto red = reduce_with_burn_order(g, d, 0);
  EXPECT_TRUE(oracle::is_reduced_form_of(g, d, red.reduced, 0));
}

TEST(Effective, Examples) {
  EXPECT_FALSE(is_effective_class(triangle(), Divisor{1, -1, 0}).effective);
  EXPECT_TRUE(is_effective_class(triangle(), Divisor{2, -1, -1}).effective);
  EXPECT_FALSE(is_effective_class(banana_graph(3), Divisor{1, -1}).effective);
}

TEST(Effective, MatchesOracleOnBox) {
  for (const auto& [name, g] : corpus()) {
    if (g.vertex_count() > 4) continue;
    const auto inv = oracle::reduced_inverse(g);
    for_each_box(g.vertex_count(), -3, 3, [&](const Divisor& d) {
      auto res = is_effective_class(g, d);
      ASSERT_EQ(res.effective, oracle::effective_class(inv, d)) << name << " d=" << join(d);
      ASSERT_TRUE(verify_certificate(g, d, res.certificate)) << name << " d=" << join(d);
      ASSERT_EQ(std::holds_alternative<PositiveCertificate>(res.certificate), res.effective);
    });
  }
}

TEST(Effective, InvariantUnderLaplacianRows) {
  std::mt19937_64 gen(17);
  for (const auto& [name, g] : corpus()) {
    auto q = laplacian(g);
    const auto n = g.vertex_count();
    for (int k = 0; k < 40; ++k) {
      auto d = random_firing(n, gen, 3);
      const bool eff = is_effective_class(g, d).effective;
      for (std::size_t r = 0; r < n; ++r) {
        Divisor row = Divisor::zero(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = q(r, j);
        EXPECT_EQ(is_effective_class(g, d + row).effective, eff) << name;
      }
    }
  }
}

TEST(Certificates, VerifierExamples) {
  auto g = triangle();
  EXPECT_TRUE(verify_certificate(g, Divisor{2, -1, -1}, PositiveCertificate{Divisor{2, -1, -1}}));
  EXPECT_FALSE(verify_certificate(g, Divisor{0, 0, 0}, PositiveCertificate{Divisor{1, -1, 0}}));
  // D - q effective but q is not a lattice point
  EXPECT_FALSE(verify_certificate(g, Divisor{1, 0, 0}, PositiveCertificate{Divisor{1, -1, 0}}));
}

TEST(Certificates, NegativeFromBanana) {
  auto g = banana_graph(3);
  const Divisor d{1, -1};
  auto res = is_effective_class(g, d);
  ASSERT_FALSE(res.effective);
  const auto& neg = std::get<NegativeCertificate>(res.certificate);
  EXPECT_TRUE(verify_certificate(g, d, neg));
  // and the one the rank engine emits for the same divisor
  auto r = rank(RankContext(g), d, RankMethod::geometric);
  EXPECT_EQ(r.rank, -1);
  auto from_rank = negative_certificate(r);
  ASSERT_TRUE(from_rank);
  EXPECT_TRUE(verify_certificate(g, d, *from_rank));
  // nu for (0, 1) is (-1, 2), so D + 0 <= nu fails; q = (1, -1) is not a lattice point
  EXPECT_FALSE(verify_certificate(g, d, NegativeCertificate{{0, 1}, Divisor{0, 0}}));
  EXPECT_FALSE(verify_certificate(g, d, NegativeCertificate{{1, 0}, Divisor{1, -1}}));
}

TEST(Certificates, TextRoundTrip) {
  EffectivityCertificate a = PositiveCertificate{Divisor{2, -1, -1}};
  EffectivityCertificate b = NegativeCertificate{{2, 0, 1}, Divisor{0, 3, -3}};
  EXPECT_EQ(format_certificate(a), "cert positive q=2,-1,-1");
  EXPECT_EQ(format_certificate(b), "cert negative pi=2,0,1 q=0,3,-3");
  EXPECT_EQ(format_certificate(parse_certificate(format_certificate(a))), format_certificate(a));
  EXPECT_EQ(format_certificate(parse_certificate(format_certificate(b))), format_certificate(b));
  EXPECT_THROW(parse_certificate("cert maybe q=1"), Error);
}

TEST(Certificates, RankEngineRoundTrip) {
  for (const auto& [name, g] : corpus()) {
    RankContext ctx(g);
    if (ctx.genus() == 0) continue;
    for_each_box(g.vertex_count(), -2, 2, [&](const Divisor& d) {
      if (d.degree() < 0 || d.degree() > ctx.genus() - 1) return;
      auto r = rank_geometric(ctx, d);
      if (auto cert = negative_certificate(r)) {
        ASSERT_TRUE(verify_certificate(g, d, *cert)) << name;
      }
    });
  }
}

TEST(Orientation, Examples) {
  auto g = triangle();
  EXPECT_EQ(orientation_divisor(g, {0, 1, 2}), (Divisor{-1, 0, 1}));
  EXPECT_EQ(orientation_divisor(g, {2, 1, 0}), (Divisor{1, 0, -1}));
  auto b = banana_graph(3);
  EXPECT_EQ(orientation_divisor(b, {0, 1}), (Divisor{-1, 2}));
  EXPECT_EQ(orientation_divisor(b, {1, 0}), (Divisor{2, -1}));
  for (const auto& [name, h] : corpus()) {
    for_each_orientation_point(h, [&](const OrientationPoint& p) {
      EXPECT_EQ(p.nu, oracle::nu(h, p.permutation)) << name;
      EXPECT_EQ(p.nu.degree(), genus(h) - 1) << name;
    });
  }
}

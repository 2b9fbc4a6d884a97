#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include "divrank/divisor_algebra.hpp"
#include "divrank/ilp.hpp"
#include "divrank/lattice.hpp"
#include "divrank/orientation.hpp"
#include "divrank/polytope.hpp"

namespace divrank {

enum class Method { bruteforce, geometric, dispatch };

constexpr std::string_view method_name(Method m) {
  switch (m) {
    case Method::bruteforce: return "bruteforce";
    case Method::geometric: return "geometric";
    case Method::dispatch: return "dispatch";
  }
  return "unknown";
}

struct Witness {
  std::vector<int> pi;
  Divisor q;
  std::int64_t degplus = 0;  // deg+(D - nu_pi + q) = rank + 1

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct RankResult {
  std::int64_t rank = -1;
  std::optional<Witness> witness;
  Method method = Method::dispatch;
};

struct TraceEntry {
  std::vector<int> pi;
  Divisor nu;
  CosetSolution solution;
};

struct SweepOptions {
  unsigned parallel = 1;
  /// When set, the sweep runs sequentially, solves every distinct nu exactly and reports each one.
  std::function<void(const TraceEntry&)> trace;
};

/// Per-graph data shared by every rank query: the lattice, genus, K and the distinct nu_pi.
class RankContext {
 public:
  explicit RankContext(const Multigraph& g)
      : lattice_(g),
        genus_(divrank::genus(g)),
        canonical_(canonical_divisor(g)),
        orientations_(distinct_orientation_points(g)) {}

  [[nodiscard]] const Multigraph& graph() const noexcept { return lattice_.graph(); }
  [[nodiscard]] const LaplacianLattice& lattice() const noexcept { return lattice_; }
  [[nodiscard]] std::int64_t genus() const noexcept { return genus_; }
  [[nodiscard]] const Divisor& canonical() const noexcept { return canonical_; }
  [[nodiscard]] const std::vector<OrientationPoint>& orientations() const noexcept { return orientations_; }

  void check(const Divisor& d) const {
    if (d.size() != graph().vertex_count())
      throw Error(Errc::DimensionMismatch, "divisor has " + std::to_string(d.size()) + " entries, graph has " +
                                               std::to_string(graph().vertex_count()) + " vertices");
  }

 private:
  LaplacianLattice lattice_;
  std::int64_t genus_;
  Divisor canonical_;
  std::vector<OrientationPoint> orientations_;
};

namespace detail {

template <class F>
void for_each_effective(std::size_t parts, std::int64_t total, F&& f) {
  Divisor e = Divisor::zero(parts);
  auto rec = [&](auto&& self, std::size_t i, std::int64_t left) -> bool {
    if (i + 1 == parts) {
      e[i] = left;
      return f(e);
    }
    for (std::int64_t c = 0; c <= left; ++c) {
      e[i] = c;
      if (!self(self, i + 1, left - c)) return false;
    }
    return true;
  };
  rec(rec, 0, total);
}

inline void require_geometric_range(const RankContext& ctx, const Divisor& d) {
  const auto deg = d.degree();
  if (deg < 0 || deg > ctx.genus() - 1)
    throw Error(Errc::DegreeOutOfRange, "degree " + std::to_string(deg) + " outside [0, g-1] with g = " +
                                            std::to_string(ctx.genus()));
}

struct SweepBest {
  std::int64_t value = INT64_MAX;
  std::size_t index = SIZE_MAX;
  CosetSolution solution;
};

/// Scans the given entries in order, keeping the first strict improvement; stops at `floor`.
inline SweepBest sweep_range(const RankContext& ctx, const Divisor& d, const std::vector<std::size_t>& indices,
                             std::int64_t floor) {
  SweepBest best;
  for (auto idx : indices) {
    if (best.value <= floor) break;
    const auto& op = ctx.orientations()[idx];
    auto sol = coset_min_degplus(ctx.lattice(), d - op.nu, best.value);
    if (sol) best = {sol->value, idx, std::move(*sol)};
  }
  return best;
}

}  // namespace detail

/// Largest k such that D - E is equivalent to an effective divisor for every effective E of degree k.
inline RankResult rank_bruteforce(const RankContext& ctx, const Divisor& d) {
  ctx.check(d);
  const auto& g = ctx.graph();
  if (!is_effective_class(g, d).effective) return {-1, std::nullopt, Method::bruteforce};
  for (std::int64_t k = 1;; ++k) {
    bool all = true;
    detail::for_each_effective(d.size(), k, [&](const Divisor& e) {
      all = is_effective_class(g, d - e).effective;
      return all;
    });
    if (!all) return {k - 1, std::nullopt, Method::bruteforce};
  }
}

/// r(D) = min over pi and q in L_G of deg+(D - nu_pi + q) - 1, for 0 <= deg(D) <= g - 1.
inline RankResult rank_geometric(const RankContext& ctx, const Divisor& d, const SweepOptions& opts = {}) {
  ctx.check(d);
  detail::require_geometric_range(ctx, d);
  const auto& ops = ctx.orientations();
  const std::int64_t floor = std::max<std::int64_t>(0, d.degree() - (ctx.genus() - 1));

  detail::SweepBest best;
  if (opts.trace) {
    for (std::size_t i = 0; i < ops.size(); ++i) {
      auto sol = coset_min_degplus(ctx.lattice(), d - ops[i].nu);
      opts.trace(TraceEntry{ops[i].permutation, ops[i].nu, sol});
      if (sol.value < best.value) best = {sol.value, i, std::move(sol)};
    }
  } else {
    // blocks share a first vertex; blocks go round-robin to workers
    const unsigned workers = std::max(1u, opts.parallel);
    std::vector<std::vector<std::size_t>> assigned(workers);
    std::size_t block = 0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (i > 0 && ops[i].permutation[0] != ops[i - 1].permutation[0]) ++block;
      assigned[block % workers].push_back(i);
    }
    std::vector<detail::SweepBest> partial(workers);
    if (workers == 1) {
      partial[0] = detail::sweep_range(ctx, d, assigned[0], floor);
    } else {
      std::vector<std::thread> threads;
      for (unsigned w = 0; w < workers; ++w)
        threads.emplace_back([&, w] { partial[w] = detail::sweep_range(ctx, d, assigned[w], floor); });
      for (auto& t : threads) t.join();
    }
    for (auto& p : partial)
      if (p.value < best.value || (p.value == best.value && p.index < best.index)) best = std::move(p);
  }
  const auto& op = ops[best.index];
  return {best.value - 1, Witness{op.permutation, best.solution.q, best.value}, Method::geometric};
}

enum class RankMethod { geometric, bruteforce };

/// Degree dispatch: below 0, above 2g-2, Riemann-Roch on [g, 2g-2], search on [0, g-1].
inline RankResult rank(const RankContext& ctx, const Divisor& d, RankMethod method = RankMethod::geometric,
                       const SweepOptions& opts = {}) {
  ctx.check(d);
  const auto deg = d.degree();
  const auto g = ctx.genus();
  if (deg < 0) return {-1, std::nullopt, Method::dispatch};
  if (deg > 2 * g - 2) return {deg - g, std::nullopt, Method::dispatch};
  if (deg >= g) {
    auto dual = rank(ctx, ctx.canonical() - d, method, opts);
    return {dual.rank + deg - (g - 1), std::nullopt, Method::dispatch};
  }
  return method == RankMethod::geometric ? rank_geometric(ctx, d, opts) : rank_bruteforce(ctx, d);
}

inline RankResult rank(const Multigraph& g, const Divisor& d, RankMethod method = RankMethod::geometric) {
  return rank(RankContext(g), d, method);
}

/// r(D) <= r0, decided by testing pi0(D) against P_{r1,r2}(c_pi - q*) for every pi, where q* is the
/// coset minimizer for D - nu_pi, r1 = (r0+1)/(n+1) and r2 = (r0+1+g-1-deg D)/(n+1).
inline bool decide_rank_at_most(const RankContext& ctx, const Divisor& d, std::int64_t r0) {
  ctx.check(d);
  detail::require_geometric_range(ctx, d);
  if (r0 < -1) return false;
  const Rational n1(static_cast<long long>(d.size()));
  const Rational r1 = Rational(r0 + 1) / n1;
  const Rational r2 = Rational(r0 + 1 + ctx.genus() - 1 - d.degree()) / n1;
  const auto p = project_h0(to_rational(d));
  for (const auto& op : ctx.orientations()) {
    auto sol = coset_min_degplus(ctx.lattice(), d - op.nu);
    PolytopeMN poly{r1, r2, op.c_pi - to_rational(sol.q)};
    if (polytope_contains(poly, p)) return true;
  }
  return false;
}

/// Binary search over r0 in [-1, deg D] on the decision procedure.
inline std::int64_t rank_by_binary_search(const RankContext& ctx, const Divisor& d) {
  detail::require_geometric_range(ctx, d);
  std::int64_t lo = -1, hi = d.degree();
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (decide_rank_at_most(ctx, d, mid)) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

/// A geometric witness with deg+ = 0 says D is not equivalent to an effective divisor.
inline std::optional<NegativeCertificate> negative_certificate(const RankResult& r) {
  if (!r.witness || r.witness->degplus != 0) return std::nullopt;
  return NegativeCertificate{r.witness->pi, r.witness->q};
}

}  // namespace divrank

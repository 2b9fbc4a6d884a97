#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "divrank/divisor.hpp"
#include "divrank/divisor_algebra.hpp"
#include "divrank/lattice.hpp"

namespace divrank {

struct CosetSolution {
  std::int64_t value = 0;        // min deg+(w + q)
  std::vector<std::int64_t> x;   // q = B^T x, lexicographically least among optima
  Divisor q;
};

/// Sound lower bound for deg+ on the coset w + L_G: degree is lattice invariant.
inline std::int64_t degplus_lower_bound(const Divisor& w) { return std::max<std::int64_t>(0, w.degree()); }

/// A coset instance with the coefficient box that provably holds every optimum.
struct CosetProblem {
  std::vector<Divisor> basis;     // n rows of B
  Divisor offset;                 // w
  std::vector<std::int64_t> lo;   // per-coefficient box for x
  std::vector<std::int64_t> hi;
};

namespace detail {

/// Shared preprocessing. The offset is replaced by its reduced representative w' = w + B^T x0,
/// which is nonnegative off vertex 0 and keeps both deg+ and l1 small. Any q' with
/// deg+(w' + q') <= U has l1(q') <= 2U - deg + l1(w') =: R, and for zero-sum q'
/// |x'_i| <= spread_i * R (spread_i = half the range of row i of Q~^{-1} padded with 0).
struct CosetSetup {
  Divisor reduced;
  std::vector<std::int64_t> x0;
  std::int64_t degree = 0;
  std::int64_t l1 = 0;
  std::int64_t start = 0;  // deg+(w')

  CosetSetup(const LaplacianLattice& lattice, const Divisor& w) {
    auto r = reduce_with_burn_order(lattice.graph(), w, 0);
    reduced = std::move(r.reduced);
    x0 = *lattice.coefficients(reduced - w);
    degree = w.degree();
    for (auto c : reduced.chips()) l1 += c < 0 ? -c : c;
    start = reduced.degree_plus();
  }

  [[nodiscard]] std::int64_t radius(const LaplacianLattice& lattice, std::size_t i, std::int64_t limit) const {
    const std::int64_t r = 2 * limit - degree + l1;
    if (r < 0) return -1;
    return lattice.row_spread_numerator(i) * r / lattice.row_spread_denominator();
  }
};

class CosetSearch {
 public:
  CosetSearch(const LaplacianLattice& lattice, const CosetSetup& setup, std::int64_t limit)
      : lattice_(lattice), setup_(setup), n_(lattice.rank()), dim_(lattice.dimension()), limit_(limit) {
    const auto& q = lattice.laplacian_matrix();
    rows_.assign(n_, std::vector<std::int64_t>(dim_));
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t j = 0; j < dim_; ++j) rows_[k][j] = q(k + 1, j);
    // coordinate j becomes final once the last variable touching it is fixed
    finals_.assign(n_, {});
    for (std::size_t j = 0; j < dim_; ++j) {
      std::size_t last = 0;
      for (std::size_t k = 0; k < n_; ++k)
        if (rows_[k][j] != 0) last = k;
      finals_[last].push_back(j);
    }
    // box radius per variable for every limit in [0, limit]
    radius_.assign(static_cast<std::size_t>(std::max<std::int64_t>(limit, 0)) + 1, std::vector<std::int64_t>(n_));
    for (std::int64_t u = 0; u <= limit; ++u)
      for (std::size_t i = 0; i < n_; ++i) radius_[u][i] = setup.radius(lattice, i, u);
    x_.assign(n_, 0);
  }

  std::optional<std::pair<std::int64_t, std::vector<std::int64_t>>> run() {
    if (limit_ < 0 || limit_ < std::max<std::int64_t>(0, setup_.degree)) return std::nullopt;
    std::vector<std::int64_t> v = setup_.reduced.chips();
    descend(0, v, 0, 0);
    if (!best_) return std::nullopt;
    return std::pair{best_value_, *best_};
  }

 private:
  static std::int64_t plus(std::int64_t a) { return a > 0 ? a : 0; }

  std::int64_t bound(std::size_t k) const { return radius_[static_cast<std::size_t>(limit_)][k]; }

  std::int64_t lower_bound(std::int64_t final_pos, std::int64_t final_sum) const {
    return final_pos + plus(setup_.degree - final_sum);
  }

  void accept(std::int64_t value) {
    best_value_ = value;
    best_ = x_;
    limit_ = value - 1;
  }

  // deg+(v + t * row) is convex in t; return the least minimizer on [lo, hi].
  std::pair<std::int64_t, std::int64_t> line_min(const std::vector<std::int64_t>& v, const std::vector<std::int64_t>& row,
                                                 std::int64_t lo, std::int64_t hi) const {
    auto f = [&](std::int64_t t) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < dim_; ++j) s += plus(v[j] + t * row[j]);
      return s;
    };
    while (lo < hi) {
      std::int64_t mid = lo + (hi - lo) / 2;
      if (f(mid + 1) - f(mid) >= 0) hi = mid;
      else lo = mid + 1;
    }
    return {lo, f(lo)};
  }

  void descend(std::size_t k, std::vector<std::int64_t>& v, std::int64_t final_pos, std::int64_t final_sum) {
    if (limit_ < 0) return;
    const auto& row = rows_[k];
    if (k + 1 == n_) {
      const std::int64_t r = bound(k);
      if (r < 0) return;
      auto [t, value] = line_min(v, row, -r, r);
      if (value <= limit_) {
        x_[k] = t;
        accept(value);
        x_[k] = 0;
      }
      return;
    }
    std::int64_t r = bound(k);
    if (r < 0) return;
    for (std::size_t j = 0; j < dim_; ++j) v[j] -= r * row[j];
    std::int64_t t = -r;
    for (; limit_ >= 0 && t <= bound(k); ++t) {
      std::int64_t pos = final_pos, sum = final_sum;
      for (auto j : finals_[k]) {
        pos += plus(v[j]);
        sum += v[j];
      }
      if (lower_bound(pos, sum) <= limit_) {
        x_[k] = t;
        descend(k + 1, v, pos, sum);
        x_[k] = 0;
      }
      for (std::size_t j = 0; j < dim_; ++j) v[j] += row[j];
    }
    for (std::size_t j = 0; j < dim_; ++j) v[j] -= t * row[j];
  }

  const LaplacianLattice& lattice_;
  const CosetSetup& setup_;
  std::size_t n_;
  std::size_t dim_;
  std::int64_t limit_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<std::vector<std::size_t>> finals_;
  std::vector<std::vector<std::int64_t>> radius_;
  std::vector<std::int64_t> x_;
  std::optional<std::vector<std::int64_t>> best_;
  std::int64_t best_value_ = 0;
};

inline CosetSolution finish(const LaplacianLattice& lattice, const CosetSetup& setup, std::int64_t value,
                            std::vector<std::int64_t> x) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += setup.x0[i];
  CosetSolution s{value, std::move(x), {}};
  s.q = lattice.point(s.x);
  return s;
}

}  // namespace detail

/// Exact min over q in L_G of deg+(w + q) if it is below `cutoff`; otherwise empty.
inline std::optional<CosetSolution> coset_min_degplus(const LaplacianLattice& lattice, const Divisor& w,
                                                      std::int64_t cutoff) {
  if (w.size() != lattice.dimension()) throw Error(Errc::DimensionMismatch, "offset has wrong length");
  detail::CosetSetup setup(lattice, w);
  const std::int64_t limit = std::min(setup.start, cutoff - 1);
  detail::CosetSearch search(lattice, setup, limit);
  auto found = search.run();
  if (!found) return std::nullopt;
  return detail::finish(lattice, setup, found->first, std::move(found->second));
}

/// Exact min over q in L_G of deg+(w + q), lexicographically least coefficient vector among optima.
inline CosetSolution coset_min_degplus(const LaplacianLattice& lattice, const Divisor& w) {
  auto s = coset_min_degplus(lattice, w, INT64_MAX);
  return std::move(*s);  // the reduced representative itself is always inside the box
}

/// The box the minimizer searches before any improvement shrinks it.
inline CosetProblem make_coset_problem(const LaplacianLattice& lattice, const Divisor& w) {
  detail::CosetSetup setup(lattice, w);
  CosetProblem p;
  for (std::size_t k = 0; k < lattice.rank(); ++k) p.basis.push_back(lattice.basis_vector(k));
  p.offset = w;
  for (std::size_t i = 0; i < lattice.rank(); ++i) {
    auto r = setup.radius(lattice, i, setup.start);
    p.lo.push_back(setup.x0[i] - r);
    p.hi.push_back(setup.x0[i] + r);
  }
  return p;
}

}  // namespace divrank

#pragma once

#include <algorithm>
#include <cstdlib>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "divrank/corpus.hpp"
#include "divrank/divisor_algebra.hpp"
#include "divrank/exact.hpp"
#include "divrank/lattice.hpp"
#include "divrank/orientation.hpp"
#include "divrank/polytope.hpp"

namespace divrank {

namespace detail {

/// Uniform grid value k / 1024 with k in [0, 1024), from the top bits so it is portable.
inline Rational grid_draw(std::mt19937_64& gen) {
  return Rational(static_cast<long long>(gen() >> 54), 1024);
}

}  // namespace detail

/// h(y) = min over q in L_G of d(y, q) for the standard simplex, d(y, q) = max_i (y_i - q_i).
/// This is also the least t with y in some reflected simplex(q, t).
///
/// The minimum equals some y_j - k with k integer. For a candidate t, a lattice point with
/// q >= y - t 1 exists iff -ceil(y - t 1) is equivalent to an effective divisor, which Dhar's
/// algorithm decides. Feasibility is monotone in t, so each residue class y_j - Z is binary searched.
inline Rational lattice_distance(const LaplacianLattice& lattice, const RationalPoint& y) {
  require_h0(y, "point");
  if (y.size() != lattice.dimension()) throw Error(Errc::DimensionMismatch, "point has wrong length");
  const std::size_t n1 = y.size();
  // shift y by a nearby lattice point to keep the search range small
  RationalPoint yr = y - to_rational(lattice.point(lattice.nearest_coefficients(y)));
  Rational hi = *std::max_element(yr.begin(), yr.end());  // q = 0 is feasible at t = max(y)
  const auto& g = lattice.graph();

  Rational best = hi;
  Divisor e = Divisor::zero(n1);
  for (std::size_t j = 0; j < n1; ++j) {
    // t = yr_j - k ; E_i = -ceil(yr_i - yr_j + k) = -(ceil(yr_i - yr_j) + k)
    std::vector<std::int64_t> c(n1);
    for (std::size_t i = 0; i < n1; ++i) c[i] = to_int64(ceil_div(yr[i] - yr[j]));
    auto feasible = [&](std::int64_t k) {
      for (std::size_t i = 0; i < n1; ++i) e[i] = -(c[i] + k);
      return is_effective_class(g, e).effective;
    };
    // h >= mean(y) = 0, so k <= yr_j; k_lo gives t >= hi which is feasible
    std::int64_t k_lo = to_int64(floor_div(yr[j] - hi));
    std::int64_t k_hi = to_int64(floor_div(yr[j]));
    if (k_hi < k_lo) continue;
    while (k_lo < k_hi) {
      std::int64_t mid = k_lo + (k_hi - k_lo + 1) / 2;
      if (feasible(mid)) k_lo = mid;
      else k_hi = mid - 1;
    }
    Rational t = yr[j] - k_lo;
    if (t < best) best = t;
  }
  return best;
}

/// A class of Crit modulo L_G. Crit is the projection of Ext = {-nu_pi + q}, so its
/// points are -c_pi, the local maxima of the lattice distance.
struct CritClass {
  std::vector<int> permutation;  // first permutation reaching this class
  Divisor nu;
  RationalPoint c;  // projection of -nu onto H0
};

/// Crit points, their classes modulo L_G and the covering radius of one graph.
class CritGeometry {
 public:
  explicit CritGeometry(const Multigraph& g) : lattice_(g), points_(distinct_orientation_points(g)) {
    std::set<std::vector<std::int64_t>> seen;
    for (const auto& p : points_)
      if (seen.insert(lattice_.class_key(p.nu)).second)
        classes_.push_back({p.permutation, p.nu, Rational(-1) * p.c_pi});
    covering_radius_ = 0;
    for (const auto& c : classes_) covering_radius_ = std::max(covering_radius_, lattice_distance(lattice_, c.c));
  }

  [[nodiscard]] const LaplacianLattice& lattice() const noexcept { return lattice_; }
  [[nodiscard]] const Multigraph& graph() const noexcept { return lattice_.graph(); }
  /// Every distinct c_pi, one per distinct nu_pi.
  [[nodiscard]] const std::vector<OrientationPoint>& points() const noexcept { return points_; }
  /// Representatives of Crit modulo L_G.
  [[nodiscard]] const std::vector<CritClass>& classes() const noexcept { return classes_; }
  /// max over H0 of the lattice distance, attained on Crit.
  [[nodiscard]] const Rational& covering_radius() const noexcept { return covering_radius_; }

  /// Distance from p to the lattice: p is in the interior of A_t iff this is below t.
  [[nodiscard]] Rational distance_to_lattice(const RationalPoint& p) const { return lattice_distance(lattice_, p); }

  /// Smallest s with p in some simplex(c + q, s), q in L_G: p is in B_s iff this is at most s.
  [[nodiscard]] Rational distance_to_crit(const RationalPoint& p) const {
    std::optional<Rational> best;
    for (const auto& c : classes_) {
      Rational h = lattice_distance(lattice_, c.c - p);
      if (!best || h < *best) best = h;
    }
    return *best;
  }

 private:
  LaplacianLattice lattice_;
  std::vector<OrientationPoint> points_;
  std::vector<CritClass> classes_;
  Rational covering_radius_;
};

/// Crit representatives -c_pi, one per distinct nu_pi, with the first permutation producing each.
inline std::vector<std::pair<std::vector<int>, RationalPoint>> crit_points(const Multigraph& g) {
  std::vector<std::pair<std::vector<int>, RationalPoint>> out;
  for (auto& p : distinct_orientation_points(g)) out.emplace_back(p.permutation, Rational(-1) * p.c_pi);
  return out;
}

inline Rational covering_radius(const Multigraph& g) { return CritGeometry(g).covering_radius(); }

/// Random point of the fundamental parallelepiped sum u_k b_k, u_k on the 1/1024 grid.
inline RationalPoint sample_fundamental_domain(const LaplacianLattice& lattice, std::mt19937_64& gen) {
  RationalPoint p(lattice.dimension(), Rational(0));
  for (std::size_t k = 0; k < lattice.rank(); ++k) {
    Rational u = detail::grid_draw(gen);
    auto b = lattice.basis_vector(k);
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += u * b[j];
  }
  return p;
}

enum class Extremum { maximum, minimum };

/// Sampling check that c is a local maximum (or minimum) of the lattice distance: every sampled
/// point within sup-distance epsilon of c, inside H0, has no larger (no smaller) distance.
inline bool local_extremum_verify(const LaplacianLattice& lattice, const RationalPoint& c, const Rational& epsilon,
                                  std::size_t samples, std::uint64_t seed = 1,
                                  Extremum kind = Extremum::maximum) {
  require_h0(c, "point");
  if (epsilon <= 0) throw Error(Errc::BadArgument, "epsilon must be positive");
  std::mt19937_64 gen(seed);
  const Rational hc = lattice_distance(lattice, c);
  for (std::size_t s = 0; s < samples; ++s) {
    RationalPoint u(c.size());
    for (auto& x : u) x = 2 * detail::grid_draw(gen) - 1;
    u = project_h0(u);
    Rational norm = 0;
    for (const auto& x : u) norm = std::max(norm, Rational(x < 0 ? -x : x));
    if (norm == 0) continue;
    const Rational scale = epsilon * detail::grid_draw(gen) / norm;
    const Rational h = lattice_distance(lattice, c + scale * u);
    if (kind == Extremum::maximum ? h > hc : h < hc) return false;
  }
  return true;
}

inline bool local_max_verify(const Multigraph& g, const RationalPoint& c, const Rational& epsilon,
                             std::size_t samples, std::uint64_t seed = 1) {
  return local_extremum_verify(LaplacianLattice(g), c, epsilon, samples, seed, Extremum::maximum);
}

struct TilingReport {
  Rational t;
  Rational covering_radius;
  std::size_t samples = 0;
  std::size_t interior_a = 0;  // strictly inside some reflected simplex(q, t)
  std::size_t in_b = 0;        // inside some simplex(c, Cov - t)
  std::size_t boundary = 0;    // at distance exactly t from the lattice
  std::size_t violations = 0;  // in both or in neither, boundary excluded
};

/// Distances (to lattice, to Crit) of seeded fundamental-domain samples; independent of t.
inline std::vector<std::pair<Rational, Rational>> tiling_distances(const CritGeometry& geom, std::size_t samples,
                                                                   std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::pair<Rational, Rational>> out;
  out.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    auto p = sample_fundamental_domain(geom.lattice(), gen);
    out.emplace_back(geom.distance_to_lattice(p), geom.distance_to_crit(p));
  }
  return out;
}

inline TilingReport classify_tiling(const std::vector<std::pair<Rational, Rational>>& distances, const Rational& t,
                                    const Rational& cov) {
  if (t < 0 || t > cov) throw Error(Errc::TOutOfRange, "t must lie in [0, " + to_string(cov) + "]");
  TilingReport r{t, cov};
  for (const auto& [ha, hb] : distances) {
    ++r.samples;
    if (ha == t) {
      ++r.boundary;
      continue;
    }
    const bool a = ha < t;
    const bool b = hb <= cov - t;
    r.interior_a += a;
    r.in_b += b;
    r.violations += a == b;
  }
  return r;
}

inline TilingReport duality_tiling_check(const CritGeometry& geom, const Rational& t, std::size_t samples,
                                         std::uint64_t seed) {
  const auto& cov = geom.covering_radius();
  if (t < 0 || t > cov) throw Error(Errc::TOutOfRange, "t must lie in [0, " + to_string(cov) + "]");
  return classify_tiling(tiling_distances(geom, samples, seed), t, cov);
}

inline TilingReport duality_tiling_check(const Multigraph& g, const Rational& t, std::size_t samples,
                                         std::uint64_t seed) {
  return duality_tiling_check(CritGeometry(g), t, samples, seed);
}

/// Linear map of R^{n+1} acting on H0. Stored normalized so that M 1 = 0.
class LinearMapH0 {
 public:
  explicit LinearMapH0(Matrix<Rational> m) : m_(std::move(m)) {
    const std::size_t n1 = m_.rows();
    if (n1 < 2 || m_.cols() != n1) throw Error(Errc::DimensionMismatch, "map must be square of size >= 2");
    const Rational inv_n1(1, static_cast<long long>(n1));
    std::vector<Rational> row_sum(n1, Rational(0));
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j) row_sum[i] += m_(i, j);
    if (std::any_of(row_sum.begin(), row_sum.end(), [](const Rational& s) { return s != 0; }))
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) m_(i, j) -= row_sum[i] * inv_n1;
    for (std::size_t j = 0; j < n1; ++j) {
      Rational col = 0;
      for (std::size_t i = 0; i < n1; ++i) col += m_(i, j);
      if (col != 0) throw Error(Errc::NotInH0, "map does not send H0 into H0");
    }
    // nonsingular on H0 iff M + J/(n+1) is nonsingular; test on the integer matrix (n+1) D (M + J/(n+1))
    BigInt den = 1;
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j) den = lcm(den, boost::multiprecision::denominator(m_(i, j)));
    den_ = den;
    Matrix<BigInt> a(n1, n1);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j)
        a(i, j) = boost::multiprecision::numerator(m_(i, j) * Rational(den) * Rational(static_cast<long long>(n1))) + den;
    BigInt det = bareiss_determinant(std::move(a));
    if (det == 0) throw Error(Errc::SingularMap, "map is singular on H0");
    BigInt scale = 1;
    for (std::size_t i = 0; i < n1; ++i) scale *= den * static_cast<long long>(n1);
    det_h0_ = Rational(det, scale);
  }

  static LinearMapH0 identity(std::size_t n1) { return LinearMapH0(Matrix<Rational>::identity(n1)); }

  /// e_i -> e_sigma(i).
  static LinearMapH0 coordinate_permutation(const std::vector<int>& sigma) {
    Matrix<Rational> m(sigma.size(), sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) m(sigma[i], i) = 1;
    return LinearMapH0(std::move(m));
  }

  static LinearMapH0 scaling(std::size_t n1, const Rational& k) {
    Matrix<Rational> m = Matrix<Rational>::identity(n1);
    for (std::size_t i = 0; i < n1; ++i) m(i, i) = k;
    return LinearMapH0(std::move(m));
  }

  [[nodiscard]] std::size_t dimension() const noexcept { return m_.rows(); }
  [[nodiscard]] const Matrix<Rational>& matrix() const noexcept { return m_; }
  /// Least common denominator of the entries.
  [[nodiscard]] const BigInt& denominator() const noexcept { return den_; }
  /// Determinant of the restriction to H0.
  [[nodiscard]] const Rational& determinant_h0() const noexcept { return det_h0_; }

  [[nodiscard]] RationalPoint apply(const RationalPoint& p) const { return m_ * p; }

  /// Inverse on H0: (M + J/(n+1))^{-1} fixes 1, so subtracting J/(n+1) leaves the H0 inverse.
  [[nodiscard]] LinearMapH0 inverse() const {
    const std::size_t n1 = dimension();
    const Rational inv_n1(1, static_cast<long long>(n1));
    Matrix<Rational> a = m_;
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j) a(i, j) += inv_n1;
    auto inv = divrank::inverse(std::move(a));
    if (!inv) throw Error(Errc::SingularMap, "map is singular on H0");
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j) (*inv)(i, j) -= inv_n1;
    return LinearMapH0(std::move(*inv));
  }

 private:
  Matrix<Rational> m_;
  BigInt den_ = 1;
  Rational det_h0_ = 1;
};

/// Checks whether a map is an automorphism of Crit for one fixed graph; reusable across maps.
class CritAutomorphismVerifier {
 public:
  explicit CritAutomorphismVerifier(const Multigraph& g) : geom_(g), genus_(divrank::genus(g)) {
    for (const auto& c : geom_.classes()) keys_.insert(geom_.lattice().class_key(-c.nu));
  }

  [[nodiscard]] const CritGeometry& geometry() const noexcept { return geom_; }

  /// M maps L_G onto L_G (images of the basis are lattice points and det on H0 is +-1, so the
  /// inverse images are lattice points too) and permutes the classes of Crit modulo L_G.
  bool operator()(const LinearMapH0& m) const {
    const auto& lat = geom_.lattice();
    const std::size_t n1 = lat.dimension();
    if (m.dimension() != n1) throw Error(Errc::DimensionMismatch, "map dimension does not match graph");
    const auto& det = m.determinant_h0();
    if (det != 1 && det != -1) return false;
    const std::int64_t den = to_int64(m.denominator());
    Matrix<std::int64_t> mi(n1, n1);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j)
        mi(i, j) = to_int64(boost::multiprecision::numerator(m.matrix()(i, j) * Rational(m.denominator())));
    auto image = [&](const Divisor& v) {
      std::vector<std::int64_t> out(n1, 0);
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) out[i] += mi(i, j) * v[j];
      return out;
    };
    for (std::size_t k = 0; k < lat.rank(); ++k) {
      auto u = image(lat.basis_vector(k));
      Divisor z = Divisor::zero(n1);
      for (std::size_t i = 0; i < n1; ++i) {
        if (u[i] % den != 0) return false;
        z[i] = u[i] / den;
      }
      if (!lat.contains(z)) return false;
    }
    // c = -nu + (g-1)/(n+1) 1 and M 1 = 0, so M c = -M nu; M c - (g-1)/(n+1) 1 must be an
    // integral point in the class of some -nu'
    const std::int64_t scale = den * static_cast<std::int64_t>(n1);
    std::set<std::vector<std::int64_t>> hit;
    for (const auto& c : geom_.classes()) {
      auto u = image(c.nu);
      Divisor z = Divisor::zero(n1);
      for (std::size_t i = 0; i < n1; ++i) {
        const std::int64_t s = -static_cast<std::int64_t>(n1) * u[i] - den * (genus_ - 1);
        if (s % scale != 0) return false;
        z[i] = s / scale;
      }
      auto key = lat.class_key(z);
      if (!keys_.count(key)) return false;
      hit.insert(std::move(key));
    }
    return hit.size() == keys_.size();
  }

 private:
  CritGeometry geom_;
  std::int64_t genus_;
  std::set<std::vector<std::int64_t>> keys_;
};

inline bool verify_critical_automorphism(const Multigraph& g, const LinearMapH0& m) {
  return CritAutomorphismVerifier(g)(m);
}

/// K_{n+1} map b_i -> b_pi(i) + h sum_{j<i} alpha_ij b_pi(j) on the basis b_0..b_{n-1} (Laplacian
/// rows, b_i = (n+1) e_i - 1), with M 1 = 0. No restriction on h beyond h >= 1.
inline LinearMapH0 complete_graph_basis_map(std::size_t n_plus_1, const std::vector<int>& pi, std::int64_t h,
                                            const Matrix<std::int64_t>& alphas) {
  if (n_plus_1 < 2) throw Error(Errc::TooFewVertices, "complete graph needs at least 2 vertices");
  const std::size_t n = n_plus_1 - 1;
  if (pi.size() != n_plus_1) throw Error(Errc::DimensionMismatch, "permutation has wrong length");
  std::vector<char> seen(n_plus_1, 0);
  for (int v : pi) {
    if (v < 0 || static_cast<std::size_t>(v) >= n_plus_1 || seen[v]) throw Error(Errc::BadArgument, "not a permutation");
    seen[v] = 1;
  }
  if (alphas.rows() != n || alphas.cols() != n) throw Error(Errc::BadAlphaShape, "alphas must be n x n");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (alphas(i, j) != 0) throw Error(Errc::BadAlphaShape, "alphas must be strictly lower triangular");
  if (h < 1) throw Error(Errc::HeightNotDivisor, "height must be positive");

  const auto n1 = static_cast<std::int64_t>(n_plus_1);
  auto b = [&](std::size_t k, std::size_t coord) -> std::int64_t { return (k == coord ? n1 : 0) - 1; };
  // M e_i = M b_i / (n+1) for i < n, and M e_n = -sum_i M b_i / (n+1)
  Matrix<Rational> m(n_plus_1, n_plus_1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < n_plus_1; ++r) {
      std::int64_t v = b(pi[i], r);
      for (std::size_t j = 0; j < i; ++j) v += h * alphas(i, j) * b(pi[j], r);
      m(r, i) = Rational(v, n1);
      m(r, n) -= Rational(v, n1);
    }
  return LinearMapH0(std::move(m));
}

/// Same map, restricted to heights h dividing n.
inline LinearMapH0 complete_graph_automorphism(std::size_t n_plus_1, const std::vector<int>& pi, std::int64_t h,
                                               const Matrix<std::int64_t>& alphas) {
  if (n_plus_1 < 2) throw Error(Errc::TooFewVertices, "complete graph needs at least 2 vertices");
  const auto n = static_cast<std::int64_t>(n_plus_1) - 1;
  if (h < 1 || n % h != 0) throw Error(Errc::HeightNotDivisor, "height " + std::to_string(h) + " does not divide " + std::to_string(n));
  return complete_graph_basis_map(n_plus_1, pi, h, alphas);
}

struct AutomorphismFailure {
  std::vector<int> pi;
  std::int64_t height = 0;
  Matrix<std::int64_t> alphas;
};

struct AutomorphismSweepReport {
  std::size_t maps = 0;
  std::size_t passed = 0;
  std::vector<std::int64_t> heights;
  std::optional<AutomorphismFailure> first_failure;
};

/// Divisors of n in increasing order.
inline std::vector<std::int64_t> divisors_of(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

/// Runs verify_critical_automorphism on every complete_graph_automorphism of K_{n+1} with the given
/// heights, every permutation and every strictly lower triangular alpha with entries in
/// [-alpha_bound, alpha_bound]. With any_height the divisibility precondition is lifted
/// (complete_graph_basis_map), which is how other heights can be explored.
inline AutomorphismSweepReport sweep_complete_graph_automorphisms(std::size_t n_plus_1,
                                                                  const std::vector<std::int64_t>& heights,
                                                                  std::int64_t alpha_bound = 1,
                                                                  bool any_height = false) {
  if (n_plus_1 < 2) throw Error(Errc::TooFewVertices, "complete graph needs at least 2 vertices");
  const std::size_t n = n_plus_1 - 1;
  CritAutomorphismVerifier verify(complete_graph(n_plus_1));
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) cells.emplace_back(i, j);

  AutomorphismSweepReport r;
  r.heights = heights;
  for (auto h : heights) {
    std::vector<int> pi(n_plus_1);
    std::iota(pi.begin(), pi.end(), 0);
    do {
      Matrix<std::int64_t> alphas(n, n);
      for (auto [i, j] : cells) alphas(i, j) = -alpha_bound;
      for (;;) {
        const bool ok = verify(any_height ? complete_graph_basis_map(n_plus_1, pi, h, alphas)
                                          : complete_graph_automorphism(n_plus_1, pi, h, alphas));
        ++r.maps;
        r.passed += ok;
        if (!ok && !r.first_failure) r.first_failure = AutomorphismFailure{pi, h, alphas};
        std::size_t k = 0;
        for (; k < cells.size() && alphas(cells[k].first, cells[k].second) == alpha_bound; ++k)
          alphas(cells[k].first, cells[k].second) = -alpha_bound;
        if (k == cells.size()) break;
        ++alphas(cells[k].first, cells[k].second);
      }
    } while (std::next_permutation(pi.begin(), pi.end()));
  }
  return r;
}

struct MappedDualityReport {
  Rational t;
  Rational covering_radius;          // of the mapped arrangement, computed in mapped coordinates
  std::size_t samples = 0;
  std::size_t distance_mismatches = 0;  // h_{M(S),M(L)}(M p) != h_{S,L}(p)
  std::size_t tiling_violations = 0;    // mapped tiling fails (boundary excluded)
  std::size_t transport_mismatches = 0; // classification of M p differs from that of p
  std::size_t boundary = 0;
};

namespace detail {

/// Gauge of the mapped simplex M(simplex) on the mapped lattice M(L_G), minimized over a box of
/// mapped lattice points. Everything is expressed in the barycentric-like coordinates alpha of
/// v = sum alpha_i s_i, sum alpha = 0, where gauge(v) = -(n+1) min alpha.
class MappedDistance {
 public:
  MappedDistance(const LaplacianLattice& lattice, const LinearMapH0& m, std::int64_t radius)
      : n1_(lattice.dimension()), n_(lattice.rank()), radius_(radius) {
    // G alpha = (v_1..v_n, 0): rows 1..n of [s_0 .. s_n] and a row of ones
    Matrix<Rational> gmat(n1_, n1_);
    for (std::size_t i = 0; i < n1_; ++i) {
      auto s = m.apply(simplex_vertex(n1_, i));
      for (std::size_t r = 1; r < n1_; ++r) gmat(r - 1, i) = s[r];
      gmat(n1_ - 1, i) = 1;
    }
    auto inv = divrank::inverse(std::move(gmat));
    if (!inv) throw Error(Errc::SingularMap, "mapped simplex is degenerate");
    ginv_ = std::move(*inv);
    // alpha of each mapped basis vector
    for (std::size_t k = 0; k < n_; ++k) {
      gens_.push_back(alpha(m.apply(to_rational(lattice.basis_vector(k)))));
      for (const auto& v : gens_.back()) gens_den_ = divrank::lcm(gens_den_, boost::multiprecision::denominator(v));
    }
    mapped_basis_ = Matrix<Rational>(n1_, n_);
    for (std::size_t k = 0; k < n_; ++k) {
      auto v = m.apply(to_rational(lattice.basis_vector(k)));
      for (std::size_t r = 0; r < n1_; ++r) mapped_basis_(r, k) = v[r];
    }
  }

  [[nodiscard]] std::vector<Rational> alpha(const RationalPoint& v) const {
    std::vector<Rational> rhs(n1_, Rational(0));
    for (std::size_t r = 1; r < n1_; ++r) rhs[r - 1] = v[r];
    return ginv_ * rhs;
  }

  /// min over mapped lattice points q' of gauge(q' - y), the mapped analogue of lattice_distance.
  [[nodiscard]] Rational operator()(const RationalPoint& y) const {
    const auto a = alpha(y);
    // integer arithmetic over a common denominator; the box is walked as an odometer
    BigInt den = gens_den_;
    for (const auto& v : a) den = divrank::lcm(den, boost::multiprecision::denominator(v));
    auto scaled = [&](const Rational& v) { return to_int64(boost::multiprecision::numerator(v * Rational(den))); };
    std::vector<std::vector<__int128>> gens(n_, std::vector<__int128>(n1_));
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n1_; ++i) gens[k][i] = scaled(gens_[k][i]);
    const auto center = mapped_coordinates(y);
    std::vector<__int128> cur(n1_);
    for (std::size_t i = 0; i < n1_; ++i) {
      cur[i] = -static_cast<__int128>(scaled(a[i]));
      for (std::size_t k = 0; k < n_; ++k) cur[i] += static_cast<__int128>(center[k] - radius_) * gens[k][i];
    }
    std::vector<std::int64_t> offset(n_, -radius_);
    __int128 best_min = 0;
    bool first = true;
    for (;;) {
      const __int128 mn = *std::min_element(cur.begin(), cur.end());
      if (first || mn > best_min) best_min = mn;
      first = false;
      std::size_t k = 0;
      for (; k < n_ && offset[k] == radius_; ++k) {
        offset[k] = -radius_;
        for (std::size_t i = 0; i < n1_; ++i) cur[i] -= 2 * static_cast<__int128>(radius_) * gens[k][i];
      }
      if (k == n_) break;
      ++offset[k];
      for (std::size_t i = 0; i < n1_; ++i) cur[i] += gens[k][i];
    }
    return Rational(BigInt(-static_cast<long long>(n1_)) * to_bigint(best_min), den);
  }

 private:
  /// Coordinates of y in the mapped basis, solved from n independent rows, rounded.
  [[nodiscard]] std::vector<std::int64_t> mapped_coordinates(const RationalPoint& y) const {
    Matrix<Rational> sys(n_, n_);
    std::vector<Rational> rhs(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t k = 0; k < n_; ++k) sys(r, k) = mapped_basis_(r + 1, k);
      rhs[r] = y[r + 1];
    }
    auto inv = divrank::inverse(std::move(sys));
    if (!inv) throw Error(Errc::SingularMap, "mapped basis is degenerate");
    auto x = *inv * rhs;
    std::vector<std::int64_t> out(n_);
    for (std::size_t k = 0; k < n_; ++k) out[k] = to_int64(round_nearest(x[k]));
    return out;
  }

  std::size_t n1_;
  std::size_t n_;
  std::int64_t radius_;
  Matrix<Rational> ginv_;
  std::vector<std::vector<Rational>> gens_;
  BigInt gens_den_ = 1;
  Matrix<Rational> mapped_basis_;

  static BigInt to_bigint(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    BigInt out = static_cast<std::uint64_t>(u >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(u);
    return neg ? BigInt(-out) : out;
  }
};

/// Box radius (in basis coefficients) that contains the nearest lattice point of any point
/// with coordinates in [-a, a] once rounded into the fundamental cell.
inline std::int64_t mapped_search_radius(const LaplacianLattice& lattice, const Rational& cov) {
  // nearest point q satisfies q_j in [y_j - Cov, y_j + n Cov]; |y_j| <= sum_k |b_kj| / 2 after rounding
  const std::size_t n1 = lattice.dimension();
  Rational ymax = 0;
  for (std::size_t j = 0; j < n1; ++j) {
    Rational s = 0;
    for (std::size_t k = 0; k < lattice.rank(); ++k) s += std::abs(lattice.laplacian_matrix()(k + 1, j));
    ymax = std::max(ymax, Rational(s / 2));
  }
  Rational qmax = ymax + Rational(static_cast<long long>(n1 - 1)) * cov;
  Rational worst = 0;
  for (std::size_t i = 0; i < lattice.rank(); ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < lattice.rank(); ++j) row += Rational(boost::multiprecision::abs(lattice.adjugate()(i, j)));
    worst = std::max(worst, Rational(row / Rational(lattice.determinant()) * (qmax + ymax)));
  }
  return to_int64(ceil_div(worst)) + 1;
}

}  // namespace detail

/// Checks distance transport h_{M(S),M(L)}(M p) = h_{S,L}(p), the tiling for the mapped simplex on the
/// mapped lattice, and that M carries each sample's classification to the image sample.
inline MappedDualityReport mapped_duality_check(const CritGeometry& geom, const LinearMapH0& m, const Rational& t,
                                                std::size_t samples, std::uint64_t seed = 1) {
  const auto& lat = geom.lattice();
  if (m.dimension() != lat.dimension()) throw Error(Errc::DimensionMismatch, "map dimension does not match graph");
  const Rational cov = geom.covering_radius();
  if (t < 0 || t > cov) throw Error(Errc::TOutOfRange, "t must lie in [0, " + to_string(cov) + "]");
  detail::MappedDistance hm(lat, m, detail::mapped_search_radius(lat, cov));

  std::vector<RationalPoint> mapped_crit;
  Rational cov_m = 0;
  for (const auto& c : geom.classes()) {
    mapped_crit.push_back(m.apply(c.c));
    cov_m = std::max(cov_m, hm(mapped_crit.back()));
  }
  MappedDualityReport r{t, cov_m};
  std::mt19937_64 gen(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    auto p = sample_fundamental_domain(lat, gen);
    auto mp = m.apply(p);
    ++r.samples;
    const Rational ha = geom.distance_to_lattice(p);
    const Rational hb = geom.distance_to_crit(p);
    const Rational ha_m = hm(mp);
    std::optional<Rational> hb_m;
    for (const auto& mc : mapped_crit) {
      Rational h = hm(mc - mp);
      if (!hb_m || h < *hb_m) hb_m = h;
    }
    r.distance_mismatches += ha_m != ha;
    if (ha_m == t) {
      ++r.boundary;
      r.transport_mismatches += ha != t;
      continue;
    }
    const bool a_m = ha_m < t, b_m = *hb_m <= cov_m - t;
    r.tiling_violations += a_m == b_m;
    const bool a = ha < t, b = hb <= cov - t;
    r.transport_mismatches += (a != a_m) || (b != b_m);
  }
  return r;
}

}  // namespace divrank

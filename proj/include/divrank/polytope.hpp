#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "divrank/divisor.hpp"
#include "divrank/error.hpp"
#include "divrank/exact.hpp"

namespace divrank {

inline RationalPoint to_rational(const Divisor& d) {
  RationalPoint p;
  p.reserve(d.size());
  for (auto c : d.chips()) p.emplace_back(c);
  return p;
}

inline Rational degree(const RationalPoint& p) {
  Rational s = 0;
  for (const auto& c : p) s += c;
  return s;
}

inline Rational degree_plus(const RationalPoint& p) {
  Rational s = 0;
  for (const auto& c : p)
    if (c > 0) s += c;
  return s;
}

inline bool in_h0(const RationalPoint& p) { return degree(p) == 0; }

inline RationalPoint operator+(RationalPoint a, const RationalPoint& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "point sizes differ");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline RationalPoint operator-(RationalPoint a, const RationalPoint& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "point sizes differ");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline RationalPoint operator*(const Rational& k, RationalPoint a) {
  for (auto& c : a) c *= k;
  return a;
}

/// a + k * (1, ..., 1)
inline RationalPoint shift(RationalPoint a, const Rational& k) {
  for (auto& c : a) c += k;
  return a;
}

inline std::string join(const RationalPoint& p, std::string_view sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += sep;
    s += to_string(p[i]);
  }
  return s;
}

/// Orthogonal projection onto H_0.
inline RationalPoint project_h0(const RationalPoint& p) {
  if (p.empty()) return p;
  return shift(p, -degree(p) / Rational(static_cast<long long>(p.size())));
}

inline void require_h0(const RationalPoint& p, const char* what) {
  if (!in_h0(p)) throw Error(Errc::NotInH0, std::string(what) + " is not in H0");
}

enum class SimplexKind { standard, reflected };

/// Polyhedral distance of the simplex (standard) or its reflection. On H0,
/// d(p, q) = |min_i (q_i - p_i)| for the standard simplex and |min_i (p_i - q_i)| for the reflected one.
inline Rational simplex_distance(SimplexKind kind, const RationalPoint& p, const RationalPoint& q) {
  require_h0(p, "p");
  require_h0(q, "q");
  if (p.size() != q.size()) throw Error(Errc::DimensionMismatch, "point sizes differ");
  Rational m = kind == SimplexKind::standard ? q[0] - p[0] : p[0] - q[0];
  for (std::size_t i = 1; i < p.size(); ++i) {
    Rational v = kind == SimplexKind::standard ? q[i] - p[i] : p[i] - q[i];
    if (v < m) m = v;
  }
  return m < 0 ? Rational(-m) : m;
}

/// Vertex t_i of the standard simplex: n at i, -1 elsewhere.
inline RationalPoint simplex_vertex(std::size_t n_plus_1, std::size_t i) {
  RationalPoint t(n_plus_1, Rational(-1));
  t[i] = Rational(static_cast<long long>(n_plus_1) - 1);
  return t;
}

/// (triangle(O, r1) + reflected triangle(O, r2)) translated to center.
struct PolytopeMN {
  Rational r1;
  Rational r2;
  RationalPoint center;
};

namespace detail {

inline void check_polytope(const PolytopeMN& poly, const RationalPoint& q) {
  if (poly.r1 < 0 || poly.r2 < 0) throw Error(Errc::BadArgument, "polytope radii must be nonnegative");
  if (poly.center.size() != q.size()) throw Error(Errc::DimensionMismatch, "point sizes differ");
  require_h0(poly.center, "polytope center");
  require_h0(q, "query point");
}

/// q - center - (r2 - r1) 1: its deg+ is at most (n+1) r1 exactly on the polytope.
inline RationalPoint polytope_offset(const PolytopeMN& poly, const RationalPoint& q) {
  return shift(q - poly.center, poly.r1 - poly.r2);
}

}  // namespace detail

inline bool polytope_contains(const PolytopeMN& poly, const RationalPoint& q) {
  detail::check_polytope(poly, q);
  const Rational cap = Rational(static_cast<long long>(q.size())) * poly.r1;
  return degree_plus(detail::polytope_offset(poly, q)) <= cap;
}

/// a . x <= offset
struct Hyperplane {
  RationalPoint coefficients;
  Rational offset;

  [[nodiscard]] bool satisfied_by(const RationalPoint& x) const {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += coefficients[i] * x[i];
    return s <= offset;
  }
};

struct Inside {};

using Separation = std::variant<Inside, Hyperplane>;

/// For an exterior q, the indicator of the positive support S of y = q - c - (r2 - r1) 1 gives
/// sum_S x_j <= (n+1) r1 + sum_S (c_j + r2 - r1) on the polytope, while q exceeds it by
/// deg+(y) - (n+1) r1 > 0. The offset sits halfway, so q violates it strictly.
inline Separation polytope_separate(const PolytopeMN& poly, const RationalPoint& q) {
  detail::check_polytope(poly, q);
  const Rational cap = Rational(static_cast<long long>(q.size())) * poly.r1;
  const auto y = detail::polytope_offset(poly, q);
  const Rational excess = degree_plus(y) - cap;
  if (excess <= 0) return Inside{};
  Hyperplane h{RationalPoint(q.size(), Rational(0)), cap + excess / 2};
  for (std::size_t j = 0; j < q.size(); ++j)
    if (y[j] > 0) {
      h.coefficients[j] = 1;
      h.offset += poly.center[j] + poly.r2 - poly.r1;
    }
  return h;
}

/// w_ij = r1 t_i - r2 t_j for i != j.
inline std::vector<RationalPoint> polytope_vertices(std::size_t n_plus_1, const Rational& r1, const Rational& r2) {
  if (r1 <= 0 || r2 <= 0) throw Error(Errc::BadArgument, "polytope radii must be positive");
  std::vector<RationalPoint> out;
  for (std::size_t i = 0; i < n_plus_1; ++i)
    for (std::size_t j = 0; j < n_plus_1; ++j)
      if (i != j) out.push_back(r1 * simplex_vertex(n_plus_1, i) - r2 * simplex_vertex(n_plus_1, j));
  return out;
}

/// Degree-plus distance: least r with q in P_{r, r+k}(p), i.e. deg+(q - p - k 1) / (n+1).
inline Rational dplus_distance(const Rational& k, const RationalPoint& p, const RationalPoint& q) {
  if (k < 0) throw Error(Errc::BadArgument, "k must be nonnegative");
  require_h0(p, "p");
  require_h0(q, "q");
  if (p.size() != q.size()) throw Error(Errc::DimensionMismatch, "point sizes differ");
  return degree_plus(shift(q - p, -k)) / Rational(static_cast<long long>(p.size()));
}

}  // namespace divrank

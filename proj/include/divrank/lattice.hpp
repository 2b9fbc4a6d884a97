#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "divrank/divisor.hpp"
#include "divrank/exact.hpp"
#include "divrank/graph.hpp"

namespace divrank {

/// The Laplacian lattice L_G inside A_n.
///
/// Basis: the Laplacian rows of vertices 1..n. A zero-sum vector v lies in L_G iff
/// x = Q~^{-1} v[1..n] is integral, where Q~ is Q with row/column 0 deleted. We keep
/// Q~^{-1} as adj / det with det = spanning-tree count.
class LaplacianLattice {
 public:
  explicit LaplacianLattice(Multigraph g) : graph_(std::move(g)), q_(laplacian(graph_)) {
    const std::size_t n = rank();
    auto reduced = reduced_laplacian(graph_);
    det_ = bareiss_determinant(reduced);
    auto inv = inverse(reduced.cast<Rational>());
    if (!inv || det_ <= 0) throw Error(Errc::DisconnectedGraph, "reduced Laplacian is singular");
    adj_ = Matrix<BigInt>(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational e = (*inv)(i, j) * det_;
        adj_(i, j) = boost::multiprecision::numerator(e);
      }
    small_ = det_ < BigInt(1) << 40;
    if (small_) {
      det64_ = static_cast<std::int64_t>(det_);
      adj64_ = Matrix<std::int64_t>(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (boost::multiprecision::abs(adj_(i, j)) >= BigInt(1) << 40) small_ = false;
          else adj64_(i, j) = static_cast<std::int64_t>(adj_(i, j));
        }
    }
  }

  [[nodiscard]] const Multigraph& graph() const noexcept { return graph_; }
  [[nodiscard]] const LaplacianMatrix& laplacian_matrix() const noexcept { return q_; }
  /// Number of coordinates n+1.
  [[nodiscard]] std::size_t dimension() const noexcept { return graph_.vertex_count(); }
  /// Number of basis vectors n.
  [[nodiscard]] std::size_t rank() const noexcept { return graph_.vertex_count() - 1; }
  /// Index [A_n : L_G], the spanning-tree count.
  [[nodiscard]] const BigInt& determinant() const noexcept { return det_; }
  /// Adjugate of the reduced Laplacian; its inverse is adjugate() / determinant().
  [[nodiscard]] const Matrix<BigInt>& adjugate() const noexcept { return adj_; }

  /// Basis vector k (0-based) = Laplacian row of vertex k+1.
  [[nodiscard]] Divisor basis_vector(std::size_t k) const {
    std::vector<std::int64_t> row(dimension());
    for (std::size_t j = 0; j < dimension(); ++j) row[j] = q_(k + 1, j);
    return Divisor(std::move(row));
  }

  /// B^T x.
  [[nodiscard]] Divisor point(const std::vector<std::int64_t>& x) const {
    if (x.size() != rank()) throw Error(Errc::DimensionMismatch, "coefficient vector has wrong length");
    Divisor p = Divisor::zero(dimension());
    for (std::size_t k = 0; k < rank(); ++k)
      if (x[k] != 0)
        for (std::size_t j = 0; j < dimension(); ++j) p[j] += x[k] * q_(k + 1, j);
    return p;
  }

  /// Exact rational coordinates of a zero-sum point in the lattice basis.
  [[nodiscard]] std::vector<Rational> rational_coefficients(const std::vector<Rational>& v) const {
    check_dim(v.size());
    std::vector<Rational> x(rank(), Rational(0));
    for (std::size_t i = 0; i < rank(); ++i) {
      for (std::size_t j = 0; j < rank(); ++j) x[i] += Rational(adj_(i, j)) * v[j + 1];
      x[i] /= Rational(det_);
    }
    return x;
  }

  /// Integer coefficients x with v = B^T x, or empty when v is not a lattice point.
  [[nodiscard]] std::optional<std::vector<std::int64_t>> coefficients(const Divisor& v) const {
    check_dim(v.size());
    if (v.degree() != 0) return std::nullopt;
    std::vector<std::int64_t> x(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      BigInt s = 0;
      for (std::size_t j = 0; j < rank(); ++j) s += adj_(i, j) * v[j + 1];
      if (s % det_ != 0) return std::nullopt;
      x[i] = to_int64(s / det_);
    }
    return x;
  }

  [[nodiscard]] bool contains(const Divisor& v) const { return coefficients(v).has_value(); }

  [[nodiscard]] bool contains(const std::vector<Rational>& v) const {
    check_dim(v.size());
    Rational sum = 0;
    for (const auto& c : v) {
      if (!is_integer(c)) return false;
      sum += c;
    }
    if (sum != 0) return false;
    for (const auto& c : rational_coefficients(v))
      if (!is_integer(c)) return false;
    return true;
  }

  /// Canonical label of the class of v in Z^{n+1}/L_G: (degree, adj * w mod det) where
  /// w = v - deg(v) e_0 restricted to 1..n. Equal keys iff linearly equivalent.
  [[nodiscard]] std::vector<std::int64_t> class_key(const Divisor& v) const {
    check_dim(v.size());
    std::vector<std::int64_t> key(rank() + 1);
    key[0] = v.degree();
    for (std::size_t i = 0; i < rank(); ++i) {
      if (small_) {
        __int128 s = 0;
        for (std::size_t j = 0; j < rank(); ++j) s += static_cast<__int128>(adj64_(i, j)) * v[j + 1];
        auto r = static_cast<std::int64_t>(s % det64_);
        key[i + 1] = r < 0 ? r + det64_ : r;
      } else {
        BigInt s = 0;
        for (std::size_t j = 0; j < rank(); ++j) s += adj_(i, j) * v[j + 1];
        BigInt r = s % det_;
        if (r < 0) r += det_;
        key[i + 1] = to_int64(r);
      }
    }
    return key;
  }

  /// Lattice point whose coefficients are the rounded rational coordinates of v.
  /// Subtracting it from v leaves a point with coordinates in [-1/2, 1/2).
  [[nodiscard]] std::vector<std::int64_t> nearest_coefficients(const std::vector<Rational>& v) const {
    auto x = rational_coefficients(v);
    std::vector<std::int64_t> out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = to_int64(round_nearest(x[i]));
    return out;
  }

  /// Half the spread of row i of Q~^{-1} padded with a zero column, as numerator over
  /// 2 * det. Bounds |x_i| <= spread_i * ||q||_1 for zero-sum q.
  [[nodiscard]] std::int64_t row_spread_numerator(std::size_t i) const {
    require_small();
    std::int64_t lo = 0, hi = 0;
    for (std::size_t j = 0; j < rank(); ++j) {
      lo = std::min(lo, adj64_(i, j));
      hi = std::max(hi, adj64_(i, j));
    }
    return hi - lo;
  }
  [[nodiscard]] std::int64_t row_spread_denominator() const {
    require_small();
    return 2 * det64_;
  }

  [[nodiscard]] const Matrix<std::int64_t>& adjugate64() const {
    require_small();
    return adj64_;
  }
  [[nodiscard]] std::int64_t determinant64() const {
    require_small();
    return det64_;
  }

 private:
  void check_dim(std::size_t k) const {
    if (k != dimension()) throw Error(Errc::DimensionMismatch, "vector length does not match vertex count");
  }
  void require_small() const {
    if (!small_) throw Error(Errc::Overflow, "lattice too large for 64-bit enumeration");
  }

  Multigraph graph_;
  LaplacianMatrix q_;
  BigInt det_;
  Matrix<BigInt> adj_;
  bool small_ = false;
  std::int64_t det64_ = 0;
  Matrix<std::int64_t> adj64_;
};

}  // namespace divrank

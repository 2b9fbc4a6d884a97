#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "divrank/error.hpp"

namespace divrank {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<std::int64_t>;
using RationalPoint = std::vector<Rational>;

/// Dense row-major matrix. Only what the lattice code needs.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::vector<T> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  template <class U>
  [[nodiscard]] Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = U((*this)(r, c));
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "matrix product shapes");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw Error(Errc::DimensionMismatch, "matrix-vector shapes");
  std::vector<T> out(a.rows(), T{0});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

inline BigInt floor_div(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

inline BigInt ceil_div(const Rational& r) { return -floor_div(-r); }

inline BigInt round_nearest(const Rational& r) { return floor_div(r + Rational(1, 2)); }

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Error(Errc::Overflow, "value does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Parses "p", "-p" or "p/q".
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<BigInt> {
    if (s.empty()) return std::nullopt;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return std::nullopt;
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') return std::nullopt;
    BigInt v(std::string(s.substr(i)));
    return s[0] == '-' ? BigInt(-v) : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto v = parse_int(text);
    if (!v) return std::nullopt;
    return Rational(*v);
  }
  auto num = parse_int(text.substr(0, slash));
  auto den = parse_int(text.substr(slash + 1));
  if (!num || !den || *den == 0) return std::nullopt;
  return Rational(*num, *den);
}

/// Fraction-free (Bareiss) determinant. Exact for integer matrices.
inline BigInt bareiss_determinant(Matrix<BigInt> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(Errc::DimensionMismatch, "determinant of non-square matrix");
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Exact inverse by Gauss-Jordan over the rationals; empty when singular.
inline std::optional<Matrix<Rational>> inverse(Matrix<Rational> a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw Error(Errc::DimensionMismatch, "inverse of non-square matrix");
  Matrix<Rational> inv = Matrix<Rational>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    const Rational p = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

/// Invariant factors d1 | d2 | ... of a square integer matrix (Smith normal form diagonal),
/// with unit factors dropped. A zero factor is kept (singular input).
inline std::vector<BigInt> smith_invariant_factors(Matrix<BigInt> m) {
  using boost::multiprecision::abs;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t n = std::min(rows, cols);
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // smallest nonzero pivot in the trailing block
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m(i, j) != 0 && (!best || abs(m(i, j)) < abs(m(best->first, best->second)))) best = {i, j};
      if (!best) break;
      auto [pi, pj] = *best;
      for (std::size_t c = 0; c < cols; ++c) std::swap(m(t, c), m(pi, c));
      for (std::size_t r = 0; r < rows; ++r) std::swap(m(r, t), m(r, pj));
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        BigInt q = m(i, t) / m(t, t);
        for (std::size_t c = t; c < cols; ++c) m(i, c) -= q * m(t, c);
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        BigInt q = m(t, j) / m(t, t);
        for (std::size_t r = t; r < rows; ++r) m(r, j) -= q * m(r, t);
        if (m(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold any entry not divisible by the pivot into row t
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      for (std::size_t c = t; c < cols; ++c) m(t, c) += m(*bad_row, c);
    }
    diag.push_back(abs(m(t, t)));
  }
  std::vector<BigInt> factors;
  for (const auto& d : diag)
    if (d != 1) factors.push_back(d);
  // zeros belong at the end of the chain
  std::stable_partition(factors.begin(), factors.end(), [](const BigInt& d) { return d != 0; });
  return factors;
}

}  // namespace divrank

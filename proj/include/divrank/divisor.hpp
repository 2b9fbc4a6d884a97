#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "divrank/error.hpp"

namespace divrank {

/// Integer chip vector indexed by vertex.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::vector<std::int64_t> chips) : chips_(std::move(chips)) {}
  Divisor(std::initializer_list<std::int64_t> chips) : chips_(chips) {}

  static Divisor zero(std::size_t n) { return Divisor(std::vector<std::int64_t>(n, 0)); }
  static Divisor unit(std::size_t n, std::size_t v) {
    Divisor d = zero(n);
    d.chips_.at(v) = 1;
    return d;
  }

  [[nodiscard]] std::size_t size() const noexcept { return chips_.size(); }
  [[nodiscard]] const std::vector<std::int64_t>& chips() const noexcept { return chips_; }
  std::int64_t& operator[](std::size_t i) { return chips_[i]; }
  std::int64_t operator[](std::size_t i) const { return chips_[i]; }

  [[nodiscard]] std::int64_t degree() const {
    return std::accumulate(chips_.begin(), chips_.end(), std::int64_t{0});
  }

  /// Sum of the positive entries.
  [[nodiscard]] std::int64_t degree_plus() const {
    std::int64_t s = 0;
    for (auto c : chips_) s += c > 0 ? c : 0;
    return s;
  }

  [[nodiscard]] bool is_effective() const {
    return std::all_of(chips_.begin(), chips_.end(), [](std::int64_t c) { return c >= 0; });
  }

  Divisor& operator+=(const Divisor& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < chips_.size(); ++i) chips_[i] += o.chips_[i];
    return *this;
  }
  Divisor& operator-=(const Divisor& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < chips_.size(); ++i) chips_[i] -= o.chips_[i];
    return *this;
  }
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator-(Divisor a) {
    for (auto& c : a.chips_) c = -c;
    return a;
  }
  friend Divisor operator*(std::int64_t k, Divisor a) {
    for (auto& c : a.chips_) c *= k;
    return a;
  }

  friend bool operator==(const Divisor&, const Divisor&) = default;
  friend auto operator<=>(const Divisor&, const Divisor&) = default;

  /// Componentwise a <= b.
  friend bool dominated_by(const Divisor& a, const Divisor& b) {
    a.check_same_size(b);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  }

 private:
  void check_same_size(const Divisor& o) const {
    if (o.size() != size()) throw Error(Errc::DimensionMismatch, "divisor sizes differ");
  }

  std::vector<std::int64_t> chips_;
};

template <class Int>
std::string join(std::span<const Int> values, std::string_view sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << sep;
    os << values[i];
  }
  return os.str();
}

inline std::string join(const std::vector<std::int64_t>& v, std::string_view sep = ",") {
  return join(std::span<const std::int64_t>(v), sep);
}
inline std::string join(const std::vector<int>& v, std::string_view sep = ",") {
  return join(std::span<const int>(v), sep);
}
inline std::string join(const Divisor& d, std::string_view sep = ",") { return join(d.chips(), sep); }

namespace detail {

inline std::optional<std::int64_t> parse_i64(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return std::nullopt;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    if (v > (INT64_MAX - (s[i] - '0')) / 10) return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return neg ? -v : v;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

/// Parses whitespace- or comma-separated integers, e.g. "0 -1 2" or "0,-1,2".
inline Divisor parse_divisor_values(std::string_view text) {
  std::string buf(text);
  std::replace(buf.begin(), buf.end(), ',', ' ');
  std::vector<std::int64_t> chips;
  for (auto tok : detail::split_ws(buf)) {
    auto v = detail::parse_i64(tok);
    if (!v) throw Error(Errc::ParseError, "bad divisor entry '" + std::string(tok) + "'");
    chips.push_back(*v);
  }
  if (chips.empty()) throw Error(Errc::ParseError, "empty divisor");
  return Divisor(std::move(chips));
}

/// Parses a divisor file: '#' comments, then a single line `div d0 d1 ... dn`.
inline Divisor parse_divisor_file(std::string_view text) {
  std::optional<Divisor> result;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (toks[0] != "div") throw Error(Errc::ParseError, where + "expected 'div'");
    if (result) throw Error(Errc::ParseError, where + "more than one divisor");
    if (toks.size() < 2) throw Error(Errc::ParseError, where + "divisor has no entries");
    std::vector<std::int64_t> chips;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      auto v = detail::parse_i64(toks[i]);
      if (!v) throw Error(Errc::ParseError, where + "bad integer '" + std::string(toks[i]) + "'");
      chips.push_back(*v);
    }
    result = Divisor(std::move(chips));
  }
  if (!result) throw Error(Errc::ParseError, "no 'div' line found");
  return *result;
}

inline std::string format_divisor_file(const Divisor& d) { return "div " + join(d, " ") + "\n"; }

}  // namespace divrank

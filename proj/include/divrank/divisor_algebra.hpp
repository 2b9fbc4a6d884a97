#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "divrank/divisor.hpp"
#include "divrank/graph.hpp"
#include "divrank/lattice.hpp"

namespace divrank {

/// nu_pi(v) = indeg_pi(v) - 1, each edge oriented from the earlier to the later vertex of pi.
inline Divisor orientation_divisor(const Multigraph& g, const std::vector<int>& pi) {
  const std::size_t n = g.vertex_count();
  if (pi.size() != n) throw Error(Errc::DimensionMismatch, "permutation has wrong length");
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (pi[i] < 0 || static_cast<std::size_t>(pi[i]) >= n || pos[pi[i]] != -1)
      throw Error(Errc::BadArgument, "not a permutation");
    pos[pi[i]] = static_cast<int>(i);
  }
  Divisor nu = Divisor::zero(n);
  for (std::size_t v = 0; v < n; ++v) {
    nu[v] = -1;
    for (std::size_t u = 0; u < n; ++u)
      if (pos[u] < pos[v]) nu[v] += g.multiplicity(u, v);
  }
  return nu;
}

struct Reduction {
  Divisor reduced;
  Divisor firing;             // reduced = d - Q * firing
  std::vector<int> burn_order;  // base first, then vertices in the order the last burn reached them
};

/// Dhar's burning algorithm. Set-firings are batched, so the cost depends on the graph
/// and on log-ish factors of the chip counts rather than on the chip counts themselves.
inline Reduction reduce_with_burn_order(const Multigraph& g, Divisor d, std::size_t base = 0) {
  const std::size_t n = g.vertex_count();
  if (d.size() != n) throw Error(Errc::DimensionMismatch, "divisor length does not match vertex count");
  if (base >= n) throw Error(Errc::InvalidVertex, "base vertex out of range");
  Divisor firing = Divisor::zero(n);

  auto fire = [&](const std::vector<char>& in_set, std::int64_t times) {
    for (std::size_t u = 0; u < n; ++u) {
      if (!in_set[u]) continue;
      firing[u] += times;
      for (std::size_t v = 0; v < n; ++v)
        if (!in_set[v] && g.multiplicity(u, v)) {
          d[u] -= times * g.multiplicity(u, v);
          d[v] += times * g.multiplicity(u, v);
        }
    }
  };

  // Nonnegative off the base: walk BFS layers outward-in, firing the ball below each layer.
  std::vector<int> dist(n, -1);
  std::queue<std::size_t> todo;
  dist[base] = 0;
  todo.push(base);
  int max_dist = 0;
  while (!todo.empty()) {
    auto u = todo.front();
    todo.pop();
    for (std::size_t v = 0; v < n; ++v)
      if (g.multiplicity(u, v) && dist[v] < 0) {
        dist[v] = dist[u] + 1;
        max_dist = std::max(max_dist, dist[v]);
        todo.push(v);
      }
  }
  for (int k = max_dist; k >= 1; --k) {
    std::vector<char> ball(n);
    for (std::size_t v = 0; v < n; ++v) ball[v] = dist[v] <= k - 1;
    std::int64_t times = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] != k || d[v] >= 0) continue;
      std::int64_t into = 0;
      for (std::size_t u = 0; u < n; ++u)
        if (ball[u]) into += g.multiplicity(u, v);
      times = std::max(times, (-d[v] + into - 1) / into);
    }
    if (times > 0) fire(ball, times);
  }

  for (;;) {
    std::vector<char> burnt(n, 0);
    std::vector<int> order{static_cast<int>(base)};
    burnt[base] = 1;
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (burnt[v]) continue;
        std::int64_t fire_edges = 0;
        for (std::size_t u = 0; u < n; ++u)
          if (burnt[u]) fire_edges += g.multiplicity(u, v);
        if (d[v] < fire_edges) {
          burnt[v] = 1;
          order.push_back(static_cast<int>(v));
          grew = true;
        }
      }
    }
    if (order.size() == n) return {std::move(d), std::move(firing), std::move(order)};
    std::vector<char> unburnt(n);
    std::int64_t times = INT64_MAX;
    for (std::size_t v = 0; v < n; ++v) {
      unburnt[v] = !burnt[v];
      if (!unburnt[v]) continue;
      std::int64_t out = 0;
      for (std::size_t u = 0; u < n; ++u)
        if (burnt[u]) out += g.multiplicity(u, v);
      if (out > 0) times = std::min(times, d[v] / out);
    }
    fire(unburnt, times);
  }
}

/// The unique base-reduced divisor linearly equivalent to d.
inline Divisor reduced_divisor(const Multigraph& g, const Divisor& d, std::size_t base = 0) {
  return reduce_with_burn_order(g, d, base).reduced;
}

/// Firing vector w, normalized so min(w) = 0.
struct EquivalenceCertificate {
  Divisor firing_vector;
};

/// a ~ b iff both reduce to the same divisor; then a - b = Q (f_a - f_b).
inline std::optional<EquivalenceCertificate> linearly_equivalent(const Multigraph& g, const Divisor& a,
                                                                 const Divisor& b) {
  if (a.size() != g.vertex_count() || b.size() != g.vertex_count())
    throw Error(Errc::DimensionMismatch, "divisor length does not match vertex count");
  if (a.degree() != b.degree()) return std::nullopt;
  auto ra = reduce_with_burn_order(g, a);
  auto rb = reduce_with_burn_order(g, b);
  if (ra.reduced != rb.reduced) return std::nullopt;
  Divisor w = ra.firing - rb.firing;
  auto lo = *std::min_element(w.chips().begin(), w.chips().end());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= lo;
  return EquivalenceCertificate{std::move(w)};
}

/// Q * w.
inline Divisor apply_laplacian(const Multigraph& g, const Divisor& w) {
  const std::size_t n = g.vertex_count();
  if (w.size() != n) throw Error(Errc::DimensionMismatch, "vector length does not match vertex count");
  Divisor out = Divisor::zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += (i == j ? g.degree(i) : -g.multiplicity(i, j)) * w[j];
  return out;
}

/// q in L_G with D - q effective.
struct PositiveCertificate {
  Divisor q;
  friend bool operator==(const PositiveCertificate&, const PositiveCertificate&) = default;
};

/// q in L_G with D + q <= nu_pi, so every divisor equivalent to D has a negative entry.
struct NegativeCertificate {
  std::vector<int> pi;
  Divisor q;
  friend bool operator==(const NegativeCertificate&, const NegativeCertificate&) = default;
};

using EffectivityCertificate = std::variant<PositiveCertificate, NegativeCertificate>;

struct EffectivityResult {
  bool effective = false;
  EffectivityCertificate certificate;
};

/// Reduce at vertex 0; the class is effective iff the base keeps a nonnegative count.
/// A failed reduction leaves reduced <= nu_pi for pi = burn order, which is the negative witness.
inline EffectivityResult is_effective_class(const Multigraph& g, const Divisor& d) {
  auto r = reduce_with_burn_order(g, d, 0);
  if (r.reduced[0] >= 0) return {true, PositiveCertificate{d - r.reduced}};
  return {false, NegativeCertificate{std::move(r.burn_order), r.reduced - d}};
}

inline bool verify_certificate(const LaplacianLattice& lattice, const Divisor& d,
                               const EffectivityCertificate& cert) {
  const auto& g = lattice.graph();
  if (d.size() != g.vertex_count()) return false;
  if (const auto* pos = std::get_if<PositiveCertificate>(&cert)) {
    if (pos->q.size() != d.size() || !lattice.contains(pos->q)) return false;
    return (d - pos->q).is_effective();
  }
  const auto& neg = std::get<NegativeCertificate>(cert);
  if (neg.q.size() != d.size() || !lattice.contains(neg.q)) return false;
  Divisor nu;
  try {
    nu = orientation_divisor(g, neg.pi);
  } catch (const Error&) {
    return false;
  }
  return dominated_by(d + neg.q, nu);
}

inline bool verify_certificate(const Multigraph& g, const Divisor& d, const EffectivityCertificate& cert) {
  return verify_certificate(LaplacianLattice(g), d, cert);
}

inline std::string format_certificate(const EffectivityCertificate& cert) {
  if (const auto* pos = std::get_if<PositiveCertificate>(&cert)) return "cert positive q=" + join(pos->q);
  const auto& neg = std::get<NegativeCertificate>(cert);
  return "cert negative pi=" + join(neg.pi) + " q=" + join(neg.q);
}

inline EffectivityCertificate parse_certificate(std::string_view text) {
  auto toks = detail::split_ws(text);
  auto field = [&](std::string_view tok, std::string_view name) {
    if (tok.substr(0, name.size()) != name) throw Error(Errc::ParseError, "expected '" + std::string(name) + "'");
    return parse_divisor_values(tok.substr(name.size()));
  };
  if (toks.size() == 3 && toks[0] == "cert" && toks[1] == "positive") return PositiveCertificate{field(toks[2], "q=")};
  if (toks.size() == 4 && toks[0] == "cert" && toks[1] == "negative") {
    auto pi_div = field(toks[2], "pi=");
    std::vector<int> pi(pi_div.chips().begin(), pi_div.chips().end());
    return NegativeCertificate{std::move(pi), field(toks[3], "q=")};
  }
  throw Error(Errc::ParseError, "malformed certificate");
}

}  // namespace divrank

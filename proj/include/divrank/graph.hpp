#pragma once

#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divrank/divisor.hpp"
#include "divrank/error.hpp"
#include "divrank/exact.hpp"

namespace divrank {

struct Edge {
  int u = 0;
  int v = 0;
  std::int64_t multiplicity = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Connected undirected multigraph on vertices 0..n. Immutable once built.
class Multigraph {
 public:
  /// Parallel edges given separately are merged by summing multiplicities.
  static Multigraph from_edges(std::size_t vertex_count, const std::vector<Edge>& edges) {
    if (vertex_count < 2) throw Error(Errc::TooFewVertices, "a graph needs at least 2 vertices");
    Multigraph g;
    g.n_ = vertex_count;
    g.adj_.assign(vertex_count * vertex_count, 0);
    for (const auto& e : edges) {
      if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= vertex_count ||
          static_cast<std::size_t>(e.v) >= vertex_count)
        throw Error(Errc::InvalidVertex,
                    "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") names a missing vertex");
      if (e.u == e.v) throw Error(Errc::SelfLoop, "self-loop at vertex " + std::to_string(e.u));
      if (e.multiplicity <= 0)
        throw Error(Errc::NonPositiveMultiplicity,
                    "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") has multiplicity " +
                        std::to_string(e.multiplicity));
      g.adj_[e.u * vertex_count + e.v] += e.multiplicity;
      g.adj_[e.v * vertex_count + e.u] += e.multiplicity;
    }
    for (std::size_t u = 0; u < vertex_count; ++u)
      for (std::size_t v = u + 1; v < vertex_count; ++v)
        if (g.adj_[u * vertex_count + v] > 0)
          g.edges_.push_back({static_cast<int>(u), static_cast<int>(v), g.adj_[u * vertex_count + v]});
    g.degree_.assign(vertex_count, 0);
    for (std::size_t u = 0; u < vertex_count; ++u)
      for (std::size_t v = 0; v < vertex_count; ++v) g.degree_[u] += g.adj_[u * vertex_count + v];
    if (!g.connected()) throw Error(Errc::DisconnectedGraph, "graph is not connected");
    return g;
  }

  [[nodiscard]] std::size_t vertex_count() const noexcept { return n_; }
  /// Distinct vertex pairs with their (merged) multiplicities, sorted by (u, v) with u < v.
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] std::int64_t multiplicity(std::size_t u, std::size_t v) const { return adj_[u * n_ + v]; }
  [[nodiscard]] std::int64_t degree(std::size_t v) const { return degree_[v]; }
  /// Edge count m, counting multiplicity.
  [[nodiscard]] std::int64_t edge_count() const {
    std::int64_t m = 0;
    for (const auto& e : edges_) m += e.multiplicity;
    return m;
  }

  friend bool operator==(const Multigraph& a, const Multigraph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

 private:
  Multigraph() = default;

  bool connected() const {
    std::vector<char> seen(n_, 0);
    std::queue<std::size_t> todo;
    todo.push(0);
    seen[0] = 1;
    std::size_t count = 1;
    while (!todo.empty()) {
      auto u = todo.front();
      todo.pop();
      for (std::size_t v = 0; v < n_; ++v)
        if (adj_[u * n_ + v] > 0 && !seen[v]) {
          seen[v] = 1;
          ++count;
          todo.push(v);
        }
    }
    return count == n_;
  }

  std::size_t n_ = 0;
  std::vector<std::int64_t> adj_;
  std::vector<std::int64_t> degree_;
  std::vector<Edge> edges_;
};

using LaplacianMatrix = Matrix<std::int64_t>;

/// Q = D(G) - A(G).
inline LaplacianMatrix laplacian(const Multigraph& g) {
  const std::size_t n = g.vertex_count();
  LaplacianMatrix q(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) q(u, v) = u == v ? g.degree(u) : -g.multiplicity(u, v);
  return q;
}

inline std::int64_t genus(const Multigraph& g) {
  return g.edge_count() - static_cast<std::int64_t>(g.vertex_count()) + 1;
}

inline Divisor canonical_divisor(const Multigraph& g) {
  std::vector<std::int64_t> k(g.vertex_count());
  for (std::size_t v = 0; v < k.size(); ++v) k[v] = g.degree(v) - 2;
  return Divisor(std::move(k));
}

/// Laplacian with the row and column of `removed` deleted.
inline Matrix<BigInt> reduced_laplacian(const Multigraph& g, std::size_t removed = 0) {
  const auto q = laplacian(g);
  const std::size_t n = g.vertex_count();
  Matrix<BigInt> r(n - 1, n - 1);
  for (std::size_t i = 0, ri = 0; i < n; ++i) {
    if (i == removed) continue;
    for (std::size_t j = 0, rj = 0; j < n; ++j) {
      if (j == removed) continue;
      r(ri, rj++) = q(i, j);
    }
    ++ri;
  }
  return r;
}

/// Matrix-Tree theorem: any principal cofactor of Q.
inline BigInt spanning_tree_count(const Multigraph& g) {
  return boost::multiprecision::abs(bareiss_determinant(reduced_laplacian(g)));
}

struct PicardStructure {
  std::vector<BigInt> invariant_factors;  // d1 | d2 | ..., units omitted
  BigInt group_order;
};

inline PicardStructure picard_structure(const Multigraph& g) {
  PicardStructure p;
  p.invariant_factors = smith_invariant_factors(reduced_laplacian(g));
  p.group_order = 1;
  for (const auto& d : p.invariant_factors) p.group_order *= d;
  return p;
}

/// The graph with vertex v renamed sigma[v].
inline Multigraph relabel(const Multigraph& g, const std::vector<int>& sigma) {
  if (sigma.size() != g.vertex_count()) throw Error(Errc::DimensionMismatch, "relabeling has wrong length");
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({sigma[e.u], sigma[e.v], e.multiplicity});
  return Multigraph::from_edges(g.vertex_count(), edges);
}

inline Divisor relabel(const Divisor& d, const std::vector<int>& sigma) {
  Divisor out = Divisor::zero(d.size());
  for (std::size_t v = 0; v < d.size(); ++v) out[sigma[v]] = d[v];
  return out;
}

/// Text format:
///   # comment
///   graph <n_vertices> <n_edges>
///   e <u> <v> [multiplicity]
/// One line per distinct edge; errors name the offending line.
inline Multigraph parse_graph(std::string_view text) {
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::vector<Edge> edges;
  std::map<std::pair<int, int>, std::size_t> seen;
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
    auto int_at = [&](std::size_t i) {
      auto v = detail::parse_i64(toks[i]);
      if (!v) throw Error(Errc::ParseError, where + "bad integer '" + std::string(toks[i]) + "'");
      return *v;
    };
    if (toks[0] == "graph") {
      if (header) throw Error(Errc::ParseError, where + "duplicate header");
      if (toks.size() != 3) throw Error(Errc::ParseError, where + "expected 'graph <n_vertices> <n_edges>'");
      auto nv = int_at(1);
      auto ne = int_at(2);
      if (nv < 0 || ne < 0) throw Error(Errc::ParseError, where + "negative count");
      header = {static_cast<std::size_t>(nv), static_cast<std::size_t>(ne)};
    } else if (toks[0] == "e") {
      if (!header) throw Error(Errc::ParseError, where + "edge before 'graph' header");
      if (toks.size() != 3 && toks.size() != 4)
        throw Error(Errc::ParseError, where + "expected 'e <u> <v> [multiplicity]'");
      Edge e{static_cast<int>(int_at(1)), static_cast<int>(int_at(2)), toks.size() == 4 ? int_at(3) : 1};
      if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= header->first ||
          static_cast<std::size_t>(e.v) >= header->first)
        throw Error(Errc::InvalidVertex, where + "vertex out of range");
      auto key = std::minmax(e.u, e.v);
      if (auto it = seen.find(key); it != seen.end())
        throw Error(Errc::ParseError, where + "edge repeats line " + std::to_string(it->second));
      seen[key] = line_no;
      edges.push_back(e);
    } else {
      throw Error(Errc::ParseError, where + "unknown record '" + std::string(toks[0]) + "'");
    }
  }
  if (!header) throw Error(Errc::ParseError, "missing 'graph' header");
  if (edges.size() != header->second)
    throw Error(Errc::ParseError, "header declares " + std::to_string(header->second) + " edges, found " +
                                      std::to_string(edges.size()));
  return Multigraph::from_edges(header->first, edges);
}

inline std::string format_graph(const Multigraph& g) {
  std::string s = "graph " + std::to_string(g.vertex_count()) + " " + std::to_string(g.edges().size()) + "\n";
  for (const auto& e : g.edges())
    s += "e " + std::to_string(e.u) + " " + std::to_string(e.v) + " " + std::to_string(e.multiplicity) + "\n";
  return s;
}

}  // namespace divrank

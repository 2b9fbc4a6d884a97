#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <vector>

#include "divrank/divisor_algebra.hpp"
#include "divrank/graph.hpp"
#include "divrank/polytope.hpp"

namespace divrank {

struct OrientationPoint {
  std::vector<int> permutation;
  Divisor nu;             // indegree - 1 of the induced acyclic orientation
  RationalPoint c_pi;     // projection of nu onto H0
};

/// Calls f(OrientationPoint) for every permutation of the vertices in lexicographic order.
/// Repeated nu values are not filtered.
template <class F>
void for_each_orientation_point(const Multigraph& g, F&& f) {
  std::vector<int> pi(g.vertex_count());
  std::iota(pi.begin(), pi.end(), 0);
  do {
    Divisor nu = orientation_divisor(g, pi);
    RationalPoint c = project_h0(to_rational(nu));
    f(OrientationPoint{pi, std::move(nu), std::move(c)});
  } while (std::next_permutation(pi.begin(), pi.end()));
}

inline std::vector<OrientationPoint> enumerate_orientation_points(const Multigraph& g) {
  std::vector<OrientationPoint> out;
  for_each_orientation_point(g, [&](OrientationPoint p) { out.push_back(std::move(p)); });
  return out;
}

/// One entry per distinct nu, keyed by the lexicographically first permutation producing it.
inline std::vector<OrientationPoint> distinct_orientation_points(const Multigraph& g) {
  std::vector<OrientationPoint> out;
  std::set<Divisor> seen;
  for_each_orientation_point(g, [&](OrientationPoint p) {
    if (seen.insert(p.nu).second) out.push_back(std::move(p));
  });
  return out;
}

}  // namespace divrank

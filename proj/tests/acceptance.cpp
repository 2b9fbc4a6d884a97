// Acceptance runner: one PASS/FAIL line per criterion. Usage: acceptance [--criterion N]

#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "cli_app.hpp"
#include "divrank/divrank.hpp"
#include "oracles.hpp"

using namespace divrank;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << "s";
  return o.str();
}

std::string suite_detail(const SuiteReport& r, double secs) {
  std::ostringstream o;
  o << "checked=" << r.checked << " failures=" << r.failures << " time=" << fmt_seconds(secs);
  for (const auto& e : r.examples) o << " [" << e << "]";
  return o.str();
}

Rational random_rational(std::mt19937_64& gen) {
  const auto num = static_cast<long long>(gen() % 2001) - 1000;
  const auto den = 1 + static_cast<long long>(gen() % 60);
  return Rational(num, den * 10);
}

RationalPoint random_point(std::mt19937_64& gen, std::size_t n1) {
  RationalPoint p(n1);
  for (auto& x : p) x = random_rational(gen);
  return p;
}

Outcome criterion_rr() {
  const auto t0 = Clock::now();
  auto r = riemann_roch_suite(1);
  const double s = seconds_since(t0);
  return {r.failures == 0 && s < 60, suite_detail(r, s)};
}

Outcome criterion_oracle() {
  const auto t0 = Clock::now();
  auto r = oracle_suite();
  const double s = seconds_since(t0);
  return {r.failures == 0 && s < 120, suite_detail(r, s)};
}

// Above the canonical degree both the dispatcher and the sweep must return deg - g.
Outcome criterion_dispatch() {
  std::mt19937_64 gen(3);
  std::size_t checked = 0, failures = 0;
  std::string first;
  for (const auto& [name, g] : corpus()) {
    RankContext ctx(g);
    const auto gg = ctx.genus();
    const auto n = g.vertex_count();
    for (int k = 0; k < 200; ++k) {
      const auto target = 2 * gg - 1 + static_cast<std::int64_t>(gen() % 8);
      Divisor d = Divisor::zero(n);
      for (std::size_t i = 0; i + 1 < n; ++i) d[i] = static_cast<std::int64_t>(gen() % 13) - 6;
      d[n - 1] = target - d.degree();
      const auto want = d.degree() - gg;
      const auto a = rank(ctx, d).rank;
      const auto b = rank_bruteforce(ctx, d).rank;
      ++checked;
      if (a != want || b != want) {
        if (failures++ == 0) first = name + " D=" + join(d);
      }
    }
  }
  return {failures == 0, "checked=" + std::to_string(checked) + " failures=" + std::to_string(failures) +
                             (first.empty() ? "" : " first=" + first)};
}

// deg+(P - Q) = (n+1) d+_k(pi0 P, pi0 Q) + deg(P - Q), k = deg(P - Q)/(n+1), deg P >= deg Q.
Outcome criterion_dplus() {
  std::mt19937_64 gen(4);
  std::size_t checked = 0, failures = 0;
  for (std::size_t n1 : {3u, 4u, 5u}) {
    const Rational dim(static_cast<long long>(n1));
    for (int k = 0; k < 500; ++k) {
      auto p = random_point(gen, n1), q = random_point(gen, n1);
      if (degree(p) < degree(q)) std::swap(p, q);
      const Rational kk = degree(p - q) / dim;
      const bool ok = degree_plus(p - q) == dim * dplus_distance(kk, project_h0(p), project_h0(q)) + degree(p - q);
      ++checked;
      failures += !ok;
    }
  }
  return {failures == 0, "checked=" + std::to_string(checked) + " failures=" + std::to_string(failures)};
}

// Closed-form membership against the convex hull of the vertices w_ij, and the separating
// hyperplane against every vertex for exterior points.
Outcome criterion_polytope() {
  std::mt19937_64 gen(5);
  std::size_t checked = 0, failures = 0, exterior = 0, sep_checked = 0, sep_failures = 0;
  for (std::size_t n1 : {3u, 4u}) {
    for (int s = 0; s < 5; ++s) {
      const Rational r1(1 + static_cast<long long>(gen() % 12), 4);
      const Rational r2(1 + static_cast<long long>(gen() % 12), 4);
      const auto c = project_h0(random_point(gen, n1));
      const PolytopeMN poly{r1, r2, c};
      std::vector<RationalPoint> verts;
      for (const auto& w : polytope_vertices(n1, r1, r2)) verts.push_back(w + c);
      oracle::HullOracle hull(verts);
      const Rational spread = 2 * std::max(r1, r2) * Rational(static_cast<long long>(n1));
      std::size_t ext_here = 0;
      for (int k = 0; k < 100 || ext_here < 100; ++k) {
        RationalPoint q(n1);
        for (auto& x : q) x = spread * Rational(static_cast<long long>(gen() % 2001) - 1000, 1000);
        q = c + project_h0(q);
        const bool inside = polytope_contains(poly, q);
        if (k < 100) {
          ++checked;
          failures += inside != hull.contains(q);
        }
        if (!inside && ext_here < 100) {
          ++ext_here;
          ++sep_checked;
          auto sep = polytope_separate(poly, q);
          bool ok = std::holds_alternative<Hyperplane>(sep);
          if (ok) {
            const auto& h = std::get<Hyperplane>(sep);
            ok = !h.satisfied_by(q);
            for (const auto& w : verts) ok = ok && h.satisfied_by(w);
          }
          sep_failures += !ok;
        }
      }
      exterior += ext_here;
    }
  }
  return {failures == 0 && sep_failures == 0,
          "membership checked=" + std::to_string(checked) + " mismatches=" + std::to_string(failures) +
              " separation checked=" + std::to_string(sep_checked) + " failures=" + std::to_string(sep_failures)};
}

Outcome criterion_duality() {
  const auto t0 = Clock::now();
  auto r = duality_suite(1, 1000);
  const double s = seconds_since(t0);
  return {r.failures == 0, "samples=" + std::to_string(r.checked) + " violations=" + std::to_string(r.failures) +
                               " boundary=" + std::to_string(r.boundary) + " time=" + fmt_seconds(s)};
}

Outcome criterion_picard() {
  std::size_t failures = 0;
  std::ostringstream o;
  for (const auto& [name, g] : corpus()) {
    auto pic = picard_structure(g);
    BigInt prod = 1;
    for (const auto& d : pic.invariant_factors) prod *= d;
    const auto mt = spanning_tree_count(g);
    const auto en = oracle::spanning_trees(g);
    if (prod != mt || mt != BigInt(en)) ++failures, o << " " << name << ":" << prod << "/" << mt << "/" << en;
  }
  auto k4 = picard_structure(complete_graph(4));
  const bool k4ok = k4.group_order == 16 && k4.invariant_factors == std::vector<BigInt>{4, 4};
  return {failures == 0 && k4ok, "graphs=" + std::to_string(corpus().size()) + " failures=" +
                                     std::to_string(failures) + " k4=" + (k4ok ? "16,(4,4)" : "wrong") + o.str()};
}

Outcome criterion_automorphisms() {
  const auto t0 = Clock::now();
  std::size_t maps = 0, passed = 0;
  std::ostringstream o;
  for (std::size_t n1 : {3u, 4u, 5u}) {
    auto rep = sweep_complete_graph_automorphisms(n1, divisors_of(static_cast<std::int64_t>(n1) - 1), 1);
    maps += rep.maps;
    passed += rep.passed;
    o << " K" << n1 << "=" << rep.passed << "/" << rep.maps;
    if (rep.first_failure)
      o << "(first failure pi=" << join(rep.first_failure->pi) << " h=" << rep.first_failure->height << ")";
  }
  const double s = seconds_since(t0);
  return {passed == maps && s < 60,
          "maps=" + std::to_string(maps) + " failed=" + std::to_string(maps - passed) + o.str() +
              " time=" + fmt_seconds(s)};
}

// Every corpus divisor of the oracle range, rank --trace at one and four workers.
Outcome criterion_determinism() {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / ("divrank_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::size_t runs = 0, diffs = 0;
  std::string first;
  for (const auto& [name, g] : corpus()) {
    const auto file = (dir / (name + ".g")).string();
    std::ofstream(file) << format_graph(g);
    const auto gg = genus(g);
    Divisor d = Divisor::zero(g.vertex_count());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == d.size()) {
        if (d.degree() < 0 || d.degree() > std::max<std::int64_t>(gg - 1, 0)) return;
        std::vector<std::string> base{"rank", "--graph", file, "--divisor", join(d, " "), "--trace", "--parallel"};
        std::ostringstream o1, o4, e1, e4;
        auto a1 = base, a4 = base;
        a1.push_back("1");
        a4.push_back("4");
        const int c1 = cli::run(a1, o1, e1), c4 = cli::run(a4, o4, e4);
        ++runs;
        if (c1 != c4 || o1.str() != o4.str() || c1 != 0) {
          if (diffs++ == 0) first = name + " D=" + join(d);
        }
        return;
      }
      for (std::int64_t c = -2; c <= 3; ++c) {
        d[i] = c;
        rec(i + 1);
      }
    };
    rec(0);
  }
  fs::remove_all(dir);
  return {diffs == 0 && runs > 0, "runs=" + std::to_string(runs) + " differing=" + std::to_string(diffs) +
                                      (first.empty() ? "" : " first=" + first)};
}

struct Criterion {
  const char* title;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"riemann-roch suite", criterion_rr},
    {"geometric == bruteforce", criterion_oracle},
    {"high-degree dispatch", criterion_dispatch},
    {"degree-plus identity", criterion_dplus},
    {"polytope membership and separation", criterion_polytope},
    {"duality tiling", criterion_duality},
    {"picard group and spanning trees", criterion_picard},
    {"complete-graph critical automorphisms", criterion_automorphisms},
    {"parallel determinism", criterion_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  constexpr int count = static_cast<int>(std::size(kCriteria));
  if (only < 0 || only > count) {
    std::cerr << "criterion must be in 1.." << count << "\n";
    return 2;
  }
  bool all = true;
  for (int n = 1; n <= count; ++n) {
    if (only != 0 && n != only) continue;
    Outcome o;
    try {
      o = kCriteria[n - 1].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << n << " " << (o.pass ? "PASS" : "FAIL") << " " << kCriteria[n - 1].title << ": "
              << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}

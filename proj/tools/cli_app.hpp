#pragma once

// Command-line front end, callable in-process so tests can drive it without spawning.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "divrank/divrank.hpp"

namespace divrank::cli {

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::BadArgument, "cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Multigraph load_graph(const std::string& path) {
  try {
    return parse_graph(read_file(path));
  } catch (const Error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

struct DivisorInput {
  std::string inline_text;
  std::string file;

  void add_to(CLI::App* cmd) {
    auto* a = cmd->add_option("--divisor", inline_text, "divisor chips, e.g. \"1 0 -1\"");
    auto* b = cmd->add_option("--divisor-file", file, "file with a 'div d0 d1 ...' line");
    a->excludes(b);
  }

  [[nodiscard]] Divisor load() const {
    if (!inline_text.empty()) return parse_divisor_values(inline_text);
    if (!file.empty()) {
      try {
        return parse_divisor_file(read_file(file));
      } catch (const Error& e) {
        throw std::runtime_error(file + ": " + e.what());
      }
    }
    throw UsageError("one of --divisor or --divisor-file is required");
  }
};

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline void print_witness(std::ostream& out, const Witness& w) {
  out << "witness pi=" << join(w.pi) << " q=" << join(w.q) << " degplus=" << w.degplus << "\n";
}

inline std::string format_alphas(const Matrix<std::int64_t>& a) {
  std::string s;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (!s.empty()) s += ",";
      s += std::to_string(a(i, j));
    }
  return s.empty() ? "-" : s;
}

}  // namespace detail

/// Runs the CLI on argv-style arguments (without the program name). Returns the exit code:
/// 0 success, 1 domain/parse/file error or failed verification, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Baker-Norine divisor rank on finite multigraphs", "divrank"};
  app.require_subcommand(1);

  std::string graph_file;
  auto add_graph = [&](CLI::App* cmd) { cmd->add_option("--graph", graph_file, "graph file")->required(); };

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "rank of a divisor");
  add_graph(rank_cmd);
  detail::DivisorInput rank_div;
  rank_div.add_to(rank_cmd);
  std::string method = "geometric";
  bool binary_search = false, trace = false;
  unsigned parallel = 1;
  rank_cmd->add_option("--method", method, "geometric, bruteforce or both")
      ->check(CLI::IsMember({"geometric", "bruteforce", "both"}));
  rank_cmd->add_flag("--binary-search", binary_search, "also decide the rank by binary search on the polytope test");
  rank_cmd->add_flag("--trace", trace, "print the coset minimum for every distinct orientation divisor");
  rank_cmd->add_option("--parallel", parallel, "worker threads for the permutation sweep")->check(CLI::Range(1u, 256u));

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "reduced divisor via Dhar's burning algorithm");
  add_graph(reduce_cmd);
  detail::DivisorInput reduce_div;
  reduce_div.add_to(reduce_cmd);
  std::size_t base = 0;
  reduce_cmd->add_option("--base", base, "base vertex");

  // effective
  auto* eff_cmd = app.add_subcommand("effective", "effectivity test with certificate");
  add_graph(eff_cmd);
  detail::DivisorInput eff_div;
  eff_div.add_to(eff_cmd);

  auto* inv_cmd = app.add_subcommand("invariants", "genus, spanning trees, Picard group, canonical divisor");
  add_graph(inv_cmd);

  auto* crit_cmd = app.add_subcommand("crit", "critical points and covering radius");
  add_graph(crit_cmd);

  // duality-check
  auto* dual_cmd = app.add_subcommand("duality-check", "sampled tiling check");
  add_graph(dual_cmd);
  std::string t_text;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  dual_cmd->add_option("--t", t_text, "arrangement parameter p/q in [0, Cov] (default Cov/2)")
      ->check(CLI::Validator(
          [](std::string& s) { return parse_rational(s) ? std::string() : "not a rational: " + s; }, "RATIONAL"));
  dual_cmd->add_option("--samples", samples, "number of samples");
  dual_cmd->add_option("--seed", seed, "64-bit seed");

  // autocheck
  auto* auto_cmd = app.add_subcommand("autocheck", "verify complete-graph critical automorphisms");
  std::size_t vertices = 4;
  std::vector<std::int64_t> heights;
  std::int64_t alpha_bound = 1;
  auto_cmd->add_option("--vertices", vertices, "n+1, the size of the complete graph")->check(CLI::Range(2, 7));
  auto_cmd->add_option("--height", heights, "heights to test (default: every divisor of n)");
  auto_cmd->add_option("--alpha-bound", alpha_bound, "alpha entries range over [-b, b]")->check(CLI::Range(0, 3));

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run an acceptance suite over the built-in corpus");
  std::string suite;
  std::uint64_t verify_seed = 1;
  verify_cmd->add_option("--suite", suite, "rr, duality or oracle")
      ->required()
      ->check(CLI::IsMember({"rr", "duality", "oracle"}));
  verify_cmd->add_option("--seed", verify_seed, "64-bit seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*rank_cmd) {
      const auto g = detail::load_graph(graph_file);
      const auto d = rank_div.load();
      RankContext ctx(g);
      SweepOptions opts;
      opts.parallel = parallel;
      if (trace)
        opts.trace = [&](const TraceEntry& e) {
          out << "trace pi=" << join(e.pi) << " nu=" << join(e.nu) << " value=" << e.solution.value
              << " x=" << join(e.solution.x) << " q=" << join(e.solution.q) << "\n";
        };
      bool ok = true;
      if (method == "both") {
        const auto geo = rank(ctx, d, RankMethod::geometric, opts);
        const auto bf = rank(ctx, d, RankMethod::bruteforce);
        out << "rank = " << geo.rank << "\n";
        out << "geometric = " << geo.rank << "\n";
        out << "bruteforce = " << bf.rank << "\n";
        out << "agreement = " << detail::yes_no(geo.rank == bf.rank) << "\n";
        if (geo.witness) detail::print_witness(out, *geo.witness);
        ok = geo.rank == bf.rank;
      } else {
        const auto r = rank(ctx, d, method == "geometric" ? RankMethod::geometric : RankMethod::bruteforce, opts);
        out << "rank = " << r.rank << "\n";
        out << "method = " << method_name(r.method) << "\n";
        if (r.witness) detail::print_witness(out, *r.witness);
      }
      if (binary_search) {
        const auto deg = d.degree();
        if (deg < 0 || deg > ctx.genus() - 1) {
          out << "binary_search = skipped\n";
        } else {
          const auto b = rank_by_binary_search(ctx, d);
          const auto direct = rank(ctx, d, RankMethod::geometric).rank;
          out << "binary_search = " << b << "\n";
          ok = ok && b == direct;
        }
      }
      return ok ? 0 : 1;
    }
    if (*reduce_cmd) {
      const auto g = detail::load_graph(graph_file);
      const auto red = reduce_with_burn_order(g, reduce_div.load(), base);
      out << "reduced = " << join(red.reduced, " ") << "\n";
      out << "firing = " << join(red.firing, " ") << "\n";
      out << "burn_order = " << join(red.burn_order, " ") << "\n";
      return 0;
    }
    if (*eff_cmd) {
      const auto g = detail::load_graph(graph_file);
      const auto d = eff_div.load();
      const auto res = is_effective_class(g, d);
      const bool verified = verify_certificate(g, d, res.certificate);
      out << "effective = " << detail::yes_no(res.effective) << "\n";
      out << format_certificate(res.certificate) << "\n";
      out << "verified = " << detail::yes_no(verified) << "\n";
      return verified ? 0 : 1;
    }
    if (*inv_cmd) {
      const auto g = detail::load_graph(graph_file);
      const auto pic = picard_structure(g);
      std::string factors;
      for (const auto& f : pic.invariant_factors) factors += (factors.empty() ? "" : ",") + to_string(f);
      out << "vertices = " << g.vertex_count() << "\n";
      out << "edges = " << g.edge_count() << "\n";
      out << "genus = " << genus(g) << "\n";
      out << "trees = " << to_string(spanning_tree_count(g)) << "\n";
      out << "picard = " << (factors.empty() ? "trivial" : factors) << "\n";
      out << "canonical = " << join(canonical_divisor(g), " ") << "\n";
      return 0;
    }
    if (*crit_cmd) {
      const auto g = detail::load_graph(graph_file);
      CritGeometry geom(g);
      const auto pts = crit_points(g);
      out << "points = " << pts.size() << "\n";
      out << "classes = " << geom.classes().size() << "\n";
      out << "covering_radius = " << to_string(geom.covering_radius()) << "\n";
      for (const auto& [pi, c] : pts) out << "crit pi=" << join(pi) << " c=" << join(c) << "\n";
      return 0;
    }
    if (*dual_cmd) {
      const auto g = detail::load_graph(graph_file);
      CritGeometry geom(g);
      const Rational t = t_text.empty() ? geom.covering_radius() / 2 : *parse_rational(t_text);
      const auto rep = duality_tiling_check(geom, t, samples, seed);
      out << "t = " << to_string(rep.t) << "\n";
      out << "covering_radius = " << to_string(rep.covering_radius) << "\n";
      out << "samples = " << rep.samples << "\n";
      out << "interior_a = " << rep.interior_a << "\n";
      out << "in_b = " << rep.in_b << "\n";
      out << "boundary = " << rep.boundary << "\n";
      out << "violations = " << rep.violations << "\n";
      return rep.violations == 0 ? 0 : 1;
    }
    if (*auto_cmd) {
      if (heights.empty()) heights = divisors_of(static_cast<std::int64_t>(vertices) - 1);
      const auto rep = sweep_complete_graph_automorphisms(vertices, heights, alpha_bound);
      std::string hs;
      for (auto h : rep.heights) hs += (hs.empty() ? "" : ",") + std::to_string(h);
      out << "vertices = " << vertices << "\n";
      out << "heights = " << hs << "\n";
      out << "maps = " << rep.maps << "\n";
      out << "passed = " << rep.passed << "\n";
      out << "failed = " << rep.maps - rep.passed << "\n";
      if (rep.first_failure)
        out << "first_failure pi=" << join(rep.first_failure->pi) << " h=" << rep.first_failure->height
            << " alphas=" << detail::format_alphas(rep.first_failure->alphas) << "\n";
      return rep.passed == rep.maps ? 0 : 1;
    }
    if (*verify_cmd) {
      SuiteReport rep = suite == "rr"       ? riemann_roch_suite(verify_seed)
                        : suite == "oracle" ? oracle_suite()
                                            : duality_suite(verify_seed);
      out << "suite = " << rep.name << "\n";
      out << "checked = " << rep.checked << "\n";
      if (suite == "duality") {
        out << "violations = " << rep.failures << "\n";
        out << "boundary = " << rep.boundary << "\n";
      } else {
        out << "failures = " << rep.failures << "\n";
      }
      for (const auto& e : rep.examples) out << "failure " << e << "\n";
      return rep.failures == 0 ? 0 : 1;
    }
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace divrank::cli

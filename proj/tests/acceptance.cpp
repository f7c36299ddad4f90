// Acceptance run: one line per criterion.
//
//   wallx_acceptance [--expect-fail=1,7]
//
// Exits 0 when the set of failing criteria equals the expected set (empty by
// default).

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "wallx/blockO.hpp"
#include "wallx/corpus.hpp"
#include "wallx/galois.hpp"
#include "wallx/hypercube.hpp"
#include "wallx/ltensor.hpp"
#include "wallx/parabolic.hpp"
#include "wallx/verify.hpp"

using namespace wallx;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

std::set<Root> all_positive(int n) {
  auto r = positive_roots(n);
  return {r.begin(), r.end()};
}

// L(λ) on A, L(sλ) on B, `rest` elsewhere.
BlockModule pattern_cell(int d, Vertex A, Vertex B, const BlockModule& onA, const BlockModule& onB,
                         const BlockModule& rest) {
  BlockModule out;
  for (int s = 0; s < d; ++s) {
    const BlockModule& f = has(A, s) ? onA : has(B, s) ? onB : rest;
    out = s == 0 ? f : tensor(out, f);
  }
  return out;
}

bool cells_match(const HypercubeDiagram& h, const std::function<BlockModule(Vertex, Vertex)>& expect) {
  for (const auto& [k, c] : h.cells) {
    BlockModule e = expect(k.first, k.second);
    if (composition_multiplicities(c) != composition_multiplicities(e) || !is_isomorphic(c, e)) return false;
  }
  return true;
}

Outcome criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  bool single = true, minus_ok = true, dual_ok = true;
  std::string counts;
  for (int d = 1; d <= 3; ++d) {
    BlockModule m = tensor_power(verma(), d);
    auto plus = build_hypercube(m, Sign::Plus);
    std::size_t nz = plus.nonzero_cells();
    counts += (d > 1 ? "," : "") + std::to_string(nz);
    single = single && nz == 1 && is_isomorphic(plus.cell(0, 0), m);
    auto minus = build_hypercube(m, Sign::Minus);
    minus_ok = minus_ok && cells_match(minus, [&](Vertex I, Vertex J) {
                 return pattern_cell(d, I, J, simple_L(), simple_Ls(), verma());
               });
    // Signs swapped for M(sλ): one nonzero column in ⊡^-, the ⊡^+ cells shaped
    // like the ⊡^- cells of M(λ).
    BlockModule ms = tensor_power(simple_Ls(), d);
    auto mp = build_hypercube(ms, Sign::Plus);
    dual_ok = dual_ok && cells_match(mp, [&](Vertex I, Vertex J) {
                return pattern_cell(d, I, J, simple_L(), verma(), simple_Ls());
              });
    auto mm = build_hypercube(ms, Sign::Minus);
    for (const auto& [k, c] : mm.cells) dual_ok = dual_ok && c.is_zero() == (k.first != 0);
  }
  double t = seconds_since(t0);
  Outcome o;
  o.pass = single && minus_ok && dual_ok && t < 5;
  o.detail = std::string("box+ of M^d has ") + counts + " nonzero cells for d=1,2,3 (expected 1 each): " +
             (single ? "ok" : "mismatch") + "; box- cells " + (minus_ok ? "match" : "MISMATCH") +
             "; M(s) dual " + (dual_ok ? "matches" : "MISMATCHES") + "; " + fmt_seconds(t);
  return o;
}

Outcome suite_criterion(const std::string& suite, std::size_t size, double limit) {
  auto t0 = std::chrono::steady_clock::now();
  auto rep = run_suite(suite, 1, size);
  double t = seconds_since(t0);
  Outcome o;
  o.pass = rep.passed() && rep.cases.size() >= size && t < limit;
  o.detail = suite + ": " + std::to_string(rep.cases.size()) + " cases, " + std::to_string(rep.failures()) +
             " failures; " + fmt_seconds(t) + " (limit " + fmt_seconds(limit) + ")";
  return o;
}

Outcome criterion4() {
  auto rep = run_suite("cross-backend", 1);
  std::size_t rows = 0;
  for (const auto& c : rep.cases) rows += c.checks.size() - 1;
  Outcome o;
  o.pass = rep.passed() && rep.cases.size() == 6 && rows == 30;
  o.detail = std::to_string(rep.cases.size()) + " patterns x 5 functors at depth 12, " +
             std::to_string(rep.failures()) + " mismatches";
  return o;
}

Outcome criterion5() {
  bool ok = true;
  double t42 = 0;
  for (int n = 1; n <= 4; ++n)
    for (int d = 1; d <= 2; ++d) {
      auto t0 = std::chrono::steady_clock::now();
      ok = ok && verify_ordweight(n, d);
      if (n == 4 && d == 2) t42 = seconds_since(t0);
    }
  Outcome o;
  o.pass = ok && t42 < 60;
  o.detail = std::string("n<=4, d<=2 ") + (ok ? "all equal" : "MISMATCH") + "; (4,2) in " + fmt_seconds(t42);
  return o;
}

Outcome criterion6() {
  std::ostringstream os;
  bool ok = true;
  for (int n = 1; n <= 5; ++n) {
    auto B = StandardParabolic::borel(n);
    std::size_t full = refinements(make_closed(all_positive(n), B)).size();
    std::size_t none = refinements(make_closed({}, B)).size();
    std::size_t fact = 1;
    for (int k = 2; k <= n; ++k) fact *= static_cast<std::size_t>(k);
    ok = ok && full == 1 && none == fact;
  }
  os << "C=R+ gives 1, C=0 gives n! for n<=5: " << (ok ? "ok" : "MISMATCH");

  auto f3 = fss_diagram(TriangulineSkeleton::standard(3, 1, {{1, 2}}));
  std::set<std::string> src;
  for (auto i : f3.sources()) src.insert(f3.node_text(i));
  std::set<std::set<std::string>> comps;
  for (const auto& c : f3.components()) {
    std::set<std::string> names;
    for (auto i : c) names.insert(f3.node_text(i));
    comps.insert(names);
  }
  bool efs3 = src == std::set<std::string>{"φ", "s2φ", "s2s1φ"} &&
              comps == std::set<std::set<std::string>>{{"φ", "s1φ"}, {"s2φ"}, {"s2s1φ", "s2s1s2φ"}};
  os << "; n=3 C={e1-e2}: " << src.size() << " refinements " << (efs3 ? "with the stated labels" : "MISMATCH");

  auto f4 = fss_diagram(TriangulineSkeleton::standard(4, 1, all_positive(4)));
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& e : f4.edges) edges.insert({f4.node_text(e.from), f4.node_text(e.to)});
  bool efs4 = f4.nodes.size() == 5 && f4.edges.size() == 5 &&
              edges == std::set<std::pair<std::string, std::string>>{
                           {"φ", "s1φ"}, {"φ", "s2φ"}, {"φ", "s3φ"}, {"s1φ", "s1s3φ"}, {"s3φ", "s1s3φ"}};
  os << "; n=4 fss: " << f4.nodes.size() << " nodes, " << f4.edges.size() << " edges "
     << (efs4 ? "as drawn" : "MISMATCH");
  return {ok && efs3 && efs4, os.str()};
}

Outcome criterion7() {
  auto s = TriangulineSkeleton::standard(2, 2, {});
  auto counts = expected_tables(s, "constituent_counts").values;
  std::size_t factors = composition_length(diamond(2, {1, 1, 1, 1}));
  long sb21 = expected_tables(s, "surplus_bound", {{"n", "2"}, {"d", "1"}}).values[0];
  long sb31 = expected_tables(s, "surplus_bound", {{"n", "3"}, {"d", "1"}}).values[0];
  bool counts_ok = counts == std::vector<long>{8, 15};
  Outcome o;
  o.pass = counts_ok && factors == 8 && sb21 == 1 && sb31 == 3;
  o.detail = "constituent_counts(2) = (" + std::to_string(counts[0]) + ", " + std::to_string(counts[1]) +
             "); diamond has " + std::to_string(factors) + " composition factors; surplus_bound(2,1) = " +
             std::to_string(sb21) + "; surplus_bound(3,1) = " + std::to_string(sb31) + " (expected 3)";
  return o;
}

Outcome criterion8() {
  bool modules = true;
  for (const auto& m : single_factor_corpus(8, 30)) {
    std::string js = module_to_json(m);
    modules = modules && module_to_json(module_from_json(js)) == js;
  }
  for (const auto& m : two_factor_corpus(8, 10)) {
    std::string js = module_to_json(m);
    modules = modules && module_to_json(module_from_json(js)) == js;
  }
  bool cubes = true;
  for (const auto& m : two_factor_corpus(8, 5))
    for (Sign sg : {Sign::Plus, Sign::Minus}) {
      auto h = build_hypercube(m, sg);
      std::string js = hypercube_to_json(h);
      auto back = hypercube_from_json(js);
      cubes = cubes && hypercube_to_json(back) == js && hypercube_to_dot(back) == hypercube_to_dot(h);
    }
  std::string a = report_to_json(run_suites("all", 3, 12));
  std::string b = report_to_json(run_suites("all", 3, 12, false));
  bool reports = a == b;
  Outcome o;
  o.pass = modules && cubes && reports;
  o.detail = std::string("module JSON ") + (modules ? "round-trips" : "DIFFERS") + "; hypercube exports " +
             (cubes ? "round-trip" : "DIFFER") + "; verify reports " + (reports ? "byte-identical" : "DIFFER");
  return o;
}

std::set<int> parse_expected(const std::string& arg) {
  std::set<int> out;
  std::stringstream ss(arg);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.insert(std::stoi(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    const std::string key = "--expect-fail=";
    if (a.rfind(key, 0) == 0) {
      expected = parse_expected(a.substr(key.size()));
    } else {
      std::cerr << "usage: wallx_acceptance [--expect-fail=1,7]\n";
      return 1;
    }
  }
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"worked Verma examples", criterion1},
      {"appendix lemmas", [] { return suite_criterion("appendixA", 100, 30); }},
      {"functor laws", [] { return suite_criterion("functor-laws", 50, 120); }},
      {"cross-backend oracle", criterion4},
      {"ordinary weights", criterion5},
      {"refinement counts", criterion6},
      {"prediction tables", criterion7},
      {"determinism and round-trips", criterion8},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  "
              << o.detail << std::endl;
  }
  if (!expected.empty()) {
    std::cout << "expected failures:";
    for (int e : expected) std::cout << ' ' << e;
    std::cout << (failed == expected ? "  (matched)" : "  (NOT matched)") << std::endl;
  }
  return failed == expected ? 0 : 1;
}

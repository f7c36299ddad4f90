#include "wallx/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <future>
#include <random>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "wallx/blockO.hpp"
#include "wallx/corpus.hpp"
#include "wallx/hypercube.hpp"
#include "wallx/ltensor.hpp"
#include "wallx/weightmodel.hpp"

namespace wallx {

using nlohmann::json;

bool CaseResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

bool SuiteReport::passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return !c.passed(); }));
}

std::vector<std::string> suite_names() {
  return {"appendixA", "functor-laws", "hypercube-edges", "ordweight", "cross-backend"};
}

std::size_t default_size(const std::string& suite) {
  if (suite == "appendixA") return 100;
  if (suite == "functor-laws") return 50;
  if (suite == "hypercube-edges") return 20;
  return 0;
}

namespace {

using Job = std::function<CaseResult()>;

std::vector<CaseResult> run_jobs(const std::vector<Job>& jobs, bool parallel) {
  std::vector<CaseResult> out(jobs.size());
  auto guarded = [&](std::size_t i) {
    try {
      out[i] = jobs[i]();
    } catch (const std::exception& e) {
      out[i].checks.push_back({"no exception", false});
      out[i].detail = e.what();
    }
  };
  if (!parallel) {
    for (std::size_t i = 0; i < jobs.size(); ++i) guarded(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
  std::vector<std::future<void>> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.push_back(std::async(std::launch::async, [&]() {
      for (std::size_t i; (i = next++) < jobs.size();) guarded(i);
    }));
  for (auto& f : pool) f.get();
  return out;
}

bool zero_dims(const Subspaces& s) {
  auto d = dimensions(s);
  return std::all_of(d.begin(), d.end(), [](std::size_t x) { return x == 0; });
}

bool same_dims(const Subspaces& a, const Subspaces& b) { return dimensions(a) == dimensions(b); }

CaseResult appendix_case(const BlockModule& m, std::size_t idx) {
  CaseResult r;
  r.name = "module " + std::to_string(idx) + " " + multiplicities_string(composition_multiplicities(m), 1);
  const Vertex X = 1;
  BlockModule tm = theta(X, m);
  ModuleMap io = iota_total(X, m);
  ModuleMap ka = kappa_total(X, m);
  Subspaces fin = finite_part(X, m);
  bool no_finite = zero_dims(fin);

  r.checks.push_back({"injlemm (1)", equal(kernel(io, m), fin)});
  BlockModule coker = quotient(m, image(ka, m)).module;
  r.checks.push_back({"injlemm (2)", coker.dims[1] == 0});

  Subspaces sharp_sub = vartheta_plus_subspace(X, m);
  Subspaces im_iota = image(io, tm);
  r.checks.push_back({"Alem2", contains(sharp_sub, im_iota) && dimensions(sharp_sub)[1] == dimensions(im_iota)[1]});

  if (no_finite) {
    SharpFlat sf = sharp_flat(m);
    r.checks.push_back({"traexseq", sf.hypothesis_holds && sf.exact});
  }

  r.checks.push_back({"lmnoalg", zero_dims(finite_part(X, tm)) && finite_quotient(X, tm).is_zero()});

  // (1) ι: M^♯ → (M^♯)^♯.
  Restricted sharp = restrict_to(tm, sharp_sub);
  {
    ModuleMap i2 = iota_total(X, sharp.module);
    BlockModule t2 = theta(X, sharp.module);
    Subspaces ss = vartheta_plus_subspace(X, sharp.module);
    Subspaces im = image(i2, t2);
    r.checks.push_back({"lemsharp (1)", zero_dims(kernel(i2, sharp.module)) && contains(ss, im) && same_dims(ss, im)});
  }
  // (2) κ: (M^♭)^♭ → M^♭.
  Subspaces flat_sub = vartheta_minus_subspace(X, m);
  Restricted flat = restrict_to(m, flat_sub);
  r.checks.push_back({"lemsharp (2)", equal(vartheta_minus_subspace(X, flat.module), full_subspaces(flat.module))});
  // (3) M^♭ → (M^♯)^♭ through ι.
  if (no_finite) {
    Subspaces a = apply_map(io, flat_sub);
    Subspaces b = apply_map(sharp.inclusion, vartheta_minus_subspace(X, sharp.module));
    r.checks.push_back({"lemsharp (3)", equal(a, b) && same_dims(a, flat_sub)});
  }
  // (4) (M^♭)^♯ → M^♯ through Θ of the inclusion.
  {
    ModuleMap ti = theta_map(X, flat.inclusion);
    Subspaces src = vartheta_plus_subspace(X, flat.module);
    Subspaces a = apply_map(ti, src);
    r.checks.push_back({"lemsharp (4)", equal(a, sharp_sub) && same_dims(a, src)});
  }
  r.detail = no_finite ? "finite part zero" : "finite part nonzero; traexseq and lemsharp (3) not applicable";
  return r;
}

CaseResult functor_case(const BlockModule& m, std::size_t idx, std::uint64_t seed) {
  CaseResult r;
  r.name = "module " + std::to_string(idx) + " " + multiplicities_string(composition_multiplicities(m), 2);
  const Vertex s = 1, t = 2, st = 3;
  auto vp = [](Vertex I, const BlockModule& x) { return vartheta_plus(I, x); };
  auto vm = [](Vertex I, const BlockModule& x) { return vartheta_minus(I, x); };
  for (auto [name, f] : {std::pair{std::string("vartheta+"), std::function<BlockModule(Vertex, const BlockModule&)>(vp)},
                         std::pair{std::string("vartheta-"), std::function<BlockModule(Vertex, const BlockModule&)>(vm)}}) {
    BlockModule a = f(s, f(t, m)), b = f(t, f(s, m));
    r.checks.push_back({name + " commute", is_isomorphic(a, b) && is_isomorphic(a, f(st, m))});
    bool idem = true;
    for (Vertex x : {s, t}) {
      BlockModule once = f(x, m);
      idem = idem && is_isomorphic(f(x, once), once);
    }
    r.checks.push_back({name + " idempotent", idem});
  }
  BlockModule n2 = nabla_minus(st, m);
  r.checks.push_back({"nabla- product", is_isomorphic(n2, nabla_minus(s, nabla_minus(t, m))) &&
                                            is_isomorphic(n2, nabla_minus(t, nabla_minus(s, m)))});

  std::mt19937_64 rng(seed * 1000003u + idx);
  bool exact = true;
  for (Vertex X = 1; X < 4; ++X) {
    Subspaces sub = random_submodule(m, rng, 2);
    auto inc = restrict_to(m, sub);
    auto quo = quotient(m, sub);
    auto ti = theta_map(X, inc.inclusion);
    auto tp = theta_map(X, quo.projection);
    exact = exact && exact_at_middle(ti, tp, theta(X, m)) && ti.rank() == theta(X, inc.module).total_dim() &&
            tp.rank() == theta(X, quo.module).total_dim();
  }
  r.checks.push_back({"theta exact", exact});

  for (Sign sg : {Sign::Plus, Sign::Minus}) {
    std::string name = "edge sequences " + sign_string(sg);
    try {
      auto h = build_hypercube(m, sg, false);
      bool ok = std::all_of(h.sequences.begin(), h.sequences.end(), [](const auto& e) { return e.exact; });
      r.checks.push_back({name, ok && h.sequences.size() == 6});
    } catch (const ExactnessViolation& e) {
      r.checks.push_back({name, false});
      r.detail = e.what();
    }
  }
  return r;
}

CaseResult hypercube_case(const BlockModule& m, const std::string& label) {
  CaseResult r;
  r.name = label;
  for (Sign sg : {Sign::Plus, Sign::Minus}) {
    std::string name = "box" + sign_string(sg);
    if (sg == Sign::Plus && !is_strict(m)) continue;
    try {
      auto h = build_hypercube(m, sg, false);
      bool ok = std::all_of(h.sequences.begin(), h.sequences.end(), [](const auto& e) { return e.exact; });
      r.checks.push_back({name + " sequences exact", ok});
      r.checks.push_back({name + " squares commute", h.squares > 0});
      r.detail += (r.detail.empty() ? "" : "; ") + name + ": " + std::to_string(h.sequences.size()) + " sequences, " +
                  std::to_string(h.squares) + " squares";
    } catch (const ExactnessViolation& e) {
      r.checks.push_back({name + " sequences exact", false});
      r.detail += std::string(e.what());
    }
  }
  return r;
}

std::string multiplicities_brief(const Multiplicities& m) {
  if (m.empty()) return "0";
  return multiplicities_string(m, 1);
}

}  // namespace

SuiteReport run_suite(const std::string& suite, std::uint64_t seed, std::size_t size, bool parallel) {
  SuiteReport rep;
  rep.suite = suite;
  rep.seed = seed;
  if (size == 0) size = default_size(suite);
  std::vector<Job> jobs;
  if (suite == "appendixA") {
    auto corpus = single_factor_corpus(seed, size, 12, true);
    for (std::size_t i = 0; i < corpus.size(); ++i) jobs.push_back([m = corpus[i], i]() { return appendix_case(m, i); });
  } else if (suite == "functor-laws") {
    auto corpus = two_factor_corpus(seed, size, 10);
    for (std::size_t i = 0; i < corpus.size(); ++i)
      jobs.push_back([m = corpus[i], i, seed]() { return functor_case(m, i, seed); });
  } else if (suite == "hypercube-edges") {
    auto corpus = two_factor_corpus(seed, size, 10);
    for (std::size_t i = 0; i < corpus.size(); ++i)
      jobs.push_back([m = corpus[i], i]() { return hypercube_case(m, "module " + std::to_string(i)); });
    jobs.push_back([]() { return hypercube_case(tensor_power(verma(), 3), "M x M x M"); });
    jobs.push_back([]() { return hypercube_case(tensor(tensor(dual_verma(), verma()), simple_Ls()), "Mv x M x Ls"); });
    jobs.push_back([]() { return hypercube_case(tensor(big_projective(), verma()), "P x M"); });
  } else if (suite == "ordweight") {
    for (int n = 2; n <= 4; ++n)
      for (int d = 1; d <= 2; ++d)
        jobs.push_back([n, d]() {
          CaseResult r;
          r.name = "n=" + std::to_string(n) + " d=" + std::to_string(d);
          auto ord = ordinary_weights(n, d);
          std::size_t fact = 1;
          for (int k = 2; k <= n; ++k) fact *= static_cast<std::size_t>(k);
          r.checks.push_back({"multiplicity one = ordinary", verify_ordweight(n, d)});
          r.checks.push_back({"n! ordinary weights", ord.size() == fact});
          r.detail = std::to_string(ord.size()) + " ordinary weights";
          return r;
        });
  } else if (suite == "cross-backend") {
    for (const auto& name : wm_pattern_names())
      jobs.push_back([name]() {
        CaseResult r;
        r.name = name;
        auto cmp = wm_compare(name, 12);
        r.checks.push_back({"conclusive at depth 12", cmp.conclusive});
        for (const auto& row : cmp.rows) {
          r.checks.push_back({row.functor, row.equal});
          r.detail += (r.detail.empty() ? "" : "; ") + row.functor + " " + multiplicities_brief(row.block);
        }
        return r;
      });
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  rep.size = jobs.size();
  rep.cases = run_jobs(jobs, parallel);
  return rep;
}

std::vector<SuiteReport> run_suites(const std::string& suite, std::uint64_t seed, std::size_t size, bool parallel) {
  if (suite != "all") return {run_suite(suite, seed, size, parallel)};
  std::vector<SuiteReport> out;
  for (const auto& s : suite_names()) out.push_back(run_suite(s, seed, size, parallel));
  return out;
}

std::string report_to_json(const std::vector<SuiteReport>& reports) {
  json suites = json::array();
  bool all = true;
  for (const auto& rep : reports) {
    json cases = json::array();
    for (const auto& c : rep.cases) {
      json checks = json::object();
      for (const auto& [k, v] : c.checks) checks[k] = v;
      cases.push_back({{"name", c.name}, {"passed", c.passed()}, {"checks", checks}, {"detail", c.detail}});
    }
    suites.push_back({{"suite", rep.suite},
                      {"seed", rep.seed},
                      {"cases", cases},
                      {"size", rep.size},
                      {"failures", rep.failures()},
                      {"passed", rep.passed()}});
    all = all && rep.passed();
  }
  return json{{"passed", all}, {"suites", suites}}.dump(2);
}

}  // namespace wallx

#include "wallx/parabolic.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace wallx {

using nlohmann::json;

StandardParabolic::StandardParabolic(std::vector<int> comp) : composition(std::move(comp)) {
  if (composition.empty()) throw std::invalid_argument("empty composition");
  for (int c : composition)
    if (c <= 0) throw std::invalid_argument("composition parts must be positive");
}

StandardParabolic StandardParabolic::borel(int n) { return StandardParabolic(std::vector<int>(n, 1)); }

StandardParabolic StandardParabolic::full(int n) { return StandardParabolic(std::vector<int>{n}); }

StandardParabolic StandardParabolic::from_simple_roots(int n, const std::set<Root>& simple) {
  std::vector<int> comp;
  int run = 1;
  for (int i = 1; i < n; ++i) {
    if (simple.count({i, i + 1})) {
      ++run;
    } else {
      comp.push_back(run);
      run = 1;
    }
  }
  comp.push_back(run);
  return StandardParabolic(comp);
}

int StandardParabolic::n() const { return std::accumulate(composition.begin(), composition.end(), 0); }

std::vector<int> StandardParabolic::block_map() const {
  std::vector<int> beta;
  for (int b = 0; b < k(); ++b)
    for (int t = 0; t < composition[b]; ++t) beta.push_back(b + 1);
  return beta;
}

std::set<Root> StandardParabolic::simple() const {
  auto beta = block_map();
  std::set<Root> s;
  for (int i = 1; i < n(); ++i)
    if (beta[i - 1] == beta[i]) s.insert({i, i + 1});
  return s;
}

std::set<Root> StandardParabolic::positive() const {
  auto beta = block_map();
  std::set<Root> s;
  for (int i = 1; i <= n(); ++i)
    for (int j = i + 1; j <= n(); ++j)
      if (beta[i - 1] == beta[j - 1]) s.insert({i, j});
  return s;
}

std::set<Root> ClosedRootSet::all() const {
  std::set<Root> c = P.positive();
  c.insert(extra.begin(), extra.end());
  return c;
}

bool is_closed_relative(const std::set<Root>& C, const StandardParabolic& P) {
  int n = P.n();
  for (const auto& r : C)
    if (!r.positive() || r.j > n || r.i < 1) return false;
  for (const auto& r : P.positive())
    if (!C.count(r)) return false;
  for (const auto& a : C)
    for (const auto& b : C)
      if (a.j == b.i && !C.count({a.i, b.j})) return false;
  auto levi = P.positive();
  for (const auto& s : P.simple()) {
    Perm w = simple_reflection(n, s.i);
    for (const auto& r : C) {
      if (levi.count(r)) continue;
      Root t = apply_root(w, r);
      if (!t.positive() || levi.count(t) || !C.count(t)) return false;
    }
  }
  return true;
}

ClosedRootSet make_closed(const std::set<Root>& C, const StandardParabolic& P) {
  std::set<Root> full = C;
  for (const auto& r : P.positive()) full.insert(r);
  if (!is_closed_relative(full, P)) throw std::invalid_argument("root set is not closed relative to P");
  ClosedRootSet out{P, {}};
  auto levi = P.positive();
  for (const auto& r : full)
    if (!levi.count(r)) out.extra.insert(r);
  return out;
}

std::vector<Perm> wtilde_weyl(const ClosedRootSet& C, const Bounds& b) {
  int n = C.n();
  std::vector<Perm> out;
  auto simple = C.P.simple();
  std::set<Root> S;
  for (const auto& r : simple_roots(n)) S.insert(r);
  for (const auto& w : weyl_enumerate(n, b)) {
    bool ok = true;
    for (const auto& r : simple)
      if (!S.count(apply_root(w, r))) {
        ok = false;
        break;
      }
    for (const auto& r : C.extra) {
      if (!ok) break;
      if (!apply_root(w, r).positive()) ok = false;
    }
    if (ok) out.push_back(w);
  }
  return out;
}

Perm natural_bijection(const Perm& w, const StandardParabolic& P) {
  auto beta = P.block_map();
  int k = P.k();
  std::vector<int> image_min(k, 1 << 30);
  for (int i = 1; i <= P.n(); ++i) image_min[beta[i - 1] - 1] = std::min(image_min[beta[i - 1] - 1], w[i - 1]);
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int c) { return image_min[a] < image_min[c]; });
  Perm out(k);
  for (int r = 0; r < k; ++r) out[order[r]] = r + 1;
  return out;
}

std::vector<Perm> refinements(const ClosedRootSet& C, const Bounds& b) {
  if (C.P.k() != C.n()) throw std::invalid_argument("refinements require P = B");
  int n = C.n();
  if (n > b.refine_n)
    throw BoundsExceeded("refinement bound exceeded: n=" + std::to_string(n) + " > " +
                         std::to_string(b.refine_n));
  std::vector<std::vector<int>> before(n + 1);  // before[j]: labels that must precede j
  for (const auto& r : C.extra) before[r.j].push_back(r.i);
  std::vector<Perm> out;
  std::vector<int> seq;
  std::vector<bool> used(n + 1, false);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(seq.size()) == n) {
      Perm w(n);
      for (int pos = 0; pos < n; ++pos) w[seq[pos] - 1] = pos + 1;
      out.push_back(w);
      return;
    }
    for (int x = 1; x <= n; ++x) {
      if (used[x]) continue;
      bool ready = true;
      for (int y : before[x])
        if (!used[y]) ready = false;
      if (!ready) continue;
      used[x] = true;
      seq.push_back(x);
      rec();
      seq.pop_back();
      used[x] = false;
    }
  };
  rec();
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<StandardParabolic, ClosedRootSet> reorder_filtration(const ClosedRootSet& C, const Perm& w) {
  auto members = wtilde_weyl(C);
  if (!std::binary_search(members.begin(), members.end(), w))
    throw std::invalid_argument("element is not in the admissible Weyl subset");
  int n = C.n();
  std::set<Root> simple;
  for (const auto& r : C.P.simple()) simple.insert(apply_root(w, r));
  StandardParabolic P2 = StandardParabolic::from_simple_roots(n, simple);
  std::set<Root> moved;
  for (const auto& r : C.all()) moved.insert(apply_root(w, r));
  ClosedRootSet C2{P2, {}};
  auto levi = P2.positive();
  for (const auto& r : moved)
    if (!levi.count(r)) C2.extra.insert(r);
  return {P2, C2};
}

std::set<Root> parse_root_list(const std::string& s, int n) {
  std::set<Root> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    auto comma = item.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("root pair needs 'i,j': " + item);
    auto number = [&](const std::string& t) {
      auto a = t.find_first_not_of(" \t");
      auto z = t.find_last_not_of(" \t");
      if (a == std::string::npos) throw std::invalid_argument("malformed root pair: " + item);
      std::string core = t.substr(a, z - a + 1);
      if (core.size() > 6 || core.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("malformed root pair: " + item);
      return std::stoi(core);
    };
    int i = number(item.substr(0, comma));
    int j = number(item.substr(comma + 1));
    if (i < 1 || j < 1 || i > n || j > n || i >= j)
      throw std::invalid_argument("root pair must satisfy 1 <= i < j <= n: " + item);
    out.insert({i, j});
  }
  return out;
}

std::string closed_set_to_json(const ClosedRootSet& C) {
  json arr = json::array();
  for (const auto& r : C.all()) arr.push_back({r.i, r.j});
  return arr.dump();
}

ClosedRootSet closed_set_from_json(const std::string& s, const StandardParabolic& P) {
  std::set<Root> c;
  for (const auto& pr : json::parse(s)) c.insert({pr.at(0).get<int>(), pr.at(1).get<int>()});
  return make_closed(c, P);
}

}  // namespace wallx

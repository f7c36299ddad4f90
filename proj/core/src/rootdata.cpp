#include "wallx/rootdata.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace wallx {

using nlohmann::json;

Bounds Bounds::from_env() {
  Bounds b;
  const char* env = std::getenv("WALLX_BOUNDS");
  if (!env || !*env) return b;
  std::string s(env);
  if (s.find('=') == std::string::npos) {
    int k = std::atoi(s.c_str());
    if (k > 1) {
      b.weyl_n += k - 1;
      b.ltensor_n += k - 1;
      b.ltensor_d += k - 1;
      b.refine_n += k - 1;
    }
    return b;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    std::string key = item.substr(0, eq);
    int v = std::atoi(item.c_str() + eq + 1);
    if (v <= 0) continue;
    if (key == "weyl_n") b.weyl_n = v;
    else if (key == "ltensor_n") b.ltensor_n = v;
    else if (key == "ltensor_d") b.ltensor_d = v;
    else if (key == "refine_n") b.refine_n = v;
  }
  return b;
}

Embeddings::Embeddings(std::size_t d) {
  if (d == 0) throw std::invalid_argument("at least one embedding is required");
  for (std::size_t i = 0; i < d; ++i) labels.push_back("s" + std::to_string(i + 1));
}

Embeddings::Embeddings(std::vector<std::string> l) : labels(std::move(l)) {
  if (labels.empty()) throw std::invalid_argument("at least one embedding is required");
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("embedding labels must be distinct");
}

std::vector<Root> positive_roots(int n) {
  std::vector<Root> r;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) r.push_back({i, j});
  return r;
}

std::vector<Root> all_roots(int n) {
  std::vector<Root> r;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) r.push_back({i, j});
  return r;
}

std::vector<Root> simple_roots(int n) {
  std::vector<Root> r;
  for (int i = 1; i < n; ++i) r.push_back({i, i + 1});
  return r;
}

int inner(const Root& a, const Root& b) {
  return (a.i == b.i) - (a.i == b.j) - (a.j == b.i) + (a.j == b.j);
}

Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw std::invalid_argument("permutation size mismatch");
  Perm c(a.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i] - 1];
  return c;
}

Perm perm_inverse(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i] - 1] = static_cast<int>(i) + 1;
  return q;
}

Perm simple_reflection(int n, int i) {
  if (i < 1 || i >= n) throw std::invalid_argument("simple reflection index out of range");
  Perm p = perm_identity(n);
  std::swap(p[i - 1], p[i]);
  return p;
}

bool perm_valid(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    if (x < 1 || x > static_cast<int>(p.size()) || seen[x - 1]) return false;
    seen[x - 1] = true;
  }
  return true;
}

int perm_length(const Perm& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv;
}

std::vector<int> reduced_word(const Perm& p0) {
  Perm p = p0;
  std::vector<int> rev;
  int n = static_cast<int>(p.size());
  while (true) {
    int desc = 0;
    for (int i = 1; i < n; ++i)
      if (p[i - 1] > p[i]) {
        desc = i;
        break;
      }
    if (!desc) break;
    rev.push_back(desc);
    p = perm_compose(p, simple_reflection(n, desc));
  }
  return std::vector<int>(rev.rbegin(), rev.rend());
}

std::string word_string(const std::vector<int>& word) {
  std::string s;
  for (int i : word) s += "s" + std::to_string(i);
  return s;
}

Root apply_root(const Perm& w, const Root& r) { return {w[r.i - 1], w[r.j - 1]}; }

Weight::Weight(std::size_t d, std::size_t n) : rows(d, std::vector<long>(n, 0)) {}

Weight::Weight(std::vector<std::vector<long>> r) : rows(std::move(r)) {
  for (const auto& row : rows)
    if (row.size() != rows[0].size()) throw std::invalid_argument("weight rows must have equal length");
}

WeylElement::WeylElement(std::vector<Perm> p) : perms(std::move(p)) {
  for (const auto& q : perms) {
    if (!perm_valid(q)) throw std::invalid_argument("not a permutation");
    if (q.size() != perms[0].size()) throw std::invalid_argument("permutation size mismatch");
  }
}

WeylElement WeylElement::identity(std::size_t d, int n) {
  return WeylElement(std::vector<Perm>(d, perm_identity(n)));
}

WeylElement WeylElement::operator*(const WeylElement& rhs) const {
  if (d() != rhs.d()) throw std::invalid_argument("embedding count mismatch");
  WeylElement out;
  for (std::size_t s = 0; s < d(); ++s) out.perms.push_back(perm_compose(perms[s], rhs.perms[s]));
  return out;
}

Weight theta(std::size_t d, int n) {
  Weight t(d, n);
  for (auto& row : t.rows)
    for (int i = 0; i < n; ++i) row[i] = n - 1 - i;
  return t;
}

static void check_shape(const WeylElement& w, const Weight& l) {
  if (w.d() != l.d() || static_cast<std::size_t>(w.n()) != l.n())
    throw std::invalid_argument("Weyl element and weight shapes differ");
}

Weight apply(const WeylElement& w, const Weight& lambda) {
  check_shape(w, lambda);
  Weight out(lambda.d(), lambda.n());
  for (std::size_t s = 0; s < lambda.d(); ++s)
    for (std::size_t i = 0; i < lambda.n(); ++i) out.rows[s][w.perms[s][i] - 1] = lambda.rows[s][i];
  return out;
}

Weight dot_action(const WeylElement& w, const Weight& lambda) {
  check_shape(w, lambda);
  Weight t = theta(lambda.d(), static_cast<int>(lambda.n()));
  Weight shifted = lambda;
  for (std::size_t s = 0; s < lambda.d(); ++s)
    for (std::size_t i = 0; i < lambda.n(); ++i) shifted.rows[s][i] += t.rows[s][i];
  Weight out = apply(w, shifted);
  for (std::size_t s = 0; s < lambda.d(); ++s)
    for (std::size_t i = 0; i < lambda.n(); ++i) out.rows[s][i] -= t.rows[s][i];
  return out;
}

bool is_dominant(const Weight& lambda) {
  for (const auto& row : lambda.rows)
    for (std::size_t i = 0; i + 1 < row.size(); ++i)
      if (row[i] < row[i + 1]) return false;
  return true;
}

bool is_strictly_dominant(const Weight& lambda) {
  for (const auto& row : lambda.rows)
    for (std::size_t i = 0; i + 1 < row.size(); ++i)
      if (row[i] <= row[i + 1]) return false;
  return true;
}

std::vector<Perm> weyl_enumerate(int n, const Bounds& b) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n > b.weyl_n)
    throw BoundsExceeded("Weyl enumeration bound exceeded: n=" + std::to_string(n) +
                         " > " + std::to_string(b.weyl_n));
  std::vector<Perm> out;
  Perm p = perm_identity(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<WeylElement> weyl_enumerate(std::size_t d, int n, const Bounds& b) {
  auto single = weyl_enumerate(n, b);
  std::vector<WeylElement> out{WeylElement()};
  for (std::size_t s = 0; s < d; ++s) {
    std::vector<WeylElement> next;
    for (const auto& w : out)
      for (const auto& p : single) {
        WeylElement x = w;
        x.perms.push_back(p);
        next.push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

std::set<Weight> orbit(const std::vector<WeylElement>& ws, const Weight& lambda) {
  std::set<Weight> out;
  for (const auto& w : ws) out.insert(apply(w, lambda));
  return out;
}

std::string weight_to_json(const Weight& w) { return json(w.rows).dump(); }

Weight weight_from_json(const std::string& s) {
  return Weight(json::parse(s).get<std::vector<std::vector<long>>>());
}

std::string weyl_to_json(const WeylElement& w) { return json(w.perms).dump(); }

WeylElement weyl_from_json(const std::string& s) {
  return WeylElement(json::parse(s).get<std::vector<Perm>>());
}

}  // namespace wallx

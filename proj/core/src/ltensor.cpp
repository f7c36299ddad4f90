#include "wallx/ltensor.hpp"

#include <stdexcept>

namespace wallx {

namespace {

void check_bounds(int n, int d, const Bounds& b) {
  if (n < 1 || d < 1) throw std::invalid_argument("n and d must be positive");
  if (n > b.ltensor_n || d > b.ltensor_d)
    throw BoundsExceeded("ltensor bound exceeded: (n,d)=(" + std::to_string(n) + "," +
                         std::to_string(d) + "), limits (" + std::to_string(b.ltensor_n) + "," +
                         std::to_string(b.ltensor_d) + ")");
}

// Materialized d x n characters beyond this many distinct weights are refused.
constexpr std::size_t kMaxDistinct = 4'000'000;

}  // namespace

Multiplicity WeightMultiset::total_dim() const {
  Multiplicity t = 0;
  for (const auto& [w, m] : entries) t += m;
  return t;
}

std::map<std::vector<long>, Multiplicity> fundamental_character(int n) {
  std::map<std::vector<long>, Multiplicity> acc{{std::vector<long>(n, 0), 1}};
  for (int i = 1; i < n; ++i) {
    std::vector<std::vector<long>> subsets;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != i) continue;
      std::vector<long> e(n, 0);
      for (int k = 0; k < n; ++k)
        if (mask & (1u << k)) e[k] = 1;
      subsets.push_back(e);
    }
    std::map<std::vector<long>, Multiplicity> next;
    for (const auto& [w, m] : acc)
      for (const auto& e : subsets) {
        auto v = w;
        for (int k = 0; k < n; ++k) v[k] += e[k];
        next[v] += m;
      }
    acc = std::move(next);
  }
  return acc;
}

WeightMultiset ltensor_character(int n, int d, const Bounds& b) {
  check_bounds(n, d, b);
  auto single = fundamental_character(n);
  std::size_t distinct = 1;
  for (int s = 0; s < d; ++s) {
    distinct *= single.size();
    if (distinct > kMaxDistinct)
      throw BoundsExceeded("materialized character too large; use the diagonal restriction");
  }
  std::map<std::vector<std::vector<long>>, Multiplicity> acc{{{}, 1}};
  for (int s = 0; s < d; ++s) {
    std::map<std::vector<std::vector<long>>, Multiplicity> next;
    for (const auto& [rows, m] : acc)
      for (const auto& [w, k] : single) {
        auto r = rows;
        r.push_back(w);
        next.emplace(std::move(r), m * k);
      }
    acc = std::move(next);
  }
  WeightMultiset out;
  for (auto& [rows, m] : acc) out.entries.emplace(Weight(rows), m);
  return out;
}

std::map<std::vector<long>, Multiplicity> diagonal_character(int n, int d, const Bounds& b) {
  check_bounds(n, d, b);
  auto single = fundamental_character(n);
  std::map<std::vector<long>, Multiplicity> acc{{std::vector<long>(n, 0), 1}};
  for (int s = 0; s < d; ++s) {
    std::map<std::vector<long>, Multiplicity> next;
    for (const auto& [w, m] : acc)
      for (const auto& [v, k] : single) {
        auto u = w;
        for (int i = 0; i < n; ++i) u[i] += v[i];
        next[u] += m * k;
      }
    acc = std::move(next);
  }
  return acc;
}

Weight lambda0(int n, int d) {
  Weight w(1, n);
  for (int i = 0; i < n; ++i) w.rows[0][i] = static_cast<long>(d) * (n - 1 - i);
  return w;
}

std::set<Weight> ordinary_weights(int n, int d, const Bounds& b) {
  check_bounds(n, d, b);
  return orbit(weyl_enumerate(1, n, b), lambda0(n, d));
}

bool verify_ordweight(int n, int d, const Bounds& b) {
  auto ord = ordinary_weights(n, d, b);
  std::set<Weight> mult_one;
  for (const auto& [w, m] : diagonal_character(n, d, b))
    if (m == 1) mult_one.insert(Weight({w}));
  return mult_one == ord;
}

std::vector<IsotypicComponent> isotypic_components(int n, int d, const StandardParabolic& P,
                                                   const Bounds& b) {
  if (P.n() != n) throw std::invalid_argument("parabolic rank differs from n");
  auto chr = ltensor_character(n, d, b);
  auto beta = P.block_map();
  std::map<std::vector<long>, WeightMultiset> comps;
  for (const auto& [w, m] : chr.entries) {
    std::vector<long> key(P.k(), 0);
    for (const auto& row : w.rows)
      for (int i = 0; i < n; ++i) key[beta[i] - 1] += row[i];
    comps[key].entries.emplace(w, m);
  }
  std::vector<IsotypicComponent> out;
  for (auto& [key, ms] : comps) out.push_back({key, std::move(ms)});
  return out;
}

Multiplicity ordinary_part_dim(const ClosedRootSet& C, int n, int d, const Bounds& b) {
  if (C.P.k() != C.n()) throw std::invalid_argument("ordinary part requires P = B");
  if (C.n() != n) throw std::invalid_argument("closed set rank differs from n");
  check_bounds(n, d, b);
  auto ws = wtilde_weyl(C, b);
  if (d >= 2) return static_cast<Multiplicity>(ws.size());
  auto c = C.all();
  Multiplicity total = 0;
  for (const auto& w : ws) {
    Perm winv = perm_inverse(w);
    std::vector<Root> cand;
    for (const auto& s : simple_roots(n)) {
      Root r = apply_root(winv, s);
      if (c.count(r)) cand.push_back(r);
    }
    for (unsigned mask = 0; mask < (1u << cand.size()); ++mask) {
      bool orth = true;
      for (std::size_t x = 0; x < cand.size() && orth; ++x)
        for (std::size_t y = x + 1; y < cand.size() && orth; ++y)
          if ((mask >> x & 1) && (mask >> y & 1) && inner(cand[x], cand[y]) != 0) orth = false;
      if (orth) ++total;
    }
  }
  return total;
}

}  // namespace wallx

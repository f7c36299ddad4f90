#include "doctest.h"
#include "wallx/ltensor.hpp"

#include <functional>

using namespace wallx;

namespace {

// One basis tensor of ⊗_σ ⊗_i Λ^i: a subset (bitmask) per (σ, i).
using Tensor = std::vector<unsigned>;

std::vector<Tensor> basis_tensors(int n, int d) {
  std::vector<std::vector<unsigned>> by_size(n);
  for (unsigned m = 0; m < (1u << n); ++m) {
    int k = __builtin_popcount(m);
    if (k >= 1 && k < n) by_size[k].push_back(m);
  }
  std::vector<Tensor> out;
  Tensor cur;
  std::function<void(int)> rec = [&](int slot) {
    if (slot == d * (n - 1)) {
      out.push_back(cur);
      return;
    }
    for (unsigned m : by_size[slot % (n - 1) + 1]) {
      cur.push_back(m);
      rec(slot + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<long> diagonal_weight(const Tensor& t, int n) {
  std::vector<long> w(n, 0);
  for (unsigned m : t)
    for (int k = 0; k < n; ++k)
      if (m >> k & 1) ++w[k];
  return w;
}

// Weight vectors of ordinary weights are single tensors; keep the largest set
// closed under the raising operators of roots in C.
long ordinary_part_oracle(const ClosedRootSet& C, int n, int d) {
  std::map<std::vector<long>, std::vector<Tensor>> by_weight;
  for (const auto& t : basis_tensors(n, d)) by_weight[diagonal_weight(t, n)].push_back(t);
  std::set<std::vector<long>> keep;
  for (const auto& [w, ts] : by_weight)
    if (ts.size() == 1) keep.insert(w);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = keep.begin(); it != keep.end();) {
      const Tensor& t = by_weight[*it][0];
      bool bad = false;
      for (const auto& r : C.all()) {
        bool moves = false;
        for (unsigned m : t)
          if ((m >> (r.j - 1) & 1) && !(m >> (r.i - 1) & 1)) moves = true;
        if (!moves) continue;
        auto target = *it;
        ++target[r.i - 1];
        --target[r.j - 1];
        if (!keep.count(target)) bad = true;
      }
      if (bad) {
        it = keep.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return static_cast<long>(keep.size());
}

std::vector<ClosedRootSet> closed_borel_sets(int n) {
  auto pos = positive_roots(n);
  std::vector<ClosedRootSet> out;
  for (unsigned mask = 0; mask < (1u << pos.size()); ++mask) {
    std::set<Root> c;
    for (std::size_t k = 0; k < pos.size(); ++k)
      if (mask >> k & 1) c.insert(pos[k]);
    if (is_closed_relative(c, StandardParabolic::borel(n))) out.push_back(make_closed(c, StandardParabolic::borel(n)));
  }
  return out;
}

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("fundamental tensor characters") {
  auto c2 = ltensor_character(2, 1);
  CHECK(c2.total_dim() == 2);
  CHECK(c2.entries.size() == 2);
  auto c3 = ltensor_character(3, 1);
  CHECK(c3.total_dim() == 9);
  CHECK(c3.entries.at(Weight({{1, 1, 1}})) == 3);
  CHECK(c3.entries.at(Weight({{2, 1, 0}})) == 1);
}

TEST_CASE("characters agree with basis tensor enumeration") {
  for (int n = 2; n <= 4; ++n)
    for (int d = 1; d <= 2; ++d) {
      std::map<std::vector<long>, Multiplicity> oracle;
      for (const auto& t : basis_tensors(n, d)) ++oracle[diagonal_weight(t, n)];
      CHECK(diagonal_character(n, d) == oracle);
      long dim = 1;
      for (int i = 1; i < n; ++i) dim *= binom(n, i);
      long total = 1;
      for (int s = 0; s < d; ++s) total *= dim;
      CHECK(ltensor_character(n, d).total_dim() == total);
    }
}

TEST_CASE("ordinary weights are the multiplicity-one weights") {
  CHECK(ordinary_weights(2, 1) == std::set<Weight>{Weight({{1, 0}}), Weight({{0, 1}})});
  for (int n = 2; n <= 4; ++n)
    for (int d = 1; d <= 2; ++d) {
      CHECK(ordinary_weights(n, d).size() == weyl_enumerate(n).size());
      CHECK(verify_ordweight(n, d));
      for (const auto& [w, m] : diagonal_character(n, d))
        CHECK((m == 1) == (ordinary_weights(n, d).count(Weight({w})) == 1));
    }
  CHECK(lambda0(3, 2).rows[0] == std::vector<long>{4, 2, 0});
  CHECK(is_strictly_dominant(lambda0(4, 3)));
}

TEST_CASE("isotypic components") {
  for (int d = 1; d <= 3; ++d) {
    auto comps = isotypic_components(2, d, StandardParabolic::borel(2));
    CHECK(static_cast<int>(comps.size()) == d + 1);
  }
  CHECK(isotypic_components(3, 1, StandardParabolic::borel(3)).size() == 7);
  CHECK(isotypic_components(3, 2, StandardParabolic::full(3)).size() == 1);
  for (int n = 2; n <= 4; ++n)
    for (auto comp : {std::vector<int>(n, 1), std::vector<int>{1, n - 1}}) {
      StandardParabolic P(comp);
      auto comps = isotypic_components(n, 2, P);
      Multiplicity total = 0;
      auto beta = P.block_map();
      for (const auto& c : comps) {
        total += c.weights.total_dim();
        for (const auto& [w, m] : c.weights.entries) {
          std::vector<long> key(P.k(), 0);
          for (const auto& row : w.rows)
            for (int i = 0; i < n; ++i) key[beta[i] - 1] += row[i];
          CHECK(key == c.levi_character);
        }
      }
      CHECK(total == ltensor_character(n, 2).total_dim());
    }
}

TEST_CASE("ordinary part, single embedding, against the closure oracle") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& C : closed_borel_sets(n)) CHECK(ordinary_part_dim(C, n, 1) == ordinary_part_oracle(C, n, 1));
  CHECK(ordinary_part_dim(make_closed({}, StandardParabolic::borel(3)), 3, 1) == 6);
  CHECK(ordinary_part_dim(make_closed({{1, 2}}, StandardParabolic::borel(2)), 2, 1) == 2);
}

TEST_CASE("ordinary part, several embeddings") {
  // The closure oracle gives one line per element of the admissible Weyl subset.
  for (int n = 2; n <= 3; ++n)
    for (const auto& C : closed_borel_sets(n)) {
      long expect = static_cast<long>(wtilde_weyl(C).size());
      CHECK(ordinary_part_oracle(C, n, 2) == expect);
      CHECK(ordinary_part_dim(C, n, 2) == expect);
    }
}

TEST_CASE("bounds") {
  Bounds b;
  b.ltensor_n = 3;
  CHECK_THROWS_AS(ltensor_character(4, 1, b), BoundsExceeded);
  CHECK_THROWS_AS(ordinary_part_dim(make_closed({}, StandardParabolic({2, 1})), 3, 1), std::invalid_argument);
}

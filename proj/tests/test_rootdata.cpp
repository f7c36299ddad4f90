#include "doctest.h"
#include "wallx/rootdata.hpp"

#include <algorithm>
#include <random>

using namespace wallx;

TEST_CASE("dot action, n=2") {
  WeylElement s({Perm{2, 1}});
  Weight lam({{5, -3}});
  Weight out = dot_action(s, lam);
  CHECK(out.rows[0] == std::vector<long>{-3 - 1, 5 + 1});
  CHECK(dot_action(WeylElement::identity(1, 2), lam) == lam);
}

TEST_CASE("dot action fixes -theta") {
  for (int n = 2; n <= 4; ++n)
    for (std::size_t d = 1; d <= 2; ++d) {
      Weight mt = theta(d, n);
      for (auto& row : mt.rows)
        for (auto& x : row) x = -x;
      for (const auto& w : weyl_enumerate(d, n)) CHECK(dot_action(w, mt) == mt);
    }
}

TEST_CASE("dot action is an action") {
  std::mt19937_64 rng(2);
  auto ws = weyl_enumerate(2, 4);
  for (int t = 0; t < 50; ++t) {
    const auto& a = ws[rng() % ws.size()];
    const auto& b = ws[rng() % ws.size()];
    Weight lam(2, 4);
    for (auto& row : lam.rows)
      for (auto& x : row) x = static_cast<long>(rng() % 11) - 5;
    CHECK(dot_action(a, dot_action(b, lam)) == dot_action(a * b, lam));
  }
}

TEST_CASE("apply permutes roots and sends R+ onto w(R+)") {
  for (const auto& w : weyl_enumerate(4)) {
    std::set<Root> img;
    for (const auto& r : all_roots(4)) img.insert(apply_root(w, r));
    CHECK(img.size() == all_roots(4).size());
    int neg = 0;
    for (const auto& r : positive_roots(4))
      if (!apply_root(w, r).positive()) ++neg;
    CHECK(neg == perm_length(w));
  }
}

TEST_CASE("apply on weights matches apply on roots") {
  for (const auto& w : weyl_enumerate(3))
    for (const auto& r : all_roots(3)) {
      Weight e(1, 3);
      e.rows[0][r.i - 1] = 1;
      e.rows[0][r.j - 1] = -1;
      Weight img = apply(WeylElement({w}), e);
      Root t = apply_root(w, r);
      CHECK(img.rows[0][t.i - 1] == 1);
      CHECK(img.rows[0][t.j - 1] == -1);
    }
}

TEST_CASE("dominance") {
  CHECK(is_strictly_dominant(theta(2, 3)));
  CHECK_FALSE(is_dominant(Weight({{1, 2, 0}})));
  CHECK(is_dominant(Weight({{2, 0}})));
  CHECK(is_dominant(Weight({{1, 1}})));
  CHECK_FALSE(is_strictly_dominant(Weight({{1, 1}})));
}

TEST_CASE("enumeration and orbits") {
  CHECK(weyl_enumerate(2).size() == 2);
  CHECK(weyl_enumerate(3).size() == 6);
  auto w4 = weyl_enumerate(4);
  CHECK(std::set<Perm>(w4.begin(), w4.end()).size() == 24);
  CHECK(orbit(weyl_enumerate(1, 3), Weight({{2, 1, 0}})).size() == 6);
  CHECK(orbit(weyl_enumerate(1, 3), Weight({{1, 1, 0}})).size() == 3);
  Bounds tight;
  tight.weyl_n = 3;
  CHECK_THROWS_AS(weyl_enumerate(4, tight), BoundsExceeded);
}

TEST_CASE("reduced words") {
  for (const auto& w : weyl_enumerate(4)) {
    auto word = reduced_word(w);
    CHECK(static_cast<int>(word.size()) == perm_length(w));
    Perm p = perm_identity(4);
    for (int i : word) p = perm_compose(p, simple_reflection(4, i));
    CHECK(p == w);
  }
  CHECK(word_string(reduced_word(Perm{2, 3, 1})) == "s1s2");
}

TEST_CASE("JSON round trips") {
  Weight w({{3, 1, 0}, {2, 2, -1}});
  CHECK(weight_from_json(weight_to_json(w)) == w);
  WeylElement e({Perm{2, 3, 1}, Perm{1, 3, 2}});
  CHECK(weyl_from_json(weyl_to_json(e)) == e);
  CHECK_THROWS(weight_from_json("[[1,2],[3]]"));
  CHECK_THROWS(weyl_from_json("[[1,1]]"));
}

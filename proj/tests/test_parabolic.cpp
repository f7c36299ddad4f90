#include "doctest.h"
#include "wallx/parabolic.hpp"

#include <algorithm>
#include <random>

using namespace wallx;

namespace {

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

// Orderings of labels 1..n in which i precedes j for every (i,j) in C, by
// filtering all permutations of the sequence.
std::set<Perm> orderings_oracle(const ClosedRootSet& C) {
  int n = C.n();
  std::vector<int> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = i + 1;
  std::set<Perm> out;
  do {
    std::vector<int> pos(n + 1);
    for (int p = 0; p < n; ++p) pos[seq[p]] = p;
    bool ok = true;
    for (const auto& r : C.all())
      if (pos[r.i] > pos[r.j]) ok = false;
    if (ok) {
      Perm w(n);
      for (int p = 0; p < n; ++p) w[seq[p] - 1] = p + 1;
      out.insert(w);
    }
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

}  // namespace

TEST_CASE("parabolic data") {
  StandardParabolic P({2, 1});
  CHECK(P.n() == 3);
  CHECK(P.block_map() == std::vector<int>{1, 1, 2});
  CHECK(P.simple() == std::set<Root>{{1, 2}});
  CHECK(P.positive() == std::set<Root>{{1, 2}});
  CHECK(StandardParabolic::from_simple_roots(3, {{1, 2}}) == P);
  CHECK_THROWS(StandardParabolic(std::vector<int>{2, 0}));
}

TEST_CASE("closedness") {
  auto all = positive_roots(3);
  CHECK(is_closed_relative({all.begin(), all.end()}, StandardParabolic::borel(3)));
  for (auto comp : std::vector<std::vector<int>>{{1, 2}, {2, 1}, {3}, {1, 1, 1}}) {
    StandardParabolic P(comp);
    CHECK(is_closed_relative(P.positive(), P));
  }
  CHECK_FALSE(is_closed_relative({{1, 2}, {2, 3}}, StandardParabolic::borel(3)));
  CHECK_THROWS(make_closed({{1, 2}, {2, 3}}, StandardParabolic::borel(3)));
  // {e1-e3} is not stable under W(P) for P = GL_2 x GL_1.
  CHECK_FALSE(is_closed_relative({{1, 2}, {1, 3}}, StandardParabolic({2, 1})));
  CHECK(is_closed_relative({{1, 2}, {1, 3}, {2, 3}}, StandardParabolic({2, 1})));
}

TEST_CASE("wtilde Weyl subsets") {
  for (int n = 2; n <= 4; ++n) {
    CHECK(wtilde_weyl(make_closed({}, StandardParabolic::full(n))).size() == 1);
    auto all = positive_roots(n);
    CHECK(wtilde_weyl(make_closed({all.begin(), all.end()}, StandardParabolic::borel(n))) ==
          std::vector<Perm>{perm_identity(n)});
    CHECK(wtilde_weyl(make_closed({}, StandardParabolic::borel(n))).size() == weyl_enumerate(n).size());
  }
}

TEST_CASE("natural bijection is a bijection onto S_k") {
  StandardParabolic P({2, 1, 1});
  auto C = make_closed({}, P);
  std::set<Perm> images;
  auto ws = wtilde_weyl(C);
  for (const auto& w : ws) images.insert(natural_bijection(w, P));
  CHECK(images.size() == ws.size());
  CHECK(images.size() == 6);
}

TEST_CASE("refinement counts and the three-label example") {
  for (int n = 2; n <= 5; ++n) {
    auto all = positive_roots(n);
    CHECK(refinements(make_closed({all.begin(), all.end()}, StandardParabolic::borel(n))).size() == 1);
    CHECK(refinements(make_closed({}, StandardParabolic::borel(n))).size() == weyl_enumerate(n).size());
  }
  auto refs = refinements(make_closed({{1, 2}}, StandardParabolic::borel(3)));
  CHECK(refs == std::vector<Perm>{{1, 2, 3}, {1, 3, 2}, {2, 3, 1}});
  std::set<std::string> words;
  for (const auto& w : refs) words.insert(word_string(reduced_word(perm_inverse(w))));
  CHECK(words == std::set<std::string>{"", "s2", "s2s1"});
  CHECK_THROWS(refinements(make_closed({}, StandardParabolic({2, 1}))));
}

TEST_CASE("refinements agree with the ordering oracle and with wtilde") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& C : closed_borel_sets(n)) {
      auto refs = refinements(C);
      CHECK(std::set<Perm>(refs.begin(), refs.end()) == orderings_oracle(C));
      CHECK(refs == wtilde_weyl(C));
    }
}

TEST_CASE("refinements are antitone in C") {
  auto sets = closed_borel_sets(4);
  for (const auto& a : sets)
    for (const auto& b : sets) {
      auto ca = a.all(), cb = b.all();
      if (!std::includes(cb.begin(), cb.end(), ca.begin(), ca.end())) continue;
      auto ra = refinements(a), rb = refinements(b);
      CHECK(std::includes(ra.begin(), ra.end(), rb.begin(), rb.end()));
    }
}

TEST_CASE("reordered filtrations stay closed") {
  for (auto comp : std::vector<std::vector<int>>{{1, 1, 1}, {2, 1}, {1, 2}, {2, 2}, {1, 1, 2}}) {
    StandardParabolic P(comp);
    int n = P.n();
    auto pos = positive_roots(n);
    for (unsigned mask = 0; mask < (1u << pos.size()); ++mask) {
      std::set<Root> c = P.positive();
      for (std::size_t k = 0; k < pos.size(); ++k)
        if (mask >> k & 1) c.insert(pos[k]);
      if (!is_closed_relative(c, P)) continue;
      auto C = make_closed(c, P);
      for (const auto& w : wtilde_weyl(C)) {
        auto [P2, C2] = reorder_filtration(C, w);
        CHECK(is_closed_relative(C2.all(), P2));
        CHECK(P2.composition.size() == P.composition.size());
      }
    }
  }
  auto C = make_closed({{1, 2}}, StandardParabolic::borel(2));
  auto [P2, C2] = reorder_filtration(C, perm_identity(2));
  CHECK(C2.all() == C.all());
  CHECK_THROWS(reorder_filtration(C, Perm{2, 1}));
}

TEST_CASE("root list parsing and JSON") {
  CHECK(parse_root_list("1,2; 2,3", 3) == std::set<Root>{{1, 2}, {2, 3}});
  CHECK(parse_root_list("", 3).empty());
  CHECK_THROWS(parse_root_list("2,1", 3));
  CHECK_THROWS(parse_root_list("1,4", 3));
  CHECK_THROWS(parse_root_list("1;2", 3));
  CHECK_THROWS(parse_root_list("a,2", 3));
  auto C = make_closed({{1, 2}, {1, 3}}, StandardParabolic::borel(3));
  CHECK(closed_set_to_json(C) == "[[1,2],[1,3]]");
  CHECK(closed_set_from_json(closed_set_to_json(C), C.P).all() == C.all());
}

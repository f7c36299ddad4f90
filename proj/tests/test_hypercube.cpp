#include <doctest.h>

#include "wallx/corpus.hpp"
#include "wallx/hypercube.hpp"

using namespace wallx;

namespace {

// L_A(λ) ⊗ L_B(sλ) ⊗ (base on the remaining factors), factor 0 first.
BlockModule expected_cell(int d, Vertex A, Vertex B, const BlockModule& base) {
  BlockModule out = BlockModule::zero(0);
  bool first = true;
  for (int s = 0; s < d; ++s) {
    BlockModule f = has(A, s) ? simple_L() : has(B, s) ? simple_Ls() : base;
    out = first ? f : tensor(out, f);
    first = false;
  }
  return out;
}

}  // namespace

TEST_CASE("cell keys and labels") {
  for (int d = 1; d <= 3; ++d) {
    auto keys = cell_keys(d);
    std::size_t expect = 1;
    for (int k = 0; k < d; ++k) expect *= 3;
    CHECK(keys.size() == expect);
    for (const auto& k : keys) CHECK(parse_cell_label(cell_label(k, d), d) == k);
  }
  CHECK(cell_label({1, 6}, 3) == "1|2,3");
  CHECK(cell_label({0, 0}, 2) == "|");
  CHECK_THROWS(parse_cell_label("1|1", 2));
  CHECK_THROWS(parse_cell_label("3|", 2));
  CHECK_THROWS(parse_cell_label("1", 2));
}

TEST_CASE("verma hypercubes") {
  for (int d = 1; d <= 3; ++d) {
    CAPTURE(d);
    BlockModule m = tensor_power(verma(), d);
    auto plus = build_hypercube(m, Sign::Plus);
    for (const auto& [k, c] : plus.cells) {
      if (k.first == 0)
        CHECK(is_isomorphic(c, m));
      else
        CHECK(c.is_zero());
    }
    CHECK(plus.nonzero_cells() == (std::size_t{1} << d));
    auto minus = build_hypercube(m, Sign::Minus);
    for (const auto& [k, c] : minus.cells) {
      auto e = expected_cell(d, k.first, k.second, verma());
      CHECK(composition_multiplicities(c) == composition_multiplicities(e));
      CHECK(is_isomorphic(c, e));
    }
    BlockModule ms = tensor_power(simple_Ls(), d);
    auto mp = build_hypercube(ms, Sign::Minus);
    for (const auto& [k, c] : mp.cells) CHECK(c.is_zero() == (k.first != 0));
    auto pp = build_hypercube(ms, Sign::Plus);
    for (const auto& [k, c] : pp.cells) {
      // ∇_A ϑ_B M(sλ) ≅ M_B(λ) ⊗ L_A(λ) ⊗ M_rest(sλ).
      BlockModule e = BlockModule::zero(0);
      for (int s = 0; s < d; ++s) {
        BlockModule f = has(k.first, s) ? simple_L() : has(k.second, s) ? verma() : simple_Ls();
        e = s == 0 ? f : tensor(e, f);
      }
      CHECK(is_isomorphic(c, e));
    }
  }
}

TEST_CASE("positional invariants") {
  for (const auto& m : two_factor_corpus(3, 12)) {
    auto plus = build_hypercube(m, Sign::Plus);
    for (Vertex I = 0; I < 4; ++I)
      CHECK(composition_multiplicities(plus.cell(I, 0)) == composition_multiplicities(nabla_plus(I, m)));
    CHECK(is_isomorphic(plus.cell(0, 3), vartheta_plus(3, m)));
    auto minus = build_hypercube(m, Sign::Minus);
    CHECK(is_isomorphic(minus.cell(0, 0), m));
    for (Vertex I = 0; I < 4; ++I)
      CHECK(composition_multiplicities(minus.cell(I, 3 ^ I)) ==
            composition_multiplicities(nabla_minus(I, vartheta_minus(3 ^ I, m))));
  }
}

TEST_CASE("compositional cells agree with nested definitions") {
  for (const auto& m : two_factor_corpus(5, 10))
    for (Sign sg : {Sign::Plus, Sign::Minus}) {
      auto h = build_hypercube(m, sg, false);
      for (const auto& [k, c] : h.cells) CHECK(is_isomorphic(c, direct_cell(m, sg, k.first, k.second)));
    }
}

TEST_CASE("edge sequences are exact on the corpus") {
  std::size_t sequences = 0;
  for (const auto& m : two_factor_corpus(11, 20))
    for (Sign sg : {Sign::Plus, Sign::Minus}) {
      auto h = build_hypercube(m, sg);
      CHECK(h.cells.size() == 9);
      CHECK(h.squares > 0);
      for (const auto& e : h.sequences) CHECK(e.exact);
      sequences += h.sequences.size();
    }
  CHECK(sequences == 20 * 2 * 6);
}

TEST_CASE("the + cube rejects modules with AB != 0") {
  BlockModule p2 = tensor(big_projective(), big_projective());
  CHECK_THROWS_AS(build_hypercube(p2, Sign::Plus), std::invalid_argument);
  auto minus = build_hypercube(p2, Sign::Minus);
  for (const auto& e : minus.sequences) CHECK(e.exact);
}

TEST_CASE("commutation reports") {
  auto mm = check_commutation(tensor(verma(), verma()), 0, 1);
  for (const auto& v : mm.verdicts) {
    CAPTURE(v.diagram);
    CHECK(v.applicable);
    CHECK(v.holds);
  }
  auto pp = check_commutation(tensor(big_projective(), big_projective()), 0, 1);
  CHECK_FALSE(pp.verdicts[0].applicable);
  CHECK(pp.verdicts.back().applicable);
  CHECK(pp.verdicts.back().holds);
  auto dm = check_commutation(diamond(2, {1, 1, 1, 1}), 0, 1);
  CHECK(dm.verdicts.size() == 6);
  CHECK_THROWS(check_commutation(verma(), 0, 1));
  CHECK_THROWS(check_commutation(tensor(verma(), verma()), 1, 1));
}

TEST_CASE("exports are deterministic and round-trip") {
  for (int d = 1; d <= 3; ++d) {
    BlockModule m = tensor_power(verma(), d);
    for (Sign sg : {Sign::Plus, Sign::Minus}) {
      auto h = build_hypercube(m, sg);
      std::string js = hypercube_to_json(h);
      CHECK(js == hypercube_to_json(build_hypercube(m, sg, false)));
      CHECK(hypercube_to_json(hypercube_from_json(js)) == js);
      std::string dot = hypercube_to_dot(h);
      CHECK(dot == hypercube_to_dot(hypercube_from_json(js)));
    }
  }
  auto d1 = hypercube_to_dot(build_hypercube(verma(), Sign::Plus));
  std::size_t nodes = 0, edges = 0;
  for (std::size_t p = 0; (p = d1.find("pos=", p)) != std::string::npos; ++p) ++nodes;
  for (std::size_t p = 0; (p = d1.find("->", p)) != std::string::npos; ++p) ++edges;
  CHECK(nodes == 3);
  CHECK(edges == 2);
  CHECK_THROWS(export_hypercube(build_hypercube(verma(), Sign::Plus), "svg"));
  CHECK_THROWS(hypercube_from_json("{\"sign\":\"+\"}"));
}

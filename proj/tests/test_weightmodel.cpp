#include <doctest.h>

#include "wallx/blockO.hpp"
#include "wallx/weightmodel.hpp"

using namespace wallx;

namespace {

// Direct evaluation of h^2 - 2h + 4u^+u^- with u^+u^- taken literally.
Matrix casimir_literal(const WeightModule& m, long h) {
  std::size_t n = m.dim(h);
  Matrix hh = Matrix::identity(n).scaled(h);
  return hh * hh - hh.scaled(2) + (m.up_at(h - 2) * m.down_at(h)).scaled(4);
}

}  // namespace

TEST_CASE("verma layers and actions") {
  auto m = wm_verma(0, 12);
  CHECK(m.dims.size() == 12);
  for (int k = 0; k < 12; ++k) CHECK(m.dim(-2L * k) == 1);
  for (int k = 0; k + 1 < 12; ++k) CHECK(rank(m.down_at(-2L * k)) == 1);
  CHECK(!wm_check_relations(m));
  CHECK(!wm_check_relations(wm_dual_verma(0, 12)));
  CHECK(!wm_check_relations(wm_simple_finite(3)));
  CHECK(m.guard() == 1);
  CHECK_THROWS_AS(wm_verma(0, 3), DepthError);
}

TEST_CASE("casimir acts by the central character") {
  for (long mu : {-3L, -2L, 0L, 1L, 4L}) {
    auto m = wm_verma(mu, 10);
    Rational chi = mu * mu + 2 * mu;
    for (const auto& [h, n] : m.dims) {
      if (!m.reliable(h)) continue;
      CHECK(wm_casimir(m, h) == Matrix::identity(n).scaled(chi));
      CHECK(casimir_literal(m, h) == Matrix::identity(n).scaled(chi));
    }
  }
}

TEST_CASE("tensor with V1 adds layer dimensions") {
  auto m = wm_verma(0, 12);
  auto t = wm_tensor_V1(m);
  CHECK(!wm_check_relations(t));
  CHECK(*t.floor == *m.floor + 1);
  for (const auto& [h, n] : t.dims) CHECK(n == m.dim(h + 1) + m.dim(h - 1));
  auto td = wm_tensor_V1dual(t);
  CHECK(!wm_check_relations(td));
  CHECK(td.central == 0);
}

TEST_CASE("the singular part has casimir -1") {
  for (const auto& name : wm_pattern_names()) {
    auto w = wm_pattern(name, 12);
    auto t = wm_theta_data(w);
    for (const auto& [h, n] : t.off.dims) {
      if (!t.off.reliable(h)) continue;
      CHECK(wm_casimir(t.off, h) == Matrix::identity(n).scaled(-1));
    }
    // Θ lands back in the block of 0 with 𝔠 nilpotent.
    for (const auto& [h, n] : t.theta.dims)
      if (n) CHECK(power(wm_casimir(t.theta, h), n).is_zero());
    CHECK(!wm_check_relations(t.theta));
  }
}

TEST_CASE("closed-form unit is twice the coevaluation unit") {
  for (const char* name : {"L", "Ls", "M", "Mv"}) {
    auto w = wm_pattern(name, 12);
    auto t = wm_theta_data(w);
    auto closed = wm_iota(w, t);
    auto natural = wm_iota_natural(w, t);
    for (const auto& [h, a] : closed)
      if (w.reliable(h)) CHECK(a == natural.at(h).scaled(2));
  }
}

TEST_CASE("kernel of the unit and image of the counit") {
  auto fin = wm_simple_finite(0);
  auto tf = wm_theta_data(fin);
  CHECK(tf.theta.total_dim() == 0);
  CHECK(wm_dim(wm_kernel(wm_iota(fin, tf), fin)) == fin.total_dim());

  auto m = wm_verma(0, 12);
  auto t = wm_theta_data(m);
  auto ker = wm_kernel(wm_iota(m, t), m);
  for (const auto& [h, k] : ker)
    if (m.reliable(h) && t.theta.dims.count(h)) CHECK(k.cols() == 0);

  for (const char* name : {"M", "Mv", "Ls", "P"}) {
    auto w = wm_pattern(name, 12);
    auto tw = wm_theta_data(w);
    WeightSub im = wm_image(wm_kappa(w, tw), w);
    WeightSub witness;
    for (const auto& [h, n] : w.dims) {
      if (!tw.theta.dims.count(h) || !tw.theta.dims.count(h + 2) || !tw.theta.dims.count(h - 2)) continue;
      witness[h] = Matrix::hcat(w.up_at(h - 2), w.down_at(h + 2));
    }
    CHECK(wm_contains(im, witness));
  }
}

TEST_CASE("kappa after iota vanishes on modules with 𝔠 = 0") {
  for (const char* name : {"L", "Ls", "M", "Mv"}) {
    auto w = wm_pattern(name, 12);
    auto t = wm_theta_data(w);
    auto i = wm_iota(w, t);
    auto k = wm_kappa(w, t);
    for (const auto& [h, a] : i)
      if (w.reliable(h)) CHECK((k.at(h) * a).is_zero());
  }
}

TEST_CASE("cross-backend multiplicities agree") {
  for (const auto& name : wm_pattern_names()) {
    auto rep = wm_compare(name, 12);
    CAPTURE(name);
    CHECK(rep.conclusive);
    for (const auto& row : rep.rows) {
      CAPTURE(row.functor);
      CHECK(row.equal);
    }
  }
  auto m = wm_compare("M");
  CHECK(m.rows[2].functor == "vartheta-");
  CHECK(m.rows[2].weight == Multiplicities{{1, 1}});
  auto p = wm_compare("P");
  CHECK(p.rows[0].weight == Multiplicities{{0, 2}, {1, 4}});
  auto l = wm_compare("L");
  CHECK(l.rows[0].weight.empty());
}

TEST_CASE("shallow truncation is reported, not guessed") {
  // Every shared pattern survives its functors at the minimum depth.
  for (const auto& name : wm_pattern_names()) CHECK(wm_compare(name, 4).all_equal());
  auto w = wm_verma(0, 4);
  for (int k = 0; k < 2; ++k) w = wm_theta(w);
  CHECK(*w.floor == -2);
  CHECK_THROWS_AS(wm_multiplicities(w), DepthError);
}

TEST_CASE("dimension table export") {
  CHECK(wm_dims_json(wm_simple_finite(1)) == R"({"central":0,"dims":{"-1":1,"1":1},"floor":null})");
}

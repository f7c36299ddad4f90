#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallx/blockO.hpp"
#include "wallx/linalg.hpp"

namespace wallx {

// Truncated gl_2 weight module. Layers are keyed by the h-eigenvalue; up[h]
// maps M_h to M_{h+2} (u^+) and down[h] maps M_h to M_{h-2} (u^-). A truncated
// module keeps the layers from `floor` upward: every stored dimension and
// u^+ map is exact, and u^- is exact except out of the bottom layer.
struct WeightModule {
  std::map<long, std::size_t> dims;
  std::map<long, Matrix> up;
  std::map<long, Matrix> down;
  long central = 0;           // scalar by which 𝔷 acts
  std::optional<long> floor;  // unset for finite-dimensional modules

  std::size_t dim(long h) const;
  Matrix up_at(long h) const;    // dim(h+2) x dim(h), zero if not stored
  Matrix down_at(long h) const;  // dim(h-2) x dim(h)
  // Width of the unreliable bottom band, in layers.
  int guard() const { return floor ? 1 : 0; }
  bool reliable(long h) const { return !floor || h >= *floor + 2; }
  std::size_t total_dim() const;
};

// Per-layer data: maps between modules and subspaces of a module.
using WeightMap = std::map<long, Matrix>;
using WeightSub = std::map<long, Matrix>;

class DepthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

WeightModule wm_verma(long mu, int depth);
WeightModule wm_dual_verma(long mu, int depth);
WeightModule wm_simple_finite(long lambda);
WeightModule wm_direct_sum(const WeightModule& x, const WeightModule& y);
WeightModule wm_tensor_V1(const WeightModule& m);
WeightModule wm_tensor_V1dual(const WeightModule& m);

// [h, u^±] = ±2u^± holds by construction; this checks [u^+, u^-] = h on every
// reliable layer and returns the first failure.
std::optional<std::string> wm_check_relations(const WeightModule& m);
// 𝔠 = h^2 - 2h + 4u^+u^- on the layer h.
Matrix wm_casimir(const WeightModule& m, long h);

WeightModule wm_restrict(const WeightModule& m, const WeightSub& s);
WeightModule wm_quotient(const WeightModule& m, const WeightSub& s);
WeightModule wm_subquotient(const WeightModule& m, const WeightSub& big, const WeightSub& small);
WeightSub wm_kernel(const WeightMap& f, const WeightModule& src);
WeightSub wm_image(const WeightMap& f, const WeightModule& src);
WeightSub wm_full(const WeightModule& m);
WeightSub wm_sum(const WeightSub& a, const WeightSub& b);
WeightSub wm_intersection(const WeightSub& a, const WeightSub& b);
bool wm_contains(const WeightSub& big, const WeightSub& small);
std::size_t wm_dim(const WeightSub& s);

// Wall-crossing through the singular block: T = (M ⊗ V_1)[𝔠 = -1] in its
// generalized sense, and Θ M = T ⊗ V_1^∨. For h in Θ, the layer is
// T_{h+1} ⊗ e_1^* followed by T_{h-1} ⊗ e_0^*.
struct WeightTheta {
  WeightModule tensor;    // M ⊗ V_1
  WeightModule off;       // T
  WeightMap inclusion;    // T → M ⊗ V_1
  WeightMap projection;   // M ⊗ V_1 → T along the other eigenvalues
  WeightModule theta;     // Θ M
};
WeightTheta wm_theta_data(const WeightModule& m);
WeightModule wm_theta(const WeightModule& m);

// Closed-form unit and counit; the unit needs 𝔠 to act by 0 on M.
WeightMap wm_iota(const WeightModule& m, const WeightTheta& t);
WeightMap wm_kappa(const WeightModule& m, const WeightTheta& t);
// Unit through the coevaluation v ↦ Π(v⊗e_0)⊗e_0^* + Π(v⊗e_1)⊗e_1^*; valid for any M.
WeightMap wm_iota_natural(const WeightModule& m, const WeightTheta& t);

WeightSub wm_vartheta_plus_subspace(const WeightTheta& t);  // [𝔠 = 0] inside Θ M
WeightSub wm_vartheta_minus_subspace(const WeightModule& m, const WeightTheta& t);
WeightModule wm_vartheta_plus(const WeightModule& m);
WeightModule wm_vartheta_minus(const WeightModule& m);
WeightModule wm_nabla_plus(const WeightModule& m);
WeightModule wm_nabla_minus(const WeightModule& m);

// Composition multiplicities in the block of λ = 0: vertex 0 counts L(0),
// vertex 1 counts L(s·0) = M(-2). Throws DepthError if the layers 0, -2, -4
// are not all reliable, or the character is not of that shape.
Multiplicities wm_multiplicities(const WeightModule& m);

struct CompareRow {
  std::string functor;
  Multiplicities block;
  Multiplicities weight;
  bool equal = false;
};
struct CompareReport {
  std::string pattern;
  int depth = 0;
  bool conclusive = true;
  int required_depth = 0;
  std::vector<CompareRow> rows;
  bool all_equal() const;
};
// Patterns: L, Ls, M, Ms, Mv, P.
std::vector<std::string> wm_pattern_names();
WeightModule wm_pattern(const std::string& name, int depth);
CompareReport wm_compare(const std::string& pattern, int depth = 12);

std::string wm_dims_json(const WeightModule& m);

}  // namespace wallx

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wallx/linalg.hpp"

namespace wallx {

// A vertex tuple of the d-fold quiver, as a bitmask: bit s set means v_s = 1.
// Factor subsets I, J ⊆ {0..d-1} use the same encoding.
using Vertex = std::uint32_t;

inline bool has(Vertex v, int s) { return (v >> s) & 1u; }
inline Vertex bit(int s) { return Vertex{1} << s; }

// Finite-dimensional module over the d-fold block algebra. For each factor s
// and vertex v, arrow[s][v] is the map out of slice v along factor s: it is
// A_s (to v | bit(s)) when v_s = 0 and B_s (to v & ~bit(s)) when v_s = 1.
struct BlockModule {
  int d = 0;
  std::vector<std::size_t> dims;
  std::vector<std::vector<Matrix>> arrow;
  std::optional<std::vector<std::array<long, 2>>> central_charge;

  static BlockModule zero(int d);
  // Zero arrows of the right shapes for the given dims.
  static BlockModule with_dims(int d, std::vector<std::size_t> dims);

  std::size_t vertices() const { return std::size_t{1} << d; }
  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  Matrix& at(int s, Vertex v) { return arrow[s][v]; }
  const Matrix& at(int s, Vertex v) const { return arrow[s][v]; }
  // z_s = A_s B_s on the slice v (zero when v_s = 0).
  Matrix z(int s, Vertex v) const;
};

// Per-vertex linear maps between two modules over the same d.
struct ModuleMap {
  std::vector<Matrix> comp;
  std::size_t rank() const;
  bool is_zero() const;
};

// Subspaces of the slices of a module, given by spanning columns per vertex.
using Subspaces = std::vector<Matrix>;

std::optional<std::string> check_relations(const BlockModule& m);
bool is_strict(const BlockModule& m);
bool is_homomorphism(const BlockModule& src, const BlockModule& dst, const ModuleMap& f);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g ∘ f
ModuleMap identity_map(const BlockModule& m);
ModuleMap zero_map(const BlockModule& src, const BlockModule& dst);

// Building blocks (single factor unless stated).
BlockModule simple_module(int d, Vertex v);
BlockModule simple_L();          // L(λ)
BlockModule simple_Ls();         // L(sλ) = M(sλ)
BlockModule verma();             // M(λ)
BlockModule dual_verma();        // M(λ)^∨
BlockModule big_projective();    // P(sλ)
BlockModule tensor(const BlockModule& x, const BlockModule& y);
BlockModule direct_sum(const BlockModule& x, const BlockModule& y);
BlockModule tensor_power(const BlockModule& x, int k);
// Diamond model: d=2 takes {a1σ, a2σ, a1τ, a2τ}, d=1 takes {a1, a2}.
BlockModule diamond(int d, const std::vector<long>& params);
BlockModule dual(const BlockModule& m);

// Subobjects.
Subspaces zero_subspaces(const BlockModule& m);
Subspaces full_subspaces(const BlockModule& m);
Subspaces normalize(const Subspaces& s);
Subspaces generated_submodule(const BlockModule& m, const Subspaces& gens);
bool is_submodule(const BlockModule& m, const Subspaces& s);
Subspaces sum(const Subspaces& a, const Subspaces& b);
Subspaces intersection(const Subspaces& a, const Subspaces& b);
bool contains(const Subspaces& big, const Subspaces& small);
bool equal(const Subspaces& a, const Subspaces& b);
std::vector<std::size_t> dimensions(const Subspaces& s);
Subspaces kernel(const ModuleMap& f, const BlockModule& src);
Subspaces image(const ModuleMap& f, const BlockModule& dst);
Subspaces apply_map(const ModuleMap& f, const Subspaces& s);

struct Restricted {
  BlockModule module;
  ModuleMap inclusion;  // module → ambient
};
Restricted restrict_to(const BlockModule& m, const Subspaces& s);

struct Quotient {
  BlockModule module;
  ModuleMap projection;  // ambient → module
  ModuleMap section;     // linear right inverse, not a module map
};
Quotient quotient(const BlockModule& m, const Subspaces& s);

// big / small for submodules small ⊆ big of m, with coordinates: a vector of
// the subquotient lifts to big through `lift`, and `project` sends ambient
// vectors lying in big to subquotient coordinates.
struct Subquotient {
  BlockModule module;
  Subspaces big;
  Subspaces small;
  std::vector<Matrix> lift;     // ambient_dim x module_dim
  std::vector<Matrix> project;  // module_dim x ambient_dim (valid on big)
};
Subquotient subquotient(const BlockModule& m, const Subspaces& big, const Subspaces& small);
// Map between subquotients induced by an ambient map f (identity if null).
ModuleMap induced_map(const Subquotient& src, const Subquotient& dst, const ModuleMap* f);

// Wall-crossing. X is a factor subset; Θ_X M = (⊗_{σ∈X} P_σ) ⊗ M|_{v_X = 1}
// in a canonical labelled basis independent of the order of application.
BlockModule theta(Vertex X, const BlockModule& m);
// ι_s: Θ_X M → Θ_{X∪s} M and κ_s: Θ_{X∪s} M → Θ_X M for s ∉ X.
ModuleMap iota(int s, Vertex X, const BlockModule& m);
ModuleMap kappa(int s, Vertex X, const BlockModule& m);
// ι_X: M → Θ_X M and κ_X: Θ_X M → M, composites of the single steps.
ModuleMap iota_total(Vertex X, const BlockModule& m);
ModuleMap kappa_total(Vertex X, const BlockModule& m);
// Θ_X applied to a module map.
ModuleMap theta_map(Vertex X, const ModuleMap& f);
// im f = ker g for f: A → B, g: B → C.
bool exact_at_middle(const ModuleMap& f, const ModuleMap& g, const BlockModule& mid);

Subspaces vartheta_plus_subspace(Vertex I, const BlockModule& m);  // inside Θ_I M
Subspaces vartheta_minus_subspace(Vertex I, const BlockModule& m); // inside M
BlockModule vartheta_plus(Vertex I, const BlockModule& m);
BlockModule vartheta_minus(Vertex I, const BlockModule& m);
// Σ_{σ∈I} ι_σ(ϑ^+_{I∖σ} M) ∩ ϑ^+_I M, inside Θ_I M.
Subspaces nabla_plus_relations(Vertex I, const BlockModule& m);
BlockModule nabla_plus(Vertex I, const BlockModule& m);
BlockModule nabla_minus(Vertex I, const BlockModule& m);
Subspaces finite_part(Vertex I, const BlockModule& m);
BlockModule finite_quotient(Vertex I, const BlockModule& m);

// Single-factor sharp/flat with the connecting sequence.
struct SharpFlat {
  BlockModule sharp;
  BlockModule flat;
  bool hypothesis_holds = false;  // finite part vanishes
  bool exact = false;             // 0 → M^♯ → ΘM → M^♭ → 0 verified
  std::string note;
};
SharpFlat sharp_flat(const BlockModule& m);
BlockModule mhash_sharp(const BlockModule& m);
BlockModule mhash_flat(const BlockModule& m);

// Structure.
using Multiplicities = std::map<Vertex, std::size_t>;
Multiplicities composition_multiplicities(const BlockModule& m);
std::size_t composition_length(const BlockModule& m);

struct StructureReport {
  Multiplicities multiplicities;
  std::vector<std::vector<std::size_t>> radical_layers;  // dims per vertex
  std::vector<std::vector<std::size_t>> socle_layers;
  std::vector<std::vector<std::size_t>> summands;        // dims per vertex
  bool fully_split = true;
  std::string note;
};
StructureReport structure(const BlockModule& m, std::uint64_t seed = 1);
bool is_indecomposable(const BlockModule& m, std::uint64_t seed = 1);

std::vector<ModuleMap> hom_basis(const BlockModule& src, const BlockModule& dst);
bool is_isomorphic(const BlockModule& x, const BlockModule& y, std::uint64_t seed = 7);

// Labels: "L(λ)"-style names of the simples for d = 1, bitstrings otherwise.
std::string vertex_key(Vertex v, int d);
Vertex parse_vertex_key(const std::string& key);
std::string subset_label(Vertex S, int d);
std::string multiplicities_string(const Multiplicities& m, int d);

std::string module_to_json(const BlockModule& m);
BlockModule module_from_json(const std::string& text);

}  // namespace wallx

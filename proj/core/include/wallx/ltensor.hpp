#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "wallx/parabolic.hpp"
#include "wallx/rootdata.hpp"

namespace wallx {

using Multiplicity = std::int64_t;

struct WeightMultiset {
  std::map<Weight, Multiplicity> entries;
  Multiplicity total_dim() const;
};

// Weights of ⊗_{i=1}^{n-1} Λ^i(std) for one embedding, as n-vectors.
std::map<std::vector<long>, Multiplicity> fundamental_character(int n);

WeightMultiset ltensor_character(int n, int d, const Bounds& b = Bounds::from_env());
// Restriction to the diagonal torus: sum of the rows of each weight.
std::map<std::vector<long>, Multiplicity> diagonal_character(int n, int d,
                                                             const Bounds& b = Bounds::from_env());

Weight lambda0(int n, int d);  // d·θ as a single-row weight
std::set<Weight> ordinary_weights(int n, int d, const Bounds& b = Bounds::from_env());
bool verify_ordweight(int n, int d, const Bounds& b = Bounds::from_env());

struct IsotypicComponent {
  std::vector<long> levi_character;
  WeightMultiset weights;
};

std::vector<IsotypicComponent> isotypic_components(int n, int d, const StandardParabolic& P,
                                                   const Bounds& b = Bounds::from_env());

// Dimension of the ordinary part over B_C; see README for the d >= 2 reading.
Multiplicity ordinary_part_dim(const ClosedRootSet& C, int n, int d,
                               const Bounds& b = Bounds::from_env());

}  // namespace wallx

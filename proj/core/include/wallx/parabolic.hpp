#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wallx/rootdata.hpp"

namespace wallx {

struct StandardParabolic {
  std::vector<int> composition;

  StandardParabolic() = default;
  explicit StandardParabolic(std::vector<int> comp);
  static StandardParabolic borel(int n);
  static StandardParabolic full(int n);
  // Parabolic whose simple roots are exactly the given subset of S.
  static StandardParabolic from_simple_roots(int n, const std::set<Root>& simple);

  int n() const;
  int k() const { return static_cast<int>(composition.size()); }
  std::vector<int> block_map() const;  // β(i) for i = 1..n, blocks 1-based
  std::set<Root> simple() const;       // S(P)
  std::set<Root> positive() const;     // R(P)^+
  bool operator==(const StandardParabolic&) const = default;
};

// C is stored through its part outside R(P)^+.
struct ClosedRootSet {
  StandardParabolic P;
  std::set<Root> extra;

  int n() const { return P.n(); }
  std::set<Root> all() const;
};

bool is_closed_relative(const std::set<Root>& C, const StandardParabolic& P);
// Throws std::invalid_argument when C is not closed relative to P.
ClosedRootSet make_closed(const std::set<Root>& C, const StandardParabolic& P);

std::vector<Perm> wtilde_weyl(const ClosedRootSet& C, const Bounds& b = Bounds::from_env());
// w ↦ w^♮ in S_k, for w with w(S(P)) ⊆ S.
Perm natural_bijection(const Perm& w, const StandardParabolic& P);
// Refinements of a skeleton with extension support C (P = B), enumerated as
// the orderings of the labels compatible with C.
std::vector<Perm> refinements(const ClosedRootSet& C, const Bounds& b = Bounds::from_env());
std::pair<StandardParabolic, ClosedRootSet> reorder_filtration(const ClosedRootSet& C, const Perm& w);

// Parses "i,j;k,l" (1-based) into a root set; throws on malformed input.
std::set<Root> parse_root_list(const std::string& s, int n);
std::string closed_set_to_json(const ClosedRootSet& C);
ClosedRootSet closed_set_from_json(const std::string& s, const StandardParabolic& P);

}  // namespace wallx

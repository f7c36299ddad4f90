#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallx/parabolic.hpp"
#include "wallx/rootdata.hpp"

namespace wallx {

struct TriangulineSkeleton {
  int n = 0;
  int d = 0;
  std::vector<std::string> params;  // φ_1, ..., φ_n
  ClosedRootSet C;                  // over B
  Weight sen_weights;               // d x n, dominant rows
  bool generic = true;
  bool crystabelline = false;       // C = ∅

  // Throws std::invalid_argument on repeated labels, non-dominant weights or
  // a C that is not closed.
  static TriangulineSkeleton make(std::vector<std::string> params, const std::set<Root>& C,
                                  Weight h, bool generic = true);
  static TriangulineSkeleton standard(int n, int d, const std::set<Root>& C);
};

std::string skeleton_to_json(const TriangulineSkeleton& s);
// {"params": [...], "C": [[i,j],...], "h": [[...],...], "generic": bool};
// "n" and "d" are optional and checked when present.
TriangulineSkeleton skeleton_from_json(const std::string& text);

// Subsets of Σ as bitmasks, bit σ for the embedding σ.
using Subset = std::uint32_t;

// D_I for I ⊆ Σ, n = 2 only.
struct LatticeNode {
  Subset I = 0;
  std::vector<std::pair<long, long>> weights;  // row σ
};
// D_I → D_{I∪σ}: t_σ^{-h_{σ,2}} D_{I∪σ} ⊂ D_I and t_σ^{h_{σ,1}} D_I ⊂ D_{I∪σ}.
struct LatticeCover {
  Subset from = 0;
  Subset to = 0;
  int sigma = 0;
  long sub_twist = 0;    // -h_{σ,2}
  long super_twist = 0;  // h_{σ,1}
};
struct WeightLattice {
  int d = 0;
  std::vector<LatticeNode> nodes;  // ordered by I
  std::vector<LatticeCover> covers;
};
WeightLattice d_lattice(const TriangulineSkeleton& s);
std::string lattice_to_json(const WeightLattice& l);

struct FssNode {
  Perm label;                 // g with g(φ) = (φ_{g(1)}, ..., φ_{g(n)})
  std::string word;           // e.g. "s2s1s2"
  Perm refinement;            // w ∈ W_{B_C} this node was first reached from
  std::vector<Root> J;        // pairwise orthogonal, inside w^{-1}(S) ∩ C
};
struct FssEdge {
  std::size_t from = 0;
  std::size_t to = 0;
};
struct FssDiagram {
  int n = 0;
  int d = 0;
  std::vector<std::string> params;
  std::vector<FssNode> nodes;
  std::vector<FssEdge> edges;
  bool flat() const { return edges.empty(); }
  std::vector<std::size_t> sources() const;
  std::vector<std::vector<std::size_t>> components() const;
  std::string node_text(std::size_t i) const;  // "s1s3φ"
  std::vector<std::string> ordered_params(std::size_t i) const;
};
// For d = 1 the node of (w, J) carries the label w^{-1} ∘ Π_{α∈J} s_{w(α)}
// and edges join J to J ∪ {α}. For d >= 2 only the refinements are returned.
FssDiagram fss_diagram(const TriangulineSkeleton& s, const Bounds& b = Bounds::from_env());
std::string fss_to_json(const FssDiagram& f);
std::string fss_to_dot(const FssDiagram& f);

// Recorded predictions. These are lookup values with a citation; nothing here
// is computed by the engine.
struct TableEntry {
  std::string query;
  std::vector<long> values;
  std::string status;    // theorem, conjecture or remark
  std::string citation;
};
class OutOfScope : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
// Queries and arguments:
//   hom_dim, ext_dim   part=1|2|3, source=ITBS|TLin, split=0|1, critical=0|1
//   e_mult             I=..., J=... (1-based embeddings), split=0|1
//   constituent_counts d (defaults to the skeleton)
//   surplus_bound      n, d (default to the skeleton)
using TableArgs = std::map<std::string, std::string>;
TableEntry expected_tables(const TriangulineSkeleton& s, const std::string& query, const TableArgs& args = {});
std::string table_to_json(const TableEntry& e);

}  // namespace wallx

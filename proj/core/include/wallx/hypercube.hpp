#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wallx/blockO.hpp"

namespace wallx {

enum class Sign { Plus, Minus };

std::string sign_string(Sign s);
Sign parse_sign(const std::string& s);

// A cell (I, J) holds ∇_I ϑ_J M; I and J are disjoint factor subsets.
using CellKey = std::pair<Vertex, Vertex>;

std::string cell_label(const CellKey& k, int d);  // "I|J", 1-based, e.g. "1|2,3"
CellKey parse_cell_label(const std::string& s, int d);

struct HypercubeMap {
  CellKey from;
  CellKey to;
  int sigma = 0;  // factor whose structure map this is
  ModuleMap map;
  std::size_t rank = 0;
};

// A → B → C → 0 with both maps taken from the diagram.
struct EdgeSequence {
  std::array<CellKey, 3> cells;
  int sigma = 0;
  std::size_t rank_first = 0;
  std::size_t rank_second = 0;
  bool exact = false;
};

struct HypercubeDiagram {
  Sign sign = Sign::Plus;
  int d = 0;
  std::map<CellKey, BlockModule> cells;
  std::vector<HypercubeMap> maps;
  std::vector<EdgeSequence> sequences;
  std::size_t squares = 0;            // commuting squares checked
  const BlockModule& cell(Vertex I, Vertex J) const { return cells.at({I, J}); }
  std::size_t nonzero_cells() const;
};

class ExactnessViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All disjoint pairs (I, J) in a fixed order: I ascending, then J ascending.
std::vector<CellKey> cell_keys(int d);

// ⊡^+ needs AB = 0 in every factor (ι lands in ϑ^+ only then) and throws
// std::invalid_argument otherwise. A non-exact edge sequence or a
// non-commuting square throws ExactnessViolation.
HypercubeDiagram build_hypercube(const BlockModule& m, Sign sign, bool parallel = true);

// The cell from the nested definition, for spot checks.
BlockModule direct_cell(const BlockModule& m, Sign sign, Vertex I, Vertex J);

struct CommutationVerdict {
  std::string diagram;
  bool applicable = true;
  bool holds = false;
  std::string note;
};
struct CommutationReport {
  int sigma = 0;
  int tau = 0;
  std::vector<CommutationVerdict> verdicts;
};
// Reports, for both signs, whether ∇_σ ϑ_τ ≅ ϑ_τ ∇_σ (both orders of the
// factors) and whether the 3x3 face spanned by σ and τ has exact rows and
// columns and commuting squares.
CommutationReport check_commutation(const BlockModule& m, int sigma, int tau);
std::string commutation_to_json(const CommutationReport& r);

std::string hypercube_to_json(const HypercubeDiagram& h);
HypercubeDiagram hypercube_from_json(const std::string& text);
// Nodes carry composition multiplicities, edges map ranks. Positions place the
// cell of (I, J) on the 3^d grid: coordinate 0, 1, 2 per factor.
std::string hypercube_to_dot(const HypercubeDiagram& h);
std::string export_hypercube(const HypercubeDiagram& h, const std::string& format);

}  // namespace wallx

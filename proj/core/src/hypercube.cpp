#include "wallx/hypercube.hpp"

#include <future>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace wallx {

using nlohmann::json;

namespace {

struct Cell {
  Subquotient sq;
  Vertex theta_index = 0;  // Θ_K M hosts the ⊡^+ cell; unused for ⊡^-
};

Vertex full_mask(int d) { return (Vertex{1} << d) - 1; }

bool subset(Vertex a, Vertex b) { return (a & ~b) == 0; }

std::vector<CellKey> keys_within(Vertex mask) {
  std::vector<CellKey> out;
  for (Vertex I = 0; I <= mask; ++I) {
    if (!subset(I, mask)) continue;
    for (Vertex J = 0; J <= mask; ++J)
      if (subset(J, mask) && !(I & J)) out.push_back({I, J});
  }
  return out;
}

Cell plus_cell(const BlockModule& m, Vertex I, Vertex J) {
  Vertex K = I | J;
  BlockModule t = theta(K, m);
  Subspaces top = vartheta_plus_subspace(K, m);
  Subspaces rel = zero_subspaces(t);
  for (int s = 0; s < m.d; ++s)
    if (has(I, s)) rel = sum(rel, apply_map(iota(s, K ^ bit(s), m), vartheta_plus_subspace(K ^ bit(s), m)));
  return {subquotient(t, top, intersection(rel, top)), K};
}

Cell minus_cell(const BlockModule& m, Vertex I, Vertex J) {
  Subspaces top = vartheta_minus_subspace(J, m);
  Subspaces rel = zero_subspaces(m);
  for (int s = 0; s < m.d; ++s)
    if (has(I, s)) rel = sum(rel, vartheta_minus_subspace(J | bit(s), m));
  return {subquotient(m, top, rel), 0};
}

bool surjective(const ModuleMap& g, const BlockModule& dst) {
  for (Vertex v = 0; v < dst.vertices(); ++v)
    if (rank(g.comp[v]) != dst.dims[v]) return false;
  return true;
}

struct Built {
  HypercubeDiagram diagram;
  std::string failure;  // empty when every sequence is exact and squares commute
};

Built assemble(const BlockModule& m, Sign sign, Vertex mask, bool parallel) {
  if (sign == Sign::Plus && !is_strict(m))
    throw std::invalid_argument("the + hypercube needs a module with AB = 0 in every factor");
  Built out;
  HypercubeDiagram& h = out.diagram;
  h.sign = sign;
  h.d = m.d;
  auto keys = keys_within(mask);
  auto make = [&](CellKey k) { return sign == Sign::Plus ? plus_cell(m, k.first, k.second) : minus_cell(m, k.first, k.second); };
  std::map<CellKey, Cell> cells;
  if (parallel) {
    std::vector<std::future<Cell>> jobs;
    for (const auto& k : keys) jobs.push_back(std::async(std::launch::async, make, k));
    for (std::size_t i = 0; i < keys.size(); ++i) cells.emplace(keys[i], jobs[i].get());
  } else {
    for (const auto& k : keys) cells.emplace(k, make(k));
  }
  for (const auto& [k, c] : cells) h.cells.emplace(k, c.sq.module);

  std::map<std::pair<CellKey, CellKey>, std::size_t> index;
  auto add_map = [&](CellKey a, CellKey b, int s) {
    const Cell& src = cells.at(a);
    const Cell& dst = cells.at(b);
    ModuleMap f;
    if (sign == Sign::Plus && src.theta_index != dst.theta_index) {
      ModuleMap io = iota(s, src.theta_index, m);
      f = induced_map(src.sq, dst.sq, &io);
    } else {
      f = induced_map(src.sq, dst.sq, nullptr);
    }
    index[{a, b}] = h.maps.size();
    h.maps.push_back({a, b, s, f, f.rank()});
  };
  for (const auto& [I, J] : keys)
    for (int s = 0; s < m.d; ++s) {
      if (!has(mask, s)) continue;
      Vertex b = bit(s);
      if (sign == Sign::Plus) {
        if (has(J, s)) add_map({I, J}, {I | b, J ^ b}, s);
        if (!has(I | J, s)) add_map({I, J}, {I, J | b}, s);
      } else {
        if (has(J, s)) add_map({I, J}, {I, J ^ b}, s);
        if (!has(I | J, s)) add_map({I, J}, {I | b, J}, s);
      }
    }

  auto fail = [&](const std::string& why) {
    if (out.failure.empty()) out.failure = why;
  };
  for (const auto& [I, J] : keys)
    for (int s = 0; s < m.d; ++s) {
      if (!has(mask, s)) continue;
      Vertex b = bit(s);
      std::array<CellKey, 3> c;
      if (sign == Sign::Plus) {
        if (has(I | J, s)) continue;
        c = {CellKey{I, J}, CellKey{I, J | b}, CellKey{I | b, J}};
      } else {
        if (!has(J, s)) continue;
        // The third term is ∇_{I∪σ} ϑ_{J∖σ}: the cokernel of ϑ_J → ϑ_{J∖σ} after ∇_I.
        c = {CellKey{I, J}, CellKey{I, J ^ b}, CellKey{I | b, J ^ b}};
      }
      const auto& f = h.maps[index.at({c[0], c[1]})];
      const auto& g = h.maps[index.at({c[1], c[2]})];
      EdgeSequence e{c, s, f.rank, g.rank, false};
      e.exact = exact_at_middle(f.map, g.map, h.cells.at(c[1])) && surjective(g.map, h.cells.at(c[2]));
      if (!e.exact)
        fail("edge sequence " + cell_label(c[0], m.d) + " → " + cell_label(c[1], m.d) + " → " +
             cell_label(c[2], m.d) + " is not exact");
      h.sequences.push_back(e);
    }

  // Every pair of two-step paths with the same ends must agree.
  std::map<CellKey, std::vector<std::size_t>> outgoing;
  for (std::size_t i = 0; i < h.maps.size(); ++i) outgoing[h.maps[i].from].push_back(i);
  for (const auto& [src, first] : outgoing) {
    std::map<CellKey, std::vector<ModuleMap>> by_target;
    for (auto i : first)
      for (auto j : outgoing[h.maps[i].to]) by_target[h.maps[j].to].push_back(compose(h.maps[j].map, h.maps[i].map));
    for (const auto& [dst, paths] : by_target) {
      if (paths.size() < 2) continue;
      ++h.squares;
      for (std::size_t p = 1; p < paths.size(); ++p)
        for (std::size_t v = 0; v < paths[0].comp.size(); ++v)
          if (paths[p].comp[v] != paths[0].comp[v])
            fail("square from " + cell_label(src, m.d) + " to " + cell_label(dst, m.d) + " does not commute");
    }
  }
  return out;
}

json matrix_json(const Matrix& a) {
  json rows = json::array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(to_string(a(r, c)));
    rows.push_back(row);
  }
  return {{"shape", {a.rows(), a.cols()}}, {"rows", rows}};
}

Matrix matrix_from_json(const json& j) {
  std::size_t r = j.at("shape").at(0).get<std::size_t>();
  std::size_t c = j.at("shape").at(1).get<std::size_t>();
  Matrix a(r, c);
  const auto& rows = j.at("rows");
  if (rows.size() != r) throw std::invalid_argument("matrix rows disagree with shape");
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("matrix columns disagree with shape");
    for (std::size_t k = 0; k < c; ++k) a(i, k) = parse_rational(rows[i][k].get<std::string>());
  }
  return a;
}

json multiplicities_json(const BlockModule& m) {
  json out = json::object();
  for (const auto& [v, n] : composition_multiplicities(m)) out[vertex_key(v, m.d)] = n;
  return out;
}

}  // namespace

std::string sign_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return Sign::Plus;
  if (s == "-" || s == "minus") return Sign::Minus;
  throw std::invalid_argument("sign must be + or -: " + s);
}

std::string cell_label(const CellKey& k, int d) { return subset_label(k.first, d) + "|" + subset_label(k.second, d); }

CellKey parse_cell_label(const std::string& s, int d) {
  auto bar = s.find('|');
  if (bar == std::string::npos || s.find('|', bar + 1) != std::string::npos)
    throw std::invalid_argument("cell label needs exactly one '|': " + s);
  auto parse = [&](const std::string& part) {
    Vertex out = 0;
    if (part.empty()) return out;
    std::stringstream ss(part);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty() || item.size() > 2 || item.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad factor index in cell label: " + s);
      int k = std::stoi(item);
      if (k < 1 || k > d) throw std::invalid_argument("factor index out of range in cell label: " + s);
      out |= bit(k - 1);
    }
    return out;
  };
  CellKey key{parse(s.substr(0, bar)), parse(s.substr(bar + 1))};
  if (key.first & key.second) throw std::invalid_argument("cell label sets overlap: " + s);
  return key;
}

std::size_t HypercubeDiagram::nonzero_cells() const {
  std::size_t n = 0;
  for (const auto& [k, c] : cells) n += c.is_zero() ? 0 : 1;
  return n;
}

std::vector<CellKey> cell_keys(int d) { return keys_within(full_mask(d)); }

HypercubeDiagram build_hypercube(const BlockModule& m, Sign sign, bool parallel) {
  Built b = assemble(m, sign, full_mask(m.d), parallel);
  if (!b.failure.empty()) throw ExactnessViolation(b.failure);
  // Spot check against the nested definition: the centre and one more cell.
  auto keys = cell_keys(m.d);
  std::vector<CellKey> probe = {sign == Sign::Plus ? CellKey{0, full_mask(m.d)} : CellKey{0, 0},
                                keys[m.total_dim() % keys.size()]};
  for (const auto& k : probe)
    if (composition_multiplicities(direct_cell(m, sign, k.first, k.second)) !=
        composition_multiplicities(b.diagram.cells.at(k)))
      throw ExactnessViolation("cell " + cell_label(k, m.d) + " disagrees with its nested definition");
  return b.diagram;
}

BlockModule direct_cell(const BlockModule& m, Sign sign, Vertex I, Vertex J) {
  if (sign == Sign::Plus) return nabla_plus(I, vartheta_plus(J, m));
  return nabla_minus(I, vartheta_minus(J, m));
}

CommutationReport check_commutation(const BlockModule& m, int sigma, int tau) {
  if (m.d < 2) throw std::invalid_argument("commutation needs at least two factors");
  if (sigma == tau || sigma < 0 || tau < 0 || sigma >= m.d || tau >= m.d)
    throw std::invalid_argument("sigma and tau must be distinct factors");
  CommutationReport rep;
  rep.sigma = sigma;
  rep.tau = tau;
  Vertex bs = bit(sigma), bt = bit(tau);
  for (Sign sign : {Sign::Plus, Sign::Minus}) {
    std::string sg = sign_string(sign);
    if (sign == Sign::Plus && !is_strict(m)) {
      for (const char* name : {"nabla_sigma vartheta_tau", "nabla_tau vartheta_sigma", "face"})
        rep.verdicts.push_back({sg + " " + name, false, false, "⊡^+ not applicable: AB != 0"});
      continue;
    }
    auto nab = [&](Vertex I, const BlockModule& x) { return sign == Sign::Plus ? nabla_plus(I, x) : nabla_minus(I, x); };
    auto vt = [&](Vertex J, const BlockModule& x) { return sign == Sign::Plus ? vartheta_plus(J, x) : vartheta_minus(J, x); };
    for (auto [a, b, name] : {std::tuple{bs, bt, "nabla_sigma vartheta_tau"}, std::tuple{bt, bs, "nabla_tau vartheta_sigma"}}) {
      bool iso = is_isomorphic(nab(a, vt(b, m)), vt(b, nab(a, m)));
      rep.verdicts.push_back({sg + " " + name, true, iso, iso ? "isomorphic" : "not isomorphic"});
    }
    Built face = assemble(m, sign, bs | bt, false);
    bool ok = face.failure.empty();
    rep.verdicts.push_back({sg + " face", true, ok,
                            ok ? "rows and columns exact, " + std::to_string(face.diagram.squares) + " squares commute"
                               : face.failure});
  }
  return rep;
}

std::string commutation_to_json(const CommutationReport& r) {
  json v = json::array();
  for (const auto& x : r.verdicts)
    v.push_back({{"diagram", x.diagram}, {"applicable", x.applicable}, {"holds", x.holds}, {"note", x.note}});
  return json{{"sigma", r.sigma + 1}, {"tau", r.tau + 1}, {"verdicts", v}}.dump();
}

std::string hypercube_to_json(const HypercubeDiagram& h) {
  json cells = json::object();
  for (const auto& [k, c] : h.cells)
    cells[cell_label(k, h.d)] = {{"module", json::parse(module_to_json(c))}, {"multiplicities", multiplicities_json(c)}};
  json maps = json::array();
  for (const auto& f : h.maps) {
    json comps = json::object();
    for (Vertex v = 0; v < f.map.comp.size(); ++v) comps[vertex_key(v, h.d)] = matrix_json(f.map.comp[v]);
    maps.push_back({{"from", cell_label(f.from, h.d)},
                    {"to", cell_label(f.to, h.d)},
                    {"sigma", f.sigma + 1},
                    {"rank", f.rank},
                    {"components", comps}});
  }
  json seqs = json::array();
  for (const auto& e : h.sequences) {
    json cs = json::array();
    for (const auto& c : e.cells) cs.push_back(cell_label(c, h.d));
    seqs.push_back({{"cells", cs}, {"sigma", e.sigma + 1}, {"ranks", {e.rank_first, e.rank_second}}, {"exact", e.exact}});
  }
  json j = {{"sign", sign_string(h.sign)}, {"d", h.d},        {"cells", cells},
            {"maps", maps},                {"sequences", seqs}, {"squares", h.squares}};
  return j.dump();
}

HypercubeDiagram hypercube_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("hypercube JSON: ") + e.what());
  }
  HypercubeDiagram h;
  try {
    h.sign = parse_sign(j.at("sign").get<std::string>());
    h.d = j.at("d").get<int>();
    for (const auto& [label, c] : j.at("cells").items())
      h.cells.emplace(parse_cell_label(label, h.d), module_from_json(c.at("module").dump()));
    for (const auto& f : j.at("maps")) {
      HypercubeMap x;
      x.from = parse_cell_label(f.at("from").get<std::string>(), h.d);
      x.to = parse_cell_label(f.at("to").get<std::string>(), h.d);
      x.sigma = f.at("sigma").get<int>() - 1;
      x.rank = f.at("rank").get<std::size_t>();
      x.map.comp.resize(std::size_t{1} << h.d);
      for (const auto& [key, a] : f.at("components").items()) x.map.comp.at(parse_vertex_key(key)) = matrix_from_json(a);
      h.maps.push_back(std::move(x));
    }
    for (const auto& e : j.at("sequences")) {
      EdgeSequence s;
      for (std::size_t i = 0; i < 3; ++i) s.cells[i] = parse_cell_label(e.at("cells").at(i).get<std::string>(), h.d);
      s.sigma = e.at("sigma").get<int>() - 1;
      s.rank_first = e.at("ranks").at(0).get<std::size_t>();
      s.rank_second = e.at("ranks").at(1).get<std::size_t>();
      s.exact = e.at("exact").get<bool>();
      h.sequences.push_back(s);
    }
    h.squares = j.at("squares").get<std::size_t>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("hypercube JSON: ") + e.what());
  }
  return h;
}

std::string hypercube_to_dot(const HypercubeDiagram& h) {
  auto coord = [&](const CellKey& k, int s) {
    bool in_i = has(k.first, s), in_j = has(k.second, s);
    if (h.sign == Sign::Plus) return in_i ? 2 : in_j ? 1 : 0;
    return in_i ? 2 : in_j ? 0 : 1;
  };
  std::ostringstream os;
  os << "digraph hypercube {\n";
  os << "  graph [layout=neato, label=\"" << (h.sign == Sign::Plus ? "box+" : "box-") << "\"];\n";
  os << "  node [shape=box];\n";
  for (const auto& [k, c] : h.cells) {
    int x = 0, y = 0;
    for (int s = 0; s < h.d; ++s) {
      int c0 = coord(k, s);
      if (s == 0) x += 3 * c0;
      if (s == 1) y += 3 * c0;
      if (s == 2) {
        x += c0;
        y += c0;
      }
    }
    os << "  \"" << cell_label(k, h.d) << "\" [label=\"" << cell_label(k, h.d) << "\\n"
       << multiplicities_string(composition_multiplicities(c), c.d) << "\", pos=\"" << x << "," << y << "!\"];\n";
  }
  for (const auto& f : h.maps)
    os << "  \"" << cell_label(f.from, h.d) << "\" -> \"" << cell_label(f.to, h.d) << "\" [label=\"" << f.rank
       << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string export_hypercube(const HypercubeDiagram& h, const std::string& format) {
  if (format == "json") return hypercube_to_json(h);
  if (format == "dot") return hypercube_to_dot(h);
  throw std::invalid_argument("unknown export format: " + format);
}

}  // namespace wallx

#include "wallx/galois.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace wallx {

using nlohmann::json;

TriangulineSkeleton TriangulineSkeleton::make(std::vector<std::string> params, const std::set<Root>& C,
                                              Weight h, bool generic) {
  int n = static_cast<int>(params.size());
  if (n < 1) throw std::invalid_argument("skeleton needs at least one parameter");
  if (std::set<std::string>(params.begin(), params.end()).size() != params.size())
    throw std::invalid_argument("skeleton parameters must be distinct");
  if (h.d() < 1 || static_cast<int>(h.n()) != n)
    throw std::invalid_argument("Sen weights must be a d x " + std::to_string(n) + " table");
  if (!is_dominant(h)) throw std::invalid_argument("Sen weights must be dominant");
  for (const auto& r : C)
    if (!r.positive() || r.j > n) throw std::invalid_argument("C must consist of positive roots");
  TriangulineSkeleton s;
  s.n = n;
  s.d = static_cast<int>(h.d());
  s.params = std::move(params);
  s.C = make_closed(C, StandardParabolic::borel(n));
  s.sen_weights = std::move(h);
  s.generic = generic;
  s.crystabelline = C.empty();
  return s;
}

TriangulineSkeleton TriangulineSkeleton::standard(int n, int d, const std::set<Root>& C) {
  if (d < 1) throw std::invalid_argument("d must be positive");
  std::vector<std::string> params;
  for (int i = 1; i <= n; ++i) params.push_back("phi" + std::to_string(i));
  return make(params, C, theta(static_cast<std::size_t>(d), n));
}

std::string skeleton_to_json(const TriangulineSkeleton& s) {
  json j;
  j["n"] = s.n;
  j["d"] = s.d;
  j["params"] = s.params;
  j["C"] = json::parse(closed_set_to_json(s.C));
  j["h"] = s.sen_weights.rows;
  j["generic"] = s.generic;
  j["crystabelline"] = s.crystabelline;
  return j.dump();
}

TriangulineSkeleton skeleton_from_json(const std::string& text) {
  json j = json::parse(text);
  auto params = j.at("params").get<std::vector<std::string>>();
  std::set<Root> C;
  if (j.contains("C"))
    for (const auto& pr : j.at("C")) C.insert({pr.at(0).get<int>(), pr.at(1).get<int>()});
  Weight h(j.at("h").get<std::vector<std::vector<long>>>());
  auto s = TriangulineSkeleton::make(params, C, h, j.value("generic", true));
  if (j.contains("n") && j.at("n").get<int>() != s.n) throw std::invalid_argument("n does not match params");
  if (j.contains("d") && j.at("d").get<int>() != s.d) throw std::invalid_argument("d does not match h");
  if (j.contains("crystabelline") && j.at("crystabelline").get<bool>() != s.crystabelline)
    throw std::invalid_argument("crystabelline flag does not match C");
  return s;
}

WeightLattice d_lattice(const TriangulineSkeleton& s) {
  if (s.n != 2) throw std::invalid_argument("the D_I lattice needs n = 2, got n=" + std::to_string(s.n));
  if (s.d > 16) throw BoundsExceeded("d_lattice: d > 16");
  WeightLattice l;
  l.d = s.d;
  Subset full = (Subset{1} << s.d) - 1;
  for (Subset I = 0; I <= full; ++I) {
    LatticeNode node{I, {}};
    for (int sg = 0; sg < s.d; ++sg) {
      const auto& h = s.sen_weights.rows[sg];
      node.weights.push_back((I >> sg) & 1u ? std::pair{h[0], h[1]} : std::pair{0L, 0L});
    }
    l.nodes.push_back(node);
    for (int sg = 0; sg < s.d; ++sg) {
      if ((I >> sg) & 1u) continue;
      const auto& h = s.sen_weights.rows[sg];
      l.covers.push_back({I, I | (Subset{1} << sg), sg, -h[1], h[0]});
    }
  }
  return l;
}

namespace {

std::string subset_string(Subset I, int d) {
  std::string out;
  for (int s = 0; s < d; ++s)
    if ((I >> s) & 1u) out += (out.empty() ? "" : ",") + std::to_string(s + 1);
  return out;
}

}  // namespace

std::string lattice_to_json(const WeightLattice& l) {
  json nodes = json::array(), covers = json::array();
  for (const auto& nd : l.nodes) {
    json w = json::array();
    for (const auto& [a, b] : nd.weights) w.push_back({a, b});
    nodes.push_back({{"I", subset_string(nd.I, l.d)}, {"weights", w}});
  }
  for (const auto& c : l.covers)
    covers.push_back({{"from", subset_string(c.from, l.d)},
                      {"to", subset_string(c.to, l.d)},
                      {"sigma", c.sigma + 1},
                      {"sub_twist", c.sub_twist},
                      {"super_twist", c.super_twist}});
  return json{{"d", l.d}, {"nodes", nodes}, {"covers", covers}}.dump();
}

std::vector<std::size_t> FssDiagram::sources() const {
  std::vector<bool> hit(nodes.size(), false);
  for (const auto& e : edges) hit[e.to] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!hit[i]) out.push_back(i);
  return out;
}

std::vector<std::vector<std::size_t>> FssDiagram::components() const {
  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) parent[find(e.to)] = find(e.from);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < nodes.size(); ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [r, g] : groups) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

std::string FssDiagram::node_text(std::size_t i) const { return nodes.at(i).word + "φ"; }

std::vector<std::string> FssDiagram::ordered_params(std::size_t i) const {
  std::vector<std::string> out;
  for (int x : nodes.at(i).label) out.push_back(params[x - 1]);
  return out;
}

FssDiagram fss_diagram(const TriangulineSkeleton& s, const Bounds& b) {
  FssDiagram f;
  f.n = s.n;
  f.d = s.d;
  f.params = s.params;
  std::map<Perm, std::size_t> index;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  auto add = [&](const Perm& label, const std::string& word, const Perm& w, const std::vector<Root>& J) {
    auto [it, fresh] = index.emplace(label, f.nodes.size());
    if (fresh) f.nodes.push_back({label, word, w, J});
    return it->second;
  };
  for (const Perm& w : refinements(s.C, b)) {
    Perm g = perm_inverse(w);
    std::string base = word_string(reduced_word(g));
    if (s.d != 1) {
      add(g, base, w, {});
      continue;
    }
    // α ∈ C with w(α) simple.
    std::vector<Root> cand;
    for (const auto& a : s.C.all()) {
      Root wa = apply_root(w, a);
      if (wa.j == wa.i + 1) cand.push_back(a);
    }
    std::size_t m = cand.size();
    std::map<unsigned, std::size_t> at;  // subset of cand → node
    std::vector<unsigned> subsets;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      bool ok = true;
      for (std::size_t x = 0; x < m && ok; ++x)
        for (std::size_t y = x + 1; y < m && ok; ++y)
          if ((mask >> x & 1u) && (mask >> y & 1u) && inner(cand[x], cand[y]) != 0) ok = false;
      if (ok) subsets.push_back(mask);
    }
    std::stable_sort(subsets.begin(), subsets.end(),
                     [](unsigned a, unsigned c) { return std::popcount(a) < std::popcount(c); });
    for (unsigned mask : subsets) {
      std::vector<Root> J;
      std::vector<int> simple;
      Perm label = g;
      for (std::size_t x = 0; x < m; ++x)
        if (mask >> x & 1u) {
          J.push_back(cand[x]);
          simple.push_back(apply_root(w, cand[x]).i);
        }
      std::sort(simple.begin(), simple.end());
      std::string word = base;
      for (int i : simple) {
        label = perm_compose(label, simple_reflection(s.n, i));
        word += "s" + std::to_string(i);
      }
      at[mask] = add(label, word, w, J);
      for (std::size_t x = 0; x < m; ++x)
        if (mask >> x & 1u) edges.insert({at.at(mask & ~(1u << x)), at[mask]});
    }
  }
  for (const auto& [a, c] : edges) f.edges.push_back({a, c});
  return f;
}

std::string fss_to_json(const FssDiagram& f) {
  json nodes = json::array(), edges = json::array();
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const auto& nd = f.nodes[i];
    json J = json::array();
    for (const auto& r : nd.J) J.push_back({r.i, r.j});
    nodes.push_back({{"label", nd.label},
                     {"word", nd.word},
                     {"params", f.ordered_params(i)},
                     {"refinement", nd.refinement},
                     {"J", J}});
  }
  for (const auto& e : f.edges) edges.push_back({e.from, e.to});
  return json{{"n", f.n}, {"d", f.d}, {"nodes", nodes}, {"edges", edges}}.dump();
}

std::string fss_to_dot(const FssDiagram& f) {
  std::ostringstream os;
  os << "digraph fss {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=box];\n";
  for (std::size_t i = 0; i < f.nodes.size(); ++i) os << "  n" << i << " [label=\"" << f.node_text(i) << "\"];\n";
  for (const auto& e : f.edges) os << "  n" << e.from << " -> n" << e.to << ";\n";
  os << "}\n";
  return os.str();
}

namespace {

long arg_long(const TableArgs& args, const std::string& key, std::optional<long> fallback = {}) {
  auto it = args.find(key);
  if (it == args.end()) {
    if (fallback) return *fallback;
    throw OutOfScope("missing argument: " + key);
  }
  try {
    std::size_t used = 0;
    long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw OutOfScope("argument " + key + " is not an integer: " + it->second);
  }
}

bool arg_flag(const TableArgs& args, const std::string& key) {
  long v = arg_long(args, key, 0);
  if (v != 0 && v != 1) throw OutOfScope("flag " + key + " must be 0 or 1");
  return v == 1;
}

Subset arg_subset(const TableArgs& args, const std::string& key, int d) {
  auto it = args.find(key);
  if (it == args.end() || it->second.empty()) return 0;
  Subset out = 0;
  std::stringstream ss(it->second);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int s = 0;
    try {
      s = std::stoi(tok);
    } catch (const std::logic_error&) {
      throw OutOfScope("bad embedding in " + key + ": " + tok);
    }
    if (s < 1 || s > d) throw OutOfScope(key + " names embedding " + tok + " outside 1.." + std::to_string(d));
    out |= Subset{1} << (s - 1);
  }
  return out;
}

long ipow(long base, long e) {
  long r = 1;
  while (e-- > 0) r *= base;
  return r;
}

TableEntry hom_ext(const TriangulineSkeleton& s, const std::string& query, const TableArgs& args) {
  if (s.n != 2 || s.d != 2) throw OutOfScope(query + " is recorded for n = 2, d = 2 only");
  long part = arg_long(args, "part");
  auto src = args.count("source") ? args.at("source") : std::string("ITBS");
  TableEntry e{query, {}, "theorem", ""};
  if (src == "ITBS") {
    if (!s.generic || !s.crystabelline) throw OutOfScope("ITBS needs a generic crystabelline skeleton");
    if (part == 1) e.values = {2};
    else if (part == 2) e.values = {4};
    else if (part == 3) e.values = {arg_flag(args, "split") ? 4L : 2L};
    else throw OutOfScope("ITBS has parts 1, 2, 3");
  } else if (src == "TLin") {
    if (part == 1) e.values = {2};
    else if (part == 2) e.values = {4};
    else if (part == 3) e.values = {arg_flag(args, "critical") ? 4L : 2L};
    else throw OutOfScope("TLin has parts 1, 2, 3");
  } else {
    throw OutOfScope("unknown source: " + src);
  }
  e.citation = src + " (" + std::to_string(part) + ")";
  return e;
}

}  // namespace

TableEntry expected_tables(const TriangulineSkeleton& s, const std::string& query, const TableArgs& args) {
  if (query == "hom_dim" || query == "ext_dim") return hom_ext(s, query, args);
  if (query == "e_mult") {
    if (s.n != 2) throw OutOfScope("e_mult is recorded for n = 2 only");
    Subset I = arg_subset(args, "I", s.d), J = arg_subset(args, "J", s.d);
    if (I & J) throw OutOfScope("I and J must be disjoint");
    long value = 1;
    if (s.crystabelline && arg_flag(args, "split")) value = s.d - std::popcount(I) + 1;
    return {query, {value}, "conjecture", "conjGL2 (3)"};
  }
  if (query == "constituent_counts") {
    long d = arg_long(args, "d", s.d);
    if (d < 1 || d > 30) throw OutOfScope("constituent_counts needs 1 <= d <= 30");
    return {query, {ipow(2, d) + d * ipow(2, d - 1), ipow(3, d) + d * ipow(3, d - 1)}, "remark", "Rk-mult"};
  }
  if (query == "surplus_bound") {
    long n = arg_long(args, "n", s.n), d = arg_long(args, "d", s.d);
    if (n < 2 || n > 40 || d < 1 || d > 1000) throw OutOfScope("surplus_bound needs 2 <= n <= 40, 1 <= d <= 1000");
    return {query, {1 + (ipow(2, n) - n * (n + 1) / 2 - 1) * d}, "theorem", "Tsurplus2"};
  }
  throw OutOfScope("unknown table query: " + query);
}

std::string table_to_json(const TableEntry& e) {
  return json{{"query", e.query}, {"values", e.values}, {"status", e.status}, {"citation", e.citation}}.dump();
}

}  // namespace wallx

// wallx: command-line front end.
//
// Exit codes: 0 success, 1 malformed input, 2 exactness violation,
// 3 enumeration or truncation bound exceeded, 4 verification failed,
// 5 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wallx/expr.hpp"
#include "wallx/galois.hpp"
#include "wallx/hypercube.hpp"
#include "wallx/ltensor.hpp"
#include "wallx/parabolic.hpp"
#include "wallx/verify.hpp"
#include "wallx/weightmodel.hpp"

using namespace wallx;

namespace {

enum Exit { kOk = 0, kInput = 1, kExactness = 2, kBounds = 3, kVerify = 4, kInternal = 5 };

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string weight_text(const Weight& w) {
  std::string s;
  for (std::size_t r = 0; r < w.rows.size(); ++r) {
    if (r) s += ';';
    for (std::size_t i = 0; i < w.rows[r].size(); ++i) s += (i ? "," : "") + std::to_string(w.rows[r][i]);
  }
  return s;
}

std::string vec_text(const std::vector<long>& v) { return weight_text(Weight({v})); }

std::string perm_text(const Perm& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s;
}

std::string word_or_id(const std::string& w) { return w.empty() ? "id" : w; }

std::vector<int> parse_composition(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad composition part: '" + tok + "'");
    }
  }
  return out;
}

struct Options {
  std::string bounds;
  // hypercube / module / commute
  std::string expr;
  std::string sign = "+";
  std::string format;
  std::string output;
  int sigma = 1;
  int tau = 2;
  // ltensor / refinements
  int n = 0;
  int d = 0;
  std::string mode = "mult";
  std::string parabolic;
  std::string c;
  // fss / lattice / tables
  std::string skeleton;
  std::string query;
  std::map<std::string, std::string> table_args;
  // verify
  std::string suite;
  std::uint64_t seed = 1;
  std::size_t size = 0;
  bool serial = false;
  // wm-compare
  std::string pattern = "all";
  int depth = 12;
};

int cmd_hypercube(const Options& o) {
  BlockModule m = parse_module(o.expr);
  auto h = build_hypercube(m, parse_sign(o.sign));
  write_output(o.output, export_hypercube(h, o.format.empty() ? "json" : o.format));
  return kOk;
}

int cmd_module(const Options& o) {
  BlockModule m = parse_module(o.expr);
  std::string fmt = o.format.empty() ? "json" : o.format;
  if (fmt == "json") {
    write_output(o.output, module_to_json(m));
  } else if (fmt == "tsv") {
    auto s = structure(m);
    std::ostringstream os;
    os << "factors\t" << m.d << "\n";
    os << "dimension\t" << m.total_dim() << "\n";
    os << "multiplicities\t" << multiplicities_string(s.multiplicities, m.d) << "\n";
    os << "summands\t" << s.summands.size() << "\n";
    os << "strict\t" << (is_strict(m) ? "yes" : "no") << "\n";
    write_output(o.output, os.str());
  } else {
    throw std::invalid_argument("module: unknown format " + fmt);
  }
  return kOk;
}

int cmd_commute(const Options& o) {
  BlockModule m = parse_module(o.expr);
  write_output(o.output, commutation_to_json(check_commutation(m, o.sigma - 1, o.tau - 1)));
  return kOk;
}

int cmd_ltensor(const Options& o) {
  std::string fmt = o.format.empty() ? "tsv" : o.format;
  if (fmt != "tsv" && fmt != "json") throw std::invalid_argument("ltensor: format must be tsv or json");
  nlohmann::json js = nlohmann::json::array();
  std::ostringstream os;
  if (o.mode == "mult") {
    for (const auto& [w, m] : ltensor_character(o.n, o.d).entries) {
      os << weight_text(w) << '\t' << m << '\n';
      js.push_back({{"weight", w.rows}, {"multiplicity", m}});
    }
  } else if (o.mode == "ordinary") {
    for (const auto& w : ordinary_weights(o.n, o.d)) {
      os << weight_text(w) << '\n';
      js.push_back(w.rows);
    }
  } else if (o.mode == "isotypic") {
    StandardParabolic P = o.parabolic.empty() ? StandardParabolic::borel(o.n)
                                              : StandardParabolic(parse_composition(o.parabolic));
    for (const auto& comp : isotypic_components(o.n, o.d, P)) {
      os << vec_text(comp.levi_character) << '\t' << comp.weights.total_dim() << '\t' << comp.weights.entries.size()
         << '\n';
      js.push_back({{"levi_character", comp.levi_character},
                    {"dimension", comp.weights.total_dim()},
                    {"weights", comp.weights.entries.size()}});
    }
  } else if (o.mode == "ordpart") {
    StandardParabolic B = StandardParabolic::borel(o.n);
    ClosedRootSet C = make_closed(parse_root_list(o.c, o.n), B);
    auto dim = ordinary_part_dim(C, o.n, o.d);
    os << dim << '\n';
    js = {{"n", o.n}, {"d", o.d}, {"C", nlohmann::json::parse(closed_set_to_json(C))}, {"dimension", dim}};
  } else {
    throw std::invalid_argument("ltensor: unknown mode " + o.mode);
  }
  write_output(o.output, fmt == "json" ? js.dump() : os.str());
  return kOk;
}

int cmd_refinements(const Options& o) {
  auto s = TriangulineSkeleton::standard(o.n, 1, parse_root_list(o.c, o.n));
  std::string fmt = o.format.empty() ? "tsv" : o.format;
  std::ostringstream os;
  nlohmann::json js = nlohmann::json::array();
  for (const auto& w : refinements(s.C)) {
    Perm g = perm_inverse(w);
    std::string word = word_string(reduced_word(g));
    std::string labels;
    for (std::size_t i = 0; i < g.size(); ++i) labels += (i ? "," : "") + s.params[g[i] - 1];
    os << perm_text(w) << '\t' << word_or_id(word) << '\t' << labels << '\n';
    js.push_back({{"w", w}, {"word", word}, {"params", labels}});
  }
  if (fmt != "tsv" && fmt != "json") throw std::invalid_argument("refinements: format must be tsv or json");
  write_output(o.output, fmt == "json" ? js.dump() : os.str());
  return kOk;
}

int cmd_fss(const Options& o) {
  auto s = skeleton_from_json(read_input(o.skeleton));
  auto f = fss_diagram(s);
  std::string fmt = o.format.empty() ? "tsv" : o.format;
  if (fmt == "json") {
    write_output(o.output, fss_to_json(f));
  } else if (fmt == "dot") {
    write_output(o.output, fss_to_dot(f));
  } else if (fmt == "tsv") {
    std::ostringstream os;
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
      auto ps = f.ordered_params(i);
      std::string labels;
      for (std::size_t k = 0; k < ps.size(); ++k) labels += (k ? "," : "") + ps[k];
      os << i << '\t' << f.node_text(i) << '\t' << labels << '\n';
    }
    for (const auto& e : f.edges) os << e.from << " -> " << e.to << '\n';
    write_output(o.output, os.str());
  } else {
    throw std::invalid_argument("fss: unknown format " + fmt);
  }
  return kOk;
}

int cmd_lattice(const Options& o) {
  auto l = d_lattice(skeleton_from_json(read_input(o.skeleton)));
  std::string fmt = o.format.empty() ? "json" : o.format;
  if (fmt == "json") {
    write_output(o.output, lattice_to_json(l));
  } else if (fmt == "tsv") {
    std::ostringstream os;
    for (const auto& nd : l.nodes) {
      os << (nd.I ? "" : "-");
      for (int s = 0; s < l.d; ++s)
        if (nd.I >> s & 1u) os << (nd.I & ((Subset{1} << s) - 1) ? "," : "") << s + 1;
      for (const auto& [a, b] : nd.weights) os << '\t' << a << ',' << b;
      os << '\n';
    }
    write_output(o.output, os.str());
  } else {
    throw std::invalid_argument("lattice: unknown format " + fmt);
  }
  return kOk;
}

int cmd_tables(const Options& o) {
  TriangulineSkeleton s;
  if (!o.skeleton.empty()) {
    s = skeleton_from_json(read_input(o.skeleton));
  } else {
    int d = o.table_args.count("d") ? std::atoi(o.table_args.at("d").c_str()) : 1;
    s = TriangulineSkeleton::standard(2, d < 1 ? 1 : d, {});
  }
  auto e = expected_tables(s, o.query, o.table_args);
  std::string fmt = o.format.empty() ? "text" : o.format;
  if (fmt == "json") {
    write_output(o.output, table_to_json(e));
  } else if (fmt == "text") {
    std::string line;
    for (std::size_t i = 0; i < e.values.size(); ++i) line += (i ? " " : "") + std::to_string(e.values[i]);
    write_output(o.output, line);
  } else {
    throw std::invalid_argument("tables: format must be text or json");
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  auto reps = run_suites(o.suite, o.seed, o.size, !o.serial);
  write_output(o.output, report_to_json(reps));
  for (const auto& r : reps)
    if (!r.passed()) return kVerify;
  return kOk;
}

int cmd_wm_compare(const Options& o) {
  std::vector<std::string> names = o.pattern == "all" ? wm_pattern_names() : std::vector<std::string>{o.pattern};
  std::ostringstream os;
  bool ok = true;
  for (const auto& name : names) {
    auto rep = wm_compare(name, o.depth);
    if (!rep.conclusive) {
      os << name << "\tinconclusive\trequired depth " << rep.required_depth << '\n';
      ok = false;
      continue;
    }
    for (const auto& row : rep.rows) {
      os << name << '\t' << row.functor << '\t' << multiplicities_string(row.block, 1) << '\t'
         << multiplicities_string(row.weight, 1) << '\t' << (row.equal ? "equal" : "DIFFER") << '\n';
      ok = ok && row.equal;
    }
  }
  write_output(o.output, os.str());
  return ok ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wallx: wall-crossing hypercubes over the gl2 block model"};
  app.footer(
      "Exit codes: 0 ok, 1 malformed input, 2 exactness violation, 3 bound exceeded, "
      "4 verification failed, 5 internal error.\n"
      "WALLX_BOUNDS raises enumeration limits, e.g. WALLX_BOUNDS=refine_n=9 or WALLX_BOUNDS=2.");
  app.require_subcommand(1);
  Options o;
  app.add_option("--bounds", o.bounds, "Same syntax as WALLX_BOUNDS; overrides it");

  auto* hc = app.add_subcommand("hypercube", "Assemble the hypercube of a module expression");
  hc->add_option("expr", o.expr, "Module expression, e.g. \"M⊗M\"")->required();
  hc->add_option("--sign", o.sign, "+ or -")->capture_default_str();
  hc->add_option("--format", o.format, "json or dot");
  hc->add_option("-o,--output", o.output, "Output file");

  auto* md = app.add_subcommand("module", "Build a module expression and print it");
  md->add_option("expr", o.expr)->required();
  md->add_option("--format", o.format, "json or tsv");
  md->add_option("-o,--output", o.output);

  auto* cm = app.add_subcommand("commute", "Check commutation of the functors for two factors");
  cm->add_option("expr", o.expr)->required();
  cm->add_option("--sigma", o.sigma, "1-based factor")->capture_default_str();
  cm->add_option("--tau", o.tau, "1-based factor")->capture_default_str();
  cm->add_option("-o,--output", o.output);

  auto* lt = app.add_subcommand("ltensor", "Weights of the fundamental tensor");
  lt->add_option("n", o.n)->required();
  lt->add_option("d", o.d)->required();
  lt->add_option("--mode", o.mode, "mult, ordinary, isotypic or ordpart")->capture_default_str();
  lt->add_option("--parabolic", o.parabolic, "Block sizes, e.g. 2,1");
  lt->add_option("--c", o.c, "Roots of C as i,j;k,l");
  lt->add_option("--format", o.format, "tsv or json");
  lt->add_option("-o,--output", o.output);

  auto* rf = app.add_subcommand("refinements", "Refinements of a skeleton with extension support C");
  rf->add_option("n", o.n)->required();
  rf->add_option("--c", o.c, "Roots of C as i,j;k,l");
  rf->add_option("--format", o.format, "tsv or json");
  rf->add_option("-o,--output", o.output);

  auto* fs = app.add_subcommand("fss", "fss diagram of a skeleton file");
  fs->add_option("skeleton", o.skeleton, "Skeleton JSON file, - for stdin")->required();
  fs->add_option("--format", o.format, "tsv, json or dot");
  fs->add_option("-o,--output", o.output);

  auto* la = app.add_subcommand("lattice", "D_I weight lattice of a rank-2 skeleton file");
  la->add_option("skeleton", o.skeleton)->required();
  la->add_option("--format", o.format, "json or tsv");
  la->add_option("-o,--output", o.output);

  auto* tb = app.add_subcommand("tables", "Recorded prediction values");
  tb->add_option("query", o.query, "hom_dim, ext_dim, e_mult, constituent_counts or surplus_bound")->required();
  tb->add_option("--skeleton", o.skeleton, "Skeleton JSON file (default: n = 2, crystabelline)");
  for (const char* key : {"n", "d", "part", "source", "split", "critical", "I", "J"}) {
    std::string k = key;
    tb->add_option_function<std::string>("--" + k, [&o, k](const std::string& v) { o.table_args[k] = v; });
  }
  tb->add_option("--format", o.format, "text or json");
  tb->add_option("-o,--output", o.output);

  auto* vf = app.add_subcommand("verify", "Run a property suite on a seeded corpus");
  vf->add_option("suite", o.suite, "appendixA, functor-laws, hypercube-edges, ordweight, cross-backend or all")
      ->required();
  vf->add_option("--seed", o.seed)->capture_default_str();
  vf->add_option("--size", o.size, "Corpus size, 0 for the suite default")->capture_default_str();
  vf->add_flag("--serial", o.serial, "Run cases one at a time");
  vf->add_option("-o,--output", o.output);

  auto* wc = app.add_subcommand("wm-compare", "Compare the block and weight-module backends");
  wc->add_option("pattern", o.pattern, "L, Ls, M, Ms, Mv, P or all")->capture_default_str();
  wc->add_option("--depth", o.depth)->capture_default_str();
  wc->add_option("-o,--output", o.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  if (!o.bounds.empty()) setenv("WALLX_BOUNDS", o.bounds.c_str(), 1);

  try {
    if (hc->parsed()) return cmd_hypercube(o);
    if (md->parsed()) return cmd_module(o);
    if (cm->parsed()) return cmd_commute(o);
    if (lt->parsed()) return cmd_ltensor(o);
    if (rf->parsed()) return cmd_refinements(o);
    if (fs->parsed()) return cmd_fss(o);
    if (la->parsed()) return cmd_lattice(o);
    if (tb->parsed()) return cmd_tables(o);
    if (vf->parsed()) return cmd_verify(o);
    if (wc->parsed()) return cmd_wm_compare(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n  " << o.expr << "\n  " << std::string(e.column() - 1, ' ') << "^\n";
    return kInput;
  } catch (const ExactnessViolation& e) {
    std::cerr << "exactness violation: " << e.what() << '\n';
    return kExactness;
  } catch (const BoundsExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << '\n';
    return kBounds;
  } catch (const DepthError& e) {
    std::cerr << "truncation too shallow: " << e.what() << '\n';
    return kBounds;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << '\n';
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

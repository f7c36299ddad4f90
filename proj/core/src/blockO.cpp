#include "wallx/blockO.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace wallx {

using nlohmann::json;

namespace {

int popcount(Vertex v) { return __builtin_popcount(v); }

// Gather the bits of `mask` found at the positions of `support`, smallest
// position first, into a dense index.
std::size_t compress(Vertex mask, Vertex support) {
  std::size_t c = 0;
  int t = 0;
  for (int s = 0; support >> s; ++s)
    if (has(support, s)) {
      if (has(mask, s)) c |= std::size_t{1} << t;
      ++t;
    }
  return c;
}

Vertex expand(std::size_t c, Vertex support) {
  Vertex mask = 0;
  int t = 0;
  for (int s = 0; support >> s; ++s)
    if (has(support, s)) {
      if ((c >> t) & 1) mask |= bit(s);
      ++t;
    }
  return mask;
}

Matrix stack(const std::vector<Matrix>& rows, std::size_t cols) {
  Matrix out(0, cols);
  for (const auto& r : rows) out = Matrix::vcat(out, r);
  return out;
}

// Left inverse of a matrix with independent columns.
Matrix left_inverse(const Matrix& b) {
  if (b.cols() == 0) return Matrix(0, b.rows());
  Matrix bt = b.transpose();
  return inverse(bt * b) * bt;
}

bool nilpotent(const Matrix& a) { return a.rows() == 0 || power(a, a.rows()).is_zero(); }

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

long coefficient(std::mt19937_64& rng) { return static_cast<long>(draw(rng, 2001)) - 1000; }

}  // namespace

BlockModule BlockModule::zero(int d) { return with_dims(d, std::vector<std::size_t>(std::size_t{1} << d, 0)); }

BlockModule BlockModule::with_dims(int d, std::vector<std::size_t> dims) {
  if (d < 0 || d > 16) throw std::invalid_argument("factor count out of range");
  if (dims.size() != (std::size_t{1} << d)) throw std::invalid_argument("dims must have 2^d entries");
  BlockModule m;
  m.d = d;
  m.dims = std::move(dims);
  m.arrow.assign(d, std::vector<Matrix>(m.vertices()));
  for (int s = 0; s < d; ++s)
    for (Vertex v = 0; v < m.vertices(); ++v) m.arrow[s][v] = Matrix(m.dims[v ^ bit(s)], m.dims[v]);
  return m;
}

std::size_t BlockModule::total_dim() const {
  std::size_t t = 0;
  for (auto x : dims) t += x;
  return t;
}

Matrix BlockModule::z(int s, Vertex v) const {
  if (!has(v, s)) return Matrix(dims[v], dims[v]);
  return at(s, v ^ bit(s)) * at(s, v);
}

std::size_t ModuleMap::rank() const {
  std::size_t r = 0;
  for (const auto& c : comp) r += wallx::rank(c);
  return r;
}

bool ModuleMap::is_zero() const {
  for (const auto& c : comp)
    if (!c.is_zero()) return false;
  return true;
}

std::optional<std::string> check_relations(const BlockModule& m) {
  if (m.dims.size() != m.vertices()) return "dims must have 2^d entries";
  if (static_cast<int>(m.arrow.size()) != m.d) return "one arrow family per factor required";
  for (int s = 0; s < m.d; ++s) {
    if (m.arrow[s].size() != m.vertices()) return "arrow family has the wrong length";
    for (Vertex v = 0; v < m.vertices(); ++v) {
      const Matrix& a = m.at(s, v);
      if (a.rows() != m.dims[v ^ bit(s)] || a.cols() != m.dims[v])
        return "arrow shape mismatch at factor " + std::to_string(s + 1) + ", vertex " + vertex_key(v, m.d);
    }
  }
  for (int s = 0; s < m.d; ++s)
    for (Vertex v = 0; v < m.vertices(); ++v)
      if (!has(v, s) && !(m.at(s, v | bit(s)) * m.at(s, v)).is_zero())
        return "B∘A ≠ 0 at factor " + std::to_string(s + 1) + ", vertex " + vertex_key(v, m.d);
  for (int s = 0; s < m.d; ++s)
    for (int t = s + 1; t < m.d; ++t)
      for (Vertex v = 0; v < m.vertices(); ++v)
        if (m.at(t, v ^ bit(s)) * m.at(s, v) != m.at(s, v ^ bit(t)) * m.at(t, v))
          return "factors " + std::to_string(s + 1) + " and " + std::to_string(t + 1) +
                 " do not commute at vertex " + vertex_key(v, m.d);
  return std::nullopt;
}

bool is_strict(const BlockModule& m) {
  for (int s = 0; s < m.d; ++s)
    for (Vertex v = 0; v < m.vertices(); ++v)
      if (has(v, s) && !m.z(s, v).is_zero()) return false;
  return true;
}

bool is_homomorphism(const BlockModule& src, const BlockModule& dst, const ModuleMap& f) {
  if (src.d != dst.d || f.comp.size() != src.vertices()) return false;
  for (Vertex v = 0; v < src.vertices(); ++v)
    if (f.comp[v].rows() != dst.dims[v] || f.comp[v].cols() != src.dims[v]) return false;
  for (int s = 0; s < src.d; ++s)
    for (Vertex v = 0; v < src.vertices(); ++v)
      if (f.comp[v ^ bit(s)] * src.at(s, v) != dst.at(s, v) * f.comp[v]) return false;
  return true;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap h;
  for (std::size_t v = 0; v < f.comp.size(); ++v) h.comp.push_back(g.comp[v] * f.comp[v]);
  return h;
}

ModuleMap identity_map(const BlockModule& m) {
  ModuleMap f;
  for (auto x : m.dims) f.comp.push_back(Matrix::identity(x));
  return f;
}

ModuleMap zero_map(const BlockModule& src, const BlockModule& dst) {
  ModuleMap f;
  for (Vertex v = 0; v < src.vertices(); ++v) f.comp.emplace_back(dst.dims[v], src.dims[v]);
  return f;
}

BlockModule simple_module(int d, Vertex v) {
  std::vector<std::size_t> dims(std::size_t{1} << d, 0);
  if (v >= dims.size()) throw std::invalid_argument("vertex out of range");
  dims[v] = 1;
  return BlockModule::with_dims(d, dims);
}

BlockModule simple_L() { return simple_module(1, 0); }
BlockModule simple_Ls() { return simple_module(1, 1); }

BlockModule verma() {
  auto m = BlockModule::with_dims(1, {1, 1});
  m.at(0, 0) = Matrix::from_ints(1, 1, {1});
  return m;
}

BlockModule dual_verma() {
  auto m = BlockModule::with_dims(1, {1, 1});
  m.at(0, 1) = Matrix::from_ints(1, 1, {1});
  return m;
}

// Basis: v0 {b}, v1 {e1, ab}.
BlockModule big_projective() {
  auto m = BlockModule::with_dims(1, {1, 2});
  m.at(0, 0) = Matrix::from_ints(2, 1, {0, 1});
  m.at(0, 1) = Matrix::from_ints(1, 2, {1, 0});
  return m;
}

BlockModule tensor(const BlockModule& x, const BlockModule& y) {
  int d = x.d + y.d;
  std::vector<std::size_t> dims(std::size_t{1} << d);
  auto split = [&](Vertex v) { return std::pair<Vertex, Vertex>{v & ((Vertex{1} << x.d) - 1), v >> x.d}; };
  for (Vertex v = 0; v < dims.size(); ++v) {
    auto [vx, vy] = split(v);
    dims[v] = x.dims[vx] * y.dims[vy];
  }
  auto m = BlockModule::with_dims(d, dims);
  for (Vertex v = 0; v < dims.size(); ++v) {
    auto [vx, vy] = split(v);
    for (int s = 0; s < x.d; ++s) m.at(s, v) = Matrix::kron(x.at(s, vx), Matrix::identity(y.dims[vy]));
    for (int s = 0; s < y.d; ++s) m.at(x.d + s, v) = Matrix::kron(Matrix::identity(x.dims[vx]), y.at(s, vy));
  }
  if (x.central_charge && y.central_charge) {
    auto cc = *x.central_charge;
    cc.insert(cc.end(), y.central_charge->begin(), y.central_charge->end());
    m.central_charge = cc;
  }
  return m;
}

BlockModule direct_sum(const BlockModule& x, const BlockModule& y) {
  if (x.d != y.d) throw std::invalid_argument("direct sum of modules with different factor counts");
  std::vector<std::size_t> dims(x.vertices());
  for (Vertex v = 0; v < dims.size(); ++v) dims[v] = x.dims[v] + y.dims[v];
  auto m = BlockModule::with_dims(x.d, dims);
  for (int s = 0; s < x.d; ++s)
    for (Vertex v = 0; v < dims.size(); ++v) m.at(s, v) = Matrix::block_diag(x.at(s, v), y.at(s, v));
  if (x.central_charge == y.central_charge) m.central_charge = x.central_charge;
  return m;
}

BlockModule tensor_power(const BlockModule& x, int k) {
  if (k < 0) throw std::invalid_argument("negative tensor power");
  BlockModule out = BlockModule::with_dims(0, {1});
  for (int i = 0; i < k; ++i) out = tensor(out, x);
  return out;
}

// d=2 slices: 00 {f}, 10 {b, d}, 01 {c, e}, 11 {a, a1, a2}. f is the head
// over the middle slices and a the socle below them; a1 and a2 reach the
// middle slices through B. Each switch gates the lines carrying its label;
// the weights 2 on A_τ d and A_σ c keep the squares commuting without
// making the module split for all switches on.
BlockModule diamond(int d, const std::vector<long>& p) {
  for (long a : p)
    if (a != 0 && a != 1) throw std::invalid_argument("diamond switches must be 0 or 1");
  if (d == 1) {
    if (p.size() != 2) throw std::invalid_argument("diamond(1) takes 2 switches");
    auto m = BlockModule::with_dims(1, {1, 2});
    m.at(0, 0) = Matrix::from_ints(2, 1, {p[1], p[0]});
    return m;
  }
  if (d != 2) throw std::invalid_argument("diamond is defined for d = 1 or 2");
  if (p.size() != 4) throw std::invalid_argument("diamond(2) takes 4 switches");
  long a1s = p[0], a2s = p[1], a1t = p[2], a2t = p[3];
  auto m = BlockModule::with_dims(2, {1, 2, 2, 3});
  m.at(0, 0) = Matrix::from_ints(2, 1, {a2s, a1s});
  m.at(1, 0) = Matrix::from_ints(2, 1, {a2t, a1t});
  m.at(1, 1) = Matrix::from_ints(3, 2, {a1t, 2 * a2t, 0, 0, 0, 0});
  m.at(0, 2) = Matrix::from_ints(3, 2, {2 * a1s, a2s, 0, 0, 0, 0});
  m.at(1, 3) = Matrix::from_ints(2, 3, {0, a2t, 0, 0, 0, a1t});
  m.at(0, 3) = Matrix::from_ints(2, 3, {0, a2s, 0, 0, 0, a1s});
  return m;
}

BlockModule dual(const BlockModule& m) {
  auto out = BlockModule::with_dims(m.d, m.dims);
  for (int s = 0; s < m.d; ++s)
    for (Vertex v = 0; v < m.vertices(); ++v) out.at(s, v) = m.at(s, v ^ bit(s)).transpose();
  out.central_charge = m.central_charge;
  return out;
}

Subspaces zero_subspaces(const BlockModule& m) {
  Subspaces s;
  for (auto x : m.dims) s.emplace_back(x, 0);
  return s;
}

Subspaces full_subspaces(const BlockModule& m) {
  Subspaces s;
  for (auto x : m.dims) s.push_back(Matrix::identity(x));
  return s;
}

Subspaces normalize(const Subspaces& s) {
  Subspaces out;
  for (const auto& x : s) out.push_back(image(x));
  return out;
}

Subspaces generated_submodule(const BlockModule& m, const Subspaces& gens) {
  Subspaces cur = normalize(gens);
  for (bool grew = true; grew;) {
    grew = false;
    for (int s = 0; s < m.d; ++s)
      for (Vertex v = 0; v < m.vertices(); ++v) {
        Vertex w = v ^ bit(s);
        Matrix img = m.at(s, v) * cur[v];
        if (!subspace_contains(cur[w], img)) {
          cur[w] = subspace_sum(cur[w], img);
          grew = true;
        }
      }
  }
  return cur;
}

bool is_submodule(const BlockModule& m, const Subspaces& sub) {
  for (int s = 0; s < m.d; ++s)
    for (Vertex v = 0; v < m.vertices(); ++v)
      if (!subspace_contains(sub[v ^ bit(s)], m.at(s, v) * sub[v])) return false;
  return true;
}

Subspaces sum(const Subspaces& a, const Subspaces& b) {
  Subspaces out;
  for (std::size_t v = 0; v < a.size(); ++v) out.push_back(subspace_sum(a[v], b[v]));
  return out;
}

Subspaces intersection(const Subspaces& a, const Subspaces& b) {
  Subspaces out;
  for (std::size_t v = 0; v < a.size(); ++v) out.push_back(subspace_intersection(a[v], b[v]));
  return out;
}

bool contains(const Subspaces& big, const Subspaces& small) {
  for (std::size_t v = 0; v < big.size(); ++v)
    if (!subspace_contains(big[v], small[v])) return false;
  return true;
}

bool equal(const Subspaces& a, const Subspaces& b) {
  for (std::size_t v = 0; v < a.size(); ++v)
    if (!subspace_equal(a[v], b[v])) return false;
  return true;
}

std::vector<std::size_t> dimensions(const Subspaces& s) {
  std::vector<std::size_t> out;
  for (const auto& x : s) out.push_back(rank(x));
  return out;
}

Subspaces kernel(const ModuleMap& f, const BlockModule&) {
  Subspaces out;
  for (const auto& c : f.comp) out.push_back(kernel(c));
  return out;
}

Subspaces image(const ModuleMap& f, const BlockModule&) {
  Subspaces out;
  for (const auto& c : f.comp) out.push_back(image(c));
  return out;
}

Subspaces apply_map(const ModuleMap& f, const Subspaces& s) {
  Subspaces out;
  for (std::size_t v = 0; v < s.size(); ++v) out.push_back(image(f.comp[v] * s[v]));
  return out;
}

Restricted restrict_to(const BlockModule& m, const Subspaces& sub) {
  Subspaces basis = normalize(sub);
  auto out = BlockModule::with_dims(m.d, dimensions(basis));
  for (int s = 0; s < m.d; ++s)
    for (Vertex v = 0; v < m.vertices(); ++v) {
      auto x = solve(basis[v ^ bit(s)], m.at(s, v) * basis[v]);
      if (!x) throw std::logic_error("subspace is not a submodule");
      out.at(s, v) = *x;
    }
  out.central_charge = m.central_charge;
  return {out, ModuleMap{basis}};
}

Quotient quotient(const BlockModule& m, const Subspaces& sub) {
  std::vector<Matrix> q, r;
  std::vector<std::size_t> dims;
  for (Vertex v = 0; v < m.vertices(); ++v) {
    Matrix qv = quotient_map(image(sub[v]), m.dims[v]);
    auto rv = solve(qv, Matrix::identity(qv.rows()));
    q.push_back(qv);
    r.push_back(*rv);
    dims.push_back(qv.rows());
  }
  auto out = BlockModule::with_dims(m.d, dims);
  for (int s = 0; s < m.d; ++s)
    for (Vertex v = 0; v < m.vertices(); ++v) out.at(s, v) = q[v ^ bit(s)] * m.at(s, v) * r[v];
  out.central_charge = m.central_charge;
  return {out, ModuleMap{q}, ModuleMap{r}};
}

Subquotient subquotient(const BlockModule& m, const Subspaces& big, const Subspaces& small) {
  auto res = restrict_to(m, big);
  Subspaces coords;
  for (Vertex v = 0; v < m.vertices(); ++v) {
    auto y = solve(res.inclusion.comp[v], small[v]);
    if (!y) throw std::logic_error("subquotient: small is not inside big");
    coords.push_back(*y);
  }
  auto quo = quotient(res.module, coords);
  Subquotient out;
  out.module = quo.module;
  out.big = res.inclusion.comp;
  out.small = normalize(small);
  for (Vertex v = 0; v < m.vertices(); ++v) {
    out.lift.push_back(res.inclusion.comp[v] * quo.section.comp[v]);
    out.project.push_back(quo.projection.comp[v] * left_inverse(res.inclusion.comp[v]));
  }
  return out;
}

ModuleMap induced_map(const Subquotient& src, const Subquotient& dst, const ModuleMap* f) {
  ModuleMap out;
  for (std::size_t v = 0; v < src.lift.size(); ++v) {
    Matrix x = f ? f->comp[v] * src.lift[v] : src.lift[v];
    out.comp.push_back(dst.project[v] * x);
  }
  return out;
}

// Basis of (Θ_X M)_v: index c * dim M_{v|X} + m, where c encodes a label in
// {e1 = 0, ab = 1} for each σ ∈ X with v_σ = 1 (see compress); factors
// σ ∈ X with v_σ = 0 carry the label b.
BlockModule theta(Vertex X, const BlockModule& m) {
  std::vector<std::size_t> dims(m.vertices());
  for (Vertex v = 0; v < dims.size(); ++v) dims[v] = (std::size_t{1} << popcount(X & v)) * m.dims[v | X];
  auto out = BlockModule::with_dims(m.d, dims);
  for (int s = 0; s < m.d; ++s)
    for (Vertex v = 0; v < dims.size(); ++v) {
      Vertex w = v ^ bit(s);
      Vertex u = v | X;
      std::size_t dm = m.dims[u];
      std::size_t choices = std::size_t{1} << popcount(X & v);
      Matrix& a = out.at(s, v);
      if (has(X, s) && !has(v, s)) {
        for (std::size_t c = 0; c < choices; ++c) {
          std::size_t c2 = compress(expand(c, X & v) | bit(s), X & w);
          for (std::size_t i = 0; i < dm; ++i) a(c2 * dm + i, c * dm + i) = 1;
        }
      } else if (has(X, s)) {
        for (std::size_t c = 0; c < choices; ++c) {
          Vertex ch = expand(c, X & v);
          if (has(ch, s)) continue;
          std::size_t c2 = compress(ch, X & w);
          for (std::size_t i = 0; i < dm; ++i) a(c2 * dm + i, c * dm + i) = 1;
        }
      } else {
        const Matrix& ma = m.at(s, u);
        for (std::size_t c = 0; c < choices; ++c) a.set_block(c * ma.rows(), c * dm, ma);
      }
    }
  out.central_charge = m.central_charge;
  return out;
}

ModuleMap iota(int s, Vertex X, const BlockModule& m) {
  if (has(X, s)) throw std::invalid_argument("iota: factor already in X");
  Vertex Y = X | bit(s);
  ModuleMap f;
  for (Vertex v = 0; v < m.vertices(); ++v) {
    Vertex u = v | X;
    std::size_t dm = m.dims[u];
    std::size_t choices = std::size_t{1} << popcount(X & v);
    std::size_t out_dim = (std::size_t{1} << popcount(Y & v)) * m.dims[v | Y];
    Matrix c(out_dim, choices * dm);
    if (!has(v, s)) {
      const Matrix& a = m.at(s, u);
      for (std::size_t k = 0; k < choices; ++k) c.set_block(k * a.rows(), k * dm, a);
    } else {
      Matrix ab = m.at(s, u ^ bit(s)) * m.at(s, u);
      for (std::size_t k = 0; k < choices; ++k) {
        Vertex ch = expand(k, X & v);
        std::size_t e1 = compress(ch, Y & v);
        std::size_t top = compress(ch | bit(s), Y & v);
        c.set_block(e1 * dm, k * dm, ab);
        for (std::size_t i = 0; i < dm; ++i) c(top * dm + i, k * dm + i) += 1;
      }
    }
    f.comp.push_back(c);
  }
  return f;
}

ModuleMap kappa(int s, Vertex X, const BlockModule& m) {
  if (has(X, s)) throw std::invalid_argument("kappa: factor already in X");
  Vertex Y = X | bit(s);
  ModuleMap f;
  for (Vertex v = 0; v < m.vertices(); ++v) {
    Vertex u = v | Y;
    std::size_t src_choices = std::size_t{1} << popcount(Y & v);
    std::size_t src_dim = src_choices * m.dims[u];
    std::size_t dst_dim = (std::size_t{1} << popcount(X & v)) * m.dims[v | X];
    Matrix c(dst_dim, src_dim);
    if (!has(v, s)) {
      const Matrix& b = m.at(s, u);
      for (std::size_t k = 0; k < src_choices; ++k) c.set_block(k * b.rows(), k * m.dims[u], b);
    } else {
      std::size_t dm = m.dims[u];
      Matrix ab = m.at(s, u ^ bit(s)) * m.at(s, u);
      for (std::size_t k = 0; k < src_choices; ++k) {
        Vertex ch = expand(k, Y & v);
        std::size_t k2 = compress(ch, X & v);
        if (has(ch, s))
          c.set_block(k2 * dm, k * dm, ab);
        else
          for (std::size_t i = 0; i < dm; ++i) c(k2 * dm + i, k * dm + i) = 1;
      }
    }
    f.comp.push_back(c);
  }
  return f;
}

ModuleMap iota_total(Vertex X, const BlockModule& m) {
  ModuleMap f = identity_map(m);
  Vertex done = 0;
  for (int s = 0; s < m.d; ++s)
    if (has(X, s)) {
      f = compose(iota(s, done, m), f);
      done |= bit(s);
    }
  return f;
}

ModuleMap kappa_total(Vertex X, const BlockModule& m) {
  ModuleMap f = identity_map(theta(X, m));
  Vertex left = X;
  for (int s = m.d - 1; s >= 0; --s)
    if (has(X, s)) {
      left ^= bit(s);
      f = compose(kappa(s, left, m), f);
    }
  return f;
}

ModuleMap theta_map(Vertex X, const ModuleMap& f) {
  ModuleMap out;
  for (Vertex v = 0; v < f.comp.size(); ++v)
    out.comp.push_back(Matrix::kron(Matrix::identity(std::size_t{1} << popcount(X & v)), f.comp[v | X]));
  return out;
}

bool exact_at_middle(const ModuleMap& f, const ModuleMap& g, const BlockModule& mid) {
  for (Vertex v = 0; v < mid.vertices(); ++v) {
    if (!(g.comp[v] * f.comp[v]).is_zero()) return false;
    if (rank(f.comp[v]) + rank(g.comp[v]) != mid.dims[v]) return false;
  }
  return true;
}

Subspaces vartheta_plus_subspace(Vertex I, const BlockModule& m) {
  BlockModule t = theta(I, m);
  Subspaces out;
  for (Vertex v = 0; v < t.vertices(); ++v) {
    std::vector<Matrix> zs;
    for (int s = 0; s < m.d; ++s)
      if (has(I, s) && has(v, s)) zs.push_back(t.z(s, v));
    out.push_back(kernel(stack(zs, t.dims[v])));
  }
  return out;
}

Subspaces vartheta_minus_subspace(Vertex I, const BlockModule& m) {
  Subspaces gens;
  for (Vertex v = 0; v < m.vertices(); ++v)
    gens.push_back((v & I) == I ? Matrix::identity(m.dims[v]) : Matrix(m.dims[v], 0));
  return generated_submodule(m, gens);
}

BlockModule vartheta_plus(Vertex I, const BlockModule& m) {
  return restrict_to(theta(I, m), vartheta_plus_subspace(I, m)).module;
}

BlockModule vartheta_minus(Vertex I, const BlockModule& m) {
  return restrict_to(m, vartheta_minus_subspace(I, m)).module;
}

Subspaces nabla_plus_relations(Vertex I, const BlockModule& m) {
  BlockModule t = theta(I, m);
  Subspaces rel = zero_subspaces(t);
  for (int s = 0; s < m.d; ++s)
    if (has(I, s)) {
      Vertex rest = I ^ bit(s);
      rel = sum(rel, apply_map(iota(s, rest, m), vartheta_plus_subspace(rest, m)));
    }
  return intersection(rel, vartheta_plus_subspace(I, m));
}

BlockModule nabla_plus(Vertex I, const BlockModule& m) {
  return subquotient(theta(I, m), vartheta_plus_subspace(I, m), nabla_plus_relations(I, m)).module;
}

BlockModule nabla_minus(Vertex I, const BlockModule& m) {
  Subspaces rel = zero_subspaces(m);
  for (int s = 0; s < m.d; ++s)
    if (has(I, s)) rel = sum(rel, vartheta_minus_subspace(bit(s), m));
  return quotient(m, rel).module;
}

Subspaces finite_part(Vertex I, const BlockModule& m) {
  Subspaces out;
  for (Vertex v = 0; v < m.vertices(); ++v) {
    if (v & I) {
      out.emplace_back(m.dims[v], 0);
      continue;
    }
    std::vector<Matrix> as;
    for (int s = 0; s < m.d; ++s)
      if (has(I, s)) as.push_back(m.at(s, v));
    out.push_back(kernel(stack(as, m.dims[v])));
  }
  return out;
}

BlockModule finite_quotient(Vertex I, const BlockModule& m) { return nabla_minus(I, m); }

SharpFlat sharp_flat(const BlockModule& m) {
  if (m.d != 1) throw std::invalid_argument("sharp/flat are defined for d = 1");
  SharpFlat out;
  Subspaces sharp = vartheta_plus_subspace(1, m);
  BlockModule t = theta(1, m);
  out.sharp = restrict_to(t, sharp).module;
  out.flat = vartheta_minus(1, m);
  auto fp = dimensions(finite_part(1, m));
  out.hypothesis_holds = fp[0] == 0 && fp[1] == 0;
  if (!out.hypothesis_holds) {
    out.note = "hypothesis violated: nonzero finite part";
    return out;
  }
  ModuleMap k = kappa(0, 0, m);
  out.exact = equal(kernel(k, t), sharp) && equal(image(k, m), vartheta_minus_subspace(1, m));
  out.note = out.exact ? "0 → M^♯ → ΘM → M^♭ → 0 exact" : "sequence fails to be exact";
  return out;
}

BlockModule mhash_sharp(const BlockModule& m) { return sharp_flat(m).sharp; }
BlockModule mhash_flat(const BlockModule& m) { return sharp_flat(m).flat; }

Multiplicities composition_multiplicities(const BlockModule& m) {
  Multiplicities out;
  for (Vertex v = 0; v < m.vertices(); ++v)
    if (m.dims[v]) out[v] = m.dims[v];
  return out;
}

std::size_t composition_length(const BlockModule& m) { return m.total_dim(); }

namespace {

Subspaces radical_of(const BlockModule& m, const Subspaces& sub) {
  Subspaces out = zero_subspaces(m);
  for (int s = 0; s < m.d; ++s)
    for (Vertex v = 0; v < m.vertices(); ++v) {
      Vertex w = v ^ bit(s);
      out[w] = subspace_sum(out[w], m.at(s, v) * sub[v]);
    }
  return out;
}

std::vector<std::size_t> diff(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  return out;
}

// Characteristic polynomial coefficients c[0..n] (c[n] = 1) by Faddeev–LeVerrier.
std::vector<Rational> charpoly(const Matrix& a) {
  std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  Matrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = next;
    Matrix am = a * mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> out;
  if (n == 0 || n > mpz_class("1000000000000")) return out;
  for (mpz_class k = 1; k * k <= n; ++k)
    if (n % k == 0) {
      out.push_back(k);
      if (k * k != n) out.push_back(n / k);
    }
  return out;
}

std::vector<Rational> rational_roots(std::vector<Rational> c) {
  std::vector<Rational> roots;
  while (c.size() > 1 && sgn(c[0]) == 0) {
    roots.push_back(0);
    c.erase(c.begin());
  }
  if (c.size() <= 1) return roots;
  mpz_class l = 1;
  for (const auto& x : c) l = lcm(l, mpz_class(x.get_den()));
  std::vector<mpz_class> z;
  for (const auto& x : c) z.push_back(mpz_class(x * l));
  auto eval = [&](const Rational& x) {
    Rational acc = 0;
    for (std::size_t i = z.size(); i-- > 0;) acc = acc * x + Rational(z[i]);
    return acc;
  };
  for (const auto& p : divisors(z.front()))
    for (const auto& q : divisors(z.back()))
      for (int sign : {1, -1}) {
        Rational r(sign * p, q);
        r.canonicalize();
        if (sgn(eval(r)) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  return roots;
}

ModuleMap shift(const ModuleMap& f, const Rational& lambda) {
  ModuleMap out = f;
  for (auto& c : out.comp)
    for (std::size_t i = 0; i < c.rows(); ++i) c(i, i) -= lambda;
  return out;
}

bool is_nilpotent(const ModuleMap& f) {
  for (const auto& c : f.comp)
    if (!nilpotent(c)) return false;
  return true;
}

ModuleMap combine(const std::vector<ModuleMap>& basis, const std::vector<long>& coeffs) {
  ModuleMap out = basis[0];
  for (auto& c : out.comp) c = c.scaled(coeffs[0]);
  for (std::size_t i = 1; i < basis.size(); ++i)
    for (std::size_t v = 0; v < out.comp.size(); ++v)
      if (coeffs[i]) out.comp[v] = out.comp[v] + basis[i].comp[v].scaled(coeffs[i]);
  return out;
}

// Fitting decomposition of m along ψ; returns {ker ψ^N, im ψ^N} when both are nonzero.
std::optional<std::pair<Subspaces, Subspaces>> fitting(const BlockModule& m, const ModuleMap& psi) {
  std::size_t n = m.total_dim();
  Subspaces k, r;
  std::size_t kd = 0, rd = 0;
  for (Vertex v = 0; v < m.vertices(); ++v) {
    Matrix p = power(psi.comp[v], n);
    k.push_back(kernel(p));
    r.push_back(image(p));
    kd += k.back().cols();
    rd += r.back().cols();
  }
  if (kd == 0 || rd == 0) return std::nullopt;
  return std::make_pair(k, r);
}

std::optional<std::pair<Subspaces, Subspaces>> try_split(const BlockModule& m, const ModuleMap& phi) {
  Matrix full(0, 0);
  for (const auto& c : phi.comp) full = Matrix::block_diag(full, c);
  for (const auto& lambda : rational_roots(charpoly(full))) {
    ModuleMap psi = shift(phi, lambda);
    if (is_nilpotent(psi)) return std::nullopt;
    if (auto s = fitting(m, psi)) return s;
  }
  return std::nullopt;
}

std::vector<Rational> flatten(const ModuleMap& f) {
  std::vector<Rational> out;
  for (const auto& c : f.comp)
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) out.push_back(c(i, j));
  return out;
}

Matrix as_columns(const std::vector<ModuleMap>& fs, std::size_t len) {
  Matrix out(len, fs.size());
  for (std::size_t j = 0; j < fs.size(); ++j) {
    auto x = flatten(fs[j]);
    for (std::size_t i = 0; i < len; ++i) out(i, j) = x[i];
  }
  return out;
}

// End(m) is local iff every basis element is scalar plus nilpotent and the
// nilpotent parts generate a nilpotent algebra.
bool end_is_local(const BlockModule& m, const std::vector<ModuleMap>& basis) {
  std::size_t n = m.total_dim();
  std::vector<ModuleMap> nil;
  for (const auto& f : basis) {
    Rational tr = 0;
    for (const auto& c : f.comp)
      for (std::size_t i = 0; i < c.rows(); ++i) tr += c(i, i);
    ModuleMap g = shift(f, tr / static_cast<long>(n));
    if (!is_nilpotent(g)) return false;
    if (!g.is_zero()) nil.push_back(g);
  }
  std::size_t len = 0;
  for (auto x : m.dims) len += x * x;
  std::vector<ModuleMap> layer = nil;
  for (std::size_t step = 0; step <= n && !layer.empty(); ++step) {
    std::vector<ModuleMap> next;
    for (const auto& x : layer)
      for (const auto& y : nil) {
        ModuleMap p = compose(x, y);
        if (!p.is_zero()) next.push_back(p);
      }
    if (next.empty()) return true;
    Matrix span = image(as_columns(next, len));
    layer.clear();
    for (std::size_t j = 0; j < span.cols(); ++j) {
      ModuleMap f;
      std::size_t off = 0;
      for (auto x : m.dims) {
        Matrix c(x, x);
        for (std::size_t i = 0; i < x; ++i)
          for (std::size_t k = 0; k < x; ++k) c(i, k) = span(off + i * x + k, j);
        off += x * x;
        f.comp.push_back(c);
      }
      layer.push_back(f);
    }
  }
  return layer.empty();
}

void decompose(const BlockModule& m, std::mt19937_64& rng, StructureReport& rep) {
  if (m.is_zero()) return;
  auto basis = hom_basis(m, m);
  std::vector<ModuleMap> cands = basis;
  for (std::size_t i = 0; i < basis.size() && i < 6; ++i)
    for (std::size_t j = 0; j < basis.size() && j < 6; ++j) cands.push_back(compose(basis[i], basis[j]));
  for (int t = 0; t < 12 && basis.size() > 1; ++t) {
    std::vector<long> co;
    for (std::size_t i = 0; i < basis.size(); ++i) co.push_back(static_cast<long>(draw(rng, 7)) - 3);
    cands.push_back(combine(basis, co));
  }
  if (basis.size() > 1)
    for (const auto& phi : cands)
      if (auto split = try_split(m, phi)) {
        decompose(restrict_to(m, split->first).module, rng, rep);
        decompose(restrict_to(m, split->second).module, rng, rep);
        return;
      }
  rep.summands.push_back(m.dims);
  if (basis.size() > 1 && !end_is_local(m, basis)) {
    rep.fully_split = false;
    rep.note = "not split over the rationals";
  }
}

}  // namespace

StructureReport structure(const BlockModule& m, std::uint64_t seed) {
  StructureReport rep;
  rep.multiplicities = composition_multiplicities(m);
  Subspaces cur = full_subspaces(m);
  for (std::size_t guard = 0; guard <= m.total_dim(); ++guard) {
    auto dc = dimensions(cur);
    if (std::all_of(dc.begin(), dc.end(), [](std::size_t x) { return x == 0; })) break;
    Subspaces next = radical_of(m, cur);
    rep.radical_layers.push_back(diff(dc, dimensions(next)));
    cur = next;
  }
  Subspaces soc = zero_subspaces(m);
  for (std::size_t guard = 0; guard <= m.total_dim(); ++guard) {
    auto ds = dimensions(soc);
    if (ds == m.dims) break;
    Subspaces next;
    for (Vertex v = 0; v < m.vertices(); ++v) {
      std::vector<Matrix> conds;
      for (int s = 0; s < m.d; ++s) {
        Vertex w = v ^ bit(s);
        conds.push_back(quotient_map(soc[w], m.dims[w]) * m.at(s, v));
      }
      next.push_back(kernel(stack(conds, m.dims[v])));
    }
    rep.socle_layers.push_back(diff(dimensions(next), ds));
    soc = next;
  }
  std::mt19937_64 rng(seed);
  decompose(m, rng, rep);
  return rep;
}

bool is_indecomposable(const BlockModule& m, std::uint64_t seed) {
  if (m.is_zero()) return false;
  auto rep = structure(m, seed);
  return rep.summands.size() == 1 && rep.fully_split;
}

std::vector<ModuleMap> hom_basis(const BlockModule& src, const BlockModule& dst) {
  if (src.d != dst.d) throw std::invalid_argument("hom between modules with different factor counts");
  std::size_t nv = src.vertices();
  std::vector<std::size_t> off(nv + 1, 0);
  for (Vertex v = 0; v < nv; ++v) off[v + 1] = off[v] + dst.dims[v] * src.dims[v];
  std::size_t vars = off[nv];
  std::vector<std::vector<std::pair<std::size_t, Rational>>> eqs;
  for (int s = 0; s < src.d; ++s)
    for (Vertex v = 0; v < nv; ++v) {
      Vertex w = v ^ bit(s);
      const Matrix& sa = src.at(s, v);
      const Matrix& da = dst.at(s, v);
      for (std::size_t p = 0; p < dst.dims[w]; ++p)
        for (std::size_t q = 0; q < src.dims[v]; ++q) {
          std::vector<std::pair<std::size_t, Rational>> row;
          for (std::size_t k = 0; k < src.dims[w]; ++k)
            if (sgn(sa(k, q))) row.emplace_back(off[w] + p * src.dims[w] + k, sa(k, q));
          for (std::size_t k = 0; k < dst.dims[v]; ++k)
            if (sgn(da(p, k))) row.emplace_back(off[v] + k * src.dims[v] + q, -da(p, k));
          if (!row.empty()) eqs.push_back(std::move(row));
        }
    }
  Matrix sys(eqs.size(), vars);
  for (std::size_t r = 0; r < eqs.size(); ++r)
    for (const auto& [c, x] : eqs[r]) sys(r, c) += x;
  Matrix k = kernel(sys);
  std::vector<ModuleMap> out;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    ModuleMap f;
    for (Vertex v = 0; v < nv; ++v) {
      Matrix c(dst.dims[v], src.dims[v]);
      for (std::size_t a = 0; a < dst.dims[v]; ++a)
        for (std::size_t b = 0; b < src.dims[v]; ++b) c(a, b) = k(off[v] + a * src.dims[v] + b, j);
      f.comp.push_back(c);
    }
    out.push_back(std::move(f));
  }
  return out;
}

bool is_isomorphic(const BlockModule& x, const BlockModule& y, std::uint64_t seed) {
  if (x.d != y.d || x.dims != y.dims) return false;
  for (int s = 0; s < x.d; ++s)
    for (Vertex v = 0; v < x.vertices(); ++v) {
      if (rank(x.at(s, v)) != rank(y.at(s, v))) return false;
      if (rank(x.z(s, v)) != rank(y.z(s, v))) return false;
    }
  if (x.is_zero()) return true;
  auto basis = hom_basis(x, y);
  if (basis.empty()) return false;
  auto invertible = [&](const ModuleMap& f) {
    for (const auto& c : f.comp)
      if (!is_invertible(c)) return false;
    return true;
  };
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 20; ++t) {
    std::vector<long> co;
    for (std::size_t i = 0; i < basis.size(); ++i) co.push_back(coefficient(rng));
    if (invertible(combine(basis, co))) return true;
  }
  if (basis.size() <= 4) {
    std::vector<long> co(basis.size(), -2);
    for (;;) {
      if (invertible(combine(basis, co))) return true;
      std::size_t i = 0;
      while (i < co.size() && co[i] == 2) co[i++] = -2;
      if (i == co.size()) break;
      ++co[i];
    }
  }
  return false;
}

std::string vertex_key(Vertex v, int d) {
  std::string s;
  for (int k = 0; k < d; ++k) s += has(v, k) ? '1' : '0';
  return s;
}

Vertex parse_vertex_key(const std::string& key) {
  Vertex v = 0;
  for (std::size_t k = 0; k < key.size(); ++k) {
    if (key[k] == '1')
      v |= bit(static_cast<int>(k));
    else if (key[k] != '0')
      throw std::invalid_argument("malformed vertex key: " + key);
  }
  return v;
}

std::string subset_label(Vertex S, int d) {
  std::string out;
  for (int k = 0; k < d; ++k)
    if (has(S, k)) {
      if (!out.empty()) out += ',';
      out += std::to_string(k + 1);
    }
  return out;
}

std::string multiplicities_string(const Multiplicities& m, int d) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, n] : m) {
    if (!first) os << ' ';
    first = false;
    if (d == 1)
      os << (v ? "L(sλ)" : "L(λ)");
    else
      os << vertex_key(v, d);
    if (n != 1) os << "^" << n;
  }
  if (first) os << "0";
  return os.str();
}

std::string module_to_json(const BlockModule& m) {
  json j;
  j["d"] = m.d;
  json dims = json::object();
  for (Vertex v = 0; v < m.vertices(); ++v) dims[vertex_key(v, m.d)] = m.dims[v];
  j["dims"] = dims;
  std::vector<std::size_t> off(m.vertices() + 1, 0);
  for (Vertex v = 0; v < m.vertices(); ++v) off[v + 1] = off[v] + m.dims[v];
  std::size_t n = off.back();
  json a = json::object(), b = json::object();
  for (int s = 0; s < m.d; ++s) {
    Matrix fa(n, n), fb(n, n);
    for (Vertex v = 0; v < m.vertices(); ++v) {
      Vertex w = v ^ bit(s);
      (has(v, s) ? fb : fa).set_block(off[w], off[v], m.at(s, v));
    }
    auto dump = [&](const Matrix& x) {
      json rows = json::array();
      for (std::size_t r = 0; r < n; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < n; ++c) row.push_back(to_string(x(r, c)));
        rows.push_back(row);
      }
      return rows;
    };
    a[std::to_string(s + 1)] = dump(fa);
    b[std::to_string(s + 1)] = dump(fb);
  }
  j["arrows"] = {{"a", a}, {"b", b}};
  if (m.central_charge) {
    json cc = json::array();
    for (const auto& p : *m.central_charge) cc.push_back({p[0], p[1]});
    j["central_charge"] = cc;
  } else {
    j["central_charge"] = nullptr;
  }
  return j.dump();
}

BlockModule module_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("module JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw std::invalid_argument("module JSON must be an object");
    int d = j.at("d").get<int>();
    if (d < 0 || d > 10) throw std::invalid_argument("module JSON: d out of range");
    std::size_t nv = std::size_t{1} << d;
    std::vector<std::size_t> dims(nv, 0);
    for (const auto& [key, val] : j.at("dims").items()) {
      if (key.size() != static_cast<std::size_t>(d)) throw std::invalid_argument("module JSON: bad vertex key " + key);
      long x = val.get<long>();
      if (x < 0) throw std::invalid_argument("module JSON: negative dimension");
      dims[parse_vertex_key(key)] = static_cast<std::size_t>(x);
    }
    auto m = BlockModule::with_dims(d, dims);
    std::vector<std::size_t> off(nv + 1, 0);
    for (Vertex v = 0; v < nv; ++v) off[v + 1] = off[v] + dims[v];
    std::size_t n = off.back();
    auto vertex_of = [&](std::size_t i) {
      Vertex v = 0;
      while (off[v + 1] <= i) ++v;
      return v;
    };
    const json arrows = j.value("arrows", json::object());
    for (const char* kind : {"a", "b"}) {
      if (!arrows.contains(kind)) continue;
      for (const auto& [key, mat] : arrows.at(kind).items()) {
        int s = std::stoi(key) - 1;
        if (s < 0 || s >= d || std::to_string(s + 1) != key)
          throw std::invalid_argument("module JSON: bad factor key " + key);
        if (!mat.is_array() || mat.size() != n) throw std::invalid_argument("module JSON: arrow matrix has wrong shape");
        for (std::size_t r = 0; r < n; ++r) {
          if (!mat[r].is_array() || mat[r].size() != n)
            throw std::invalid_argument("module JSON: arrow matrix has wrong shape");
          for (std::size_t c = 0; c < n; ++c) {
            const json& e = mat[r][c];
            Rational q = e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<long>());
            if (sgn(q) == 0) continue;
            Vertex v = vertex_of(c), w = vertex_of(r);
            bool is_a = std::string(kind) == "a";
            if (w != (v ^ bit(s)) || has(v, s) == is_a)
              throw std::invalid_argument("module JSON: arrow entry outside its allowed block");
            m.at(s, v)(r - off[w], c - off[v]) = q;
          }
        }
      }
    }
    if (j.contains("central_charge") && !j.at("central_charge").is_null()) {
      std::vector<std::array<long, 2>> cc;
      for (const auto& p : j.at("central_charge")) cc.push_back({p.at(0).get<long>(), p.at(1).get<long>()});
      if (static_cast<int>(cc.size()) != d) throw std::invalid_argument("module JSON: central_charge needs d rows");
      m.central_charge = cc;
    }
    if (auto err = check_relations(m)) throw std::invalid_argument("module JSON: " + *err);
    return m;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("module JSON: ") + e.what());
  }
}

}  // namespace wallx

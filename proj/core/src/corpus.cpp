#include "wallx/corpus.hpp"

#include <algorithm>

namespace wallx {

namespace {

long small(std::mt19937_64& rng, long range) { return static_cast<long>(rng() % (2 * range + 1)) - range; }

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long range) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = small(rng, range);
  return m;
}

Matrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    Matrix g = random_matrix(rng, n, n, 2);
    if (is_invertible(g)) return g;
  }
}

std::size_t max_slice(const BlockModule& m) { return *std::max_element(m.dims.begin(), m.dims.end()); }

}  // namespace

BlockModule random_basis_change(const BlockModule& m, std::mt19937_64& rng) {
  std::vector<Matrix> g, gi;
  for (auto x : m.dims) {
    g.push_back(random_invertible(rng, x));
    gi.push_back(inverse(g.back()));
  }
  BlockModule out = m;
  for (int s = 0; s < m.d; ++s)
    for (Vertex v = 0; v < m.vertices(); ++v) out.at(s, v) = g[v ^ bit(s)] * m.at(s, v) * gi[v];
  return out;
}

BlockModule random_single_factor(std::mt19937_64& rng, std::size_t max_slice, bool strict) {
  std::size_t n0 = rng() % (max_slice + 1), n1 = rng() % (max_slice + 1);
  auto m = BlockModule::with_dims(1, {n0, n1});
  Matrix a = random_matrix(rng, n1, n0, 1);
  if (rng() % 3 == 0 && n0 > 0) a = a * random_matrix(rng, n0, n0, 1);  // lower the rank
  Matrix q = left_kernel(a);  // rows with q a = 0
  if (n1 == 0) q = Matrix(0, 0);
  Matrix b;
  if (strict) {
    Matrix k = kernel(a);  // a k = 0
    b = k * random_matrix(rng, k.cols(), q.rows(), 1) * q;
  } else {
    b = random_matrix(rng, n0, q.rows(), 1) * q;
  }
  m.at(0, 0) = a;
  m.at(0, 1) = b.rows() == n0 && b.cols() == n1 ? b : Matrix(n0, n1);
  return m;
}

Subspaces random_submodule(const BlockModule& m, std::mt19937_64& rng, std::size_t gens) {
  Subspaces g;
  for (auto x : m.dims) g.emplace_back(x, 0);
  for (std::size_t k = 0; k < gens; ++k) {
    Vertex v = static_cast<Vertex>(rng() % m.vertices());
    if (m.dims[v] == 0) continue;
    g[v] = Matrix::hcat(g[v], random_matrix(rng, m.dims[v], 1, 2));
  }
  return generated_submodule(m, g);
}

std::vector<std::pair<std::string, BlockModule>> shared_patterns() {
  return {{"L", simple_L()}, {"Ls", simple_Ls()}, {"M", verma()},
          {"Ms", simple_Ls()}, {"Mv", dual_verma()}, {"P", big_projective()}};
}

std::vector<BlockModule> single_factor_corpus(std::uint64_t seed, std::size_t size, std::size_t max_total,
                                              bool strict_only) {
  std::mt19937_64 rng(seed);
  std::vector<BlockModule> atoms;
  for (auto& [name, m] : shared_patterns()) atoms.push_back(m);
  atoms.push_back(diamond(1, {1, 1}));
  atoms.push_back(diamond(1, {1, 0}));
  std::vector<BlockModule> out;
  for (const auto& a : atoms)
    if (out.size() < size && (!strict_only || is_strict(a))) out.push_back(a);
  while (out.size() < size) {
    BlockModule m;
    switch (rng() % 4) {
      case 0:
        m = random_single_factor(rng, 6, true);
        break;
      case 1:
        m = random_single_factor(rng, 6, false);
        break;
      case 2: {
        m = atoms[rng() % atoms.size()];
        std::size_t parts = 1 + rng() % 3;
        for (std::size_t k = 0; k < parts; ++k) m = direct_sum(m, atoms[rng() % atoms.size()]);
        break;
      }
      default: {
        BlockModule big = direct_sum(atoms[rng() % atoms.size()], atoms[rng() % atoms.size()]);
        big = direct_sum(big, atoms[rng() % atoms.size()]);
        Subspaces sub = random_submodule(big, rng, 1 + rng() % 2);
        m = rng() % 2 ? restrict_to(big, sub).module : quotient(big, sub).module;
        break;
      }
    }
    if (m.total_dim() > max_total || (strict_only && !is_strict(m))) continue;
    out.push_back(random_basis_change(m, rng));
  }
  return out;
}

std::vector<BlockModule> two_factor_corpus(std::uint64_t seed, std::size_t size, std::size_t max_cell) {
  std::mt19937_64 rng(seed);
  std::vector<BlockModule> strict_atoms = {simple_L(), simple_Ls(), verma(), dual_verma(), diamond(1, {1, 1})};
  auto pick = [&]() { return strict_atoms[rng() % strict_atoms.size()]; };
  std::vector<BlockModule> out = {tensor(verma(), verma()), tensor(dual_verma(), verma()), diamond(2, {1, 0, 1, 0}),
                                  diamond(2, {0, 1, 0, 1})};
  if (out.size() > size) out.resize(size);
  while (out.size() < size) {
    BlockModule m;
    switch (rng() % 5) {
      case 0:
        m = tensor(pick(), pick());
        break;
      case 1:
        m = tensor(random_single_factor(rng, 2, true), random_single_factor(rng, 2, true));
        break;
      case 2:
        m = direct_sum(tensor(pick(), pick()), tensor(pick(), pick()));
        break;
      case 3: {
        BlockModule big = direct_sum(tensor(pick(), pick()), tensor(pick(), pick()));
        Subspaces sub = random_submodule(big, rng, 1 + rng() % 3);
        m = rng() % 2 ? restrict_to(big, sub).module : quotient(big, sub).module;
        break;
      }
      default: {
        std::vector<long> p;
        for (int k = 0; k < 4; ++k) p.push_back(static_cast<long>(rng() % 2));
        m = diamond(2, p);
        if (rng() % 2) m = direct_sum(m, tensor(pick(), pick()));
        break;
      }
    }
    if (m.is_zero() || max_slice(m) > max_cell || !is_strict(m)) continue;
    out.push_back(random_basis_change(m, rng));
  }
  return out;
}

}  // namespace wallx

#include "wallx/weightmodel.hpp"

#include <stdexcept>

#include "wallx/corpus.hpp"

#include "json.hpp"

namespace wallx {

using nlohmann::json;

namespace {

Matrix stack2(const Matrix& a, const Matrix& b) { return Matrix::vcat(a, b); }

Matrix generalized_kernel(const Matrix& a) {
  return a.rows() == 0 ? Matrix(0, 0) : kernel(power(a, a.rows()));
}

Matrix generalized_image(const Matrix& a) {
  return a.rows() == 0 ? Matrix(0, 0) : image(power(a, a.rows()));
}

Matrix shifted(const Matrix& a, long c) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) out(i, i) -= c;
  return out;
}

// V = span{f0, f1} with weights -1, +1, u^+ f0 = alpha f1, u^- f1 = beta f0.
WeightModule tensor_two(const WeightModule& m, long alpha, long beta, long dz) {
  WeightModule out;
  out.central = m.central + dz;
  if (m.floor) out.floor = *m.floor + 1;
  std::map<long, bool> keys;
  for (const auto& [h, n] : m.dims) {
    keys[h - 1] = true;
    keys[h + 1] = true;
  }
  for (const auto& [h, unused] : keys) {
    if (out.floor && h < *out.floor) continue;
    out.dims[h] = m.dim(h + 1) + m.dim(h - 1);
  }
  for (const auto& [h, n] : out.dims) {
    std::size_t a = m.dim(h + 1), b = m.dim(h - 1);
    std::size_t a2 = m.dim(h + 3), b2 = a;
    Matrix u(a2 + b2, a + b);
    u.set_block(0, 0, m.up_at(h + 1));
    u.set_block(a2, 0, Matrix::identity(a).scaled(alpha));
    u.set_block(a2, a, m.up_at(h - 1));
    out.up[h] = u;
    std::size_t a3 = b, b3 = m.dim(h - 3);
    Matrix d(a3 + b3, a + b);
    d.set_block(0, 0, m.down_at(h + 1));
    d.set_block(0, a, Matrix::identity(b).scaled(beta));
    d.set_block(a3, a, m.down_at(h - 1));
    out.down[h] = d;
  }
  return out;
}

bool is_bottom(const WeightModule& m, long h) { return m.floor && h == *m.floor; }

// Drops the layers that Θ M no longer sees, so that maps out of Θ M are
// defined on every layer that remains.
WeightModule raise_floor(const WeightModule& m, const WeightModule& theta) {
  if (!m.floor) return m;
  long f = *theta.floor;
  WeightModule out = m;
  out.floor = f;
  for (auto* layer : {&out.up, &out.down})
    for (auto it = layer->begin(); it != layer->end();) it = it->first < f ? layer->erase(it) : std::next(it);
  for (auto it = out.dims.begin(); it != out.dims.end();) it = it->first < f ? out.dims.erase(it) : std::next(it);
  return out;
}

}  // namespace

std::size_t WeightModule::dim(long h) const {
  auto it = dims.find(h);
  return it == dims.end() ? 0 : it->second;
}

Matrix WeightModule::up_at(long h) const {
  auto it = up.find(h);
  if (it != up.end() && dim(h + 2) == it->second.rows()) return it->second;
  return Matrix(dim(h + 2), dim(h));
}

Matrix WeightModule::down_at(long h) const {
  auto it = down.find(h);
  if (it != down.end() && dim(h - 2) == it->second.rows()) return it->second;
  return Matrix(dim(h - 2), dim(h));
}

std::size_t WeightModule::total_dim() const {
  std::size_t t = 0;
  for (const auto& [h, n] : dims) t += n;
  return t;
}

// Basis v_k = (u^-)^k v_0 of weight mu - 2k.
WeightModule wm_verma(long mu, int depth) {
  if (depth < 4) throw DepthError("depth must be at least 4");
  WeightModule m;
  m.floor = mu - 2L * (depth - 1);
  for (int k = 0; k < depth; ++k) m.dims[mu - 2L * k] = 1;
  for (int k = 0; k < depth; ++k) {
    long h = mu - 2L * k;
    if (k + 1 < depth) m.down[h] = Matrix::from_ints(1, 1, {1});
    if (k > 0) m.up[h] = Matrix::from_ints(1, 1, {k * (mu - k + 1)});
  }
  return m;
}

// Contragredient of the Verma basis: u^+ and u^- swap their matrices.
WeightModule wm_dual_verma(long mu, int depth) {
  WeightModule v = wm_verma(mu, depth);
  WeightModule m;
  m.floor = v.floor;
  m.dims = v.dims;
  for (const auto& [h, n] : v.dims) {
    if (v.dims.count(h + 2)) m.up[h] = v.down_at(h + 2).transpose();
    if (v.dims.count(h - 2)) m.down[h] = v.up_at(h - 2).transpose();
  }
  return m;
}

WeightModule wm_simple_finite(long lambda) {
  if (lambda < 0) throw std::invalid_argument("finite simple needs a dominant weight");
  WeightModule m;
  for (long k = 0; k <= lambda; ++k) m.dims[lambda - 2 * k] = 1;
  for (long k = 0; k <= lambda; ++k) {
    long h = lambda - 2 * k;
    if (k < lambda) m.down[h] = Matrix::from_ints(1, 1, {1});
    if (k > 0) m.up[h] = Matrix::from_ints(1, 1, {k * (lambda - k + 1)});
  }
  return m;
}

WeightModule wm_direct_sum(const WeightModule& x, const WeightModule& y) {
  if (x.central != y.central) throw std::invalid_argument("central characters differ");
  WeightModule out;
  out.central = x.central;
  if (x.floor || y.floor) {
    long f = std::max(x.floor.value_or(-(1L << 40)), y.floor.value_or(-(1L << 40)));
    out.floor = f;
  }
  std::map<long, bool> keys;
  for (const auto& [h, n] : x.dims) keys[h] = true;
  for (const auto& [h, n] : y.dims) keys[h] = true;
  for (const auto& [h, unused] : keys)
    if (!out.floor || h >= *out.floor) out.dims[h] = x.dim(h) + y.dim(h);
  for (const auto& [h, n] : out.dims) {
    auto fit = [&](const Matrix& a, const Matrix& b, std::size_t rows) {
      Matrix r = Matrix::block_diag(a, b);
      return r.rows() == rows ? r : Matrix(rows, n);
    };
    out.up[h] = fit(x.up_at(h), y.up_at(h), out.dim(h + 2));
    out.down[h] = fit(x.down_at(h), y.down_at(h), out.dim(h - 2));
  }
  return out;
}

WeightModule wm_tensor_V1(const WeightModule& m) { return tensor_two(m, 1, 1, 1); }
WeightModule wm_tensor_V1dual(const WeightModule& m) { return tensor_two(m, -1, -1, -1); }

std::optional<std::string> wm_check_relations(const WeightModule& m) {
  for (const auto& [h, n] : m.dims) {
    if (!m.reliable(h)) continue;
    Matrix c = m.down_at(h + 2) * m.up_at(h);
    Matrix lhs = m.up_at(h - 2) * m.down_at(h) - c;
    if (lhs != Matrix::identity(n).scaled(h))
      return "[u^+,u^-] != h on layer " + std::to_string(h);
  }
  return std::nullopt;
}

Matrix wm_casimir(const WeightModule& m, long h) {
  std::size_t n = m.dim(h);
  return Matrix::identity(n).scaled(h * h + 2 * h) + (m.down_at(h + 2) * m.up_at(h)).scaled(4);
}

WeightModule wm_restrict(const WeightModule& m, const WeightSub& s) {
  WeightModule out;
  out.central = m.central;
  out.floor = m.floor;
  std::map<long, Matrix> basis;
  for (const auto& [h, n] : m.dims) {
    auto it = s.find(h);
    basis[h] = it == s.end() ? Matrix(n, 0) : image(it->second);
    out.dims[h] = basis[h].cols();
  }
  for (const auto& [h, b] : basis) {
    if (m.dims.count(h + 2)) {
      auto x = solve(basis[h + 2], m.up_at(h) * b);
      if (!x) throw std::logic_error("subspace not stable under u^+ at " + std::to_string(h));
      out.up[h] = *x;
    }
    if (m.dims.count(h - 2) && !is_bottom(m, h)) {
      auto x = solve(basis[h - 2], m.down_at(h) * b);
      if (!x) throw std::logic_error("subspace not stable under u^- at " + std::to_string(h));
      out.down[h] = *x;
    }
  }
  return out;
}

WeightModule wm_quotient(const WeightModule& m, const WeightSub& s) {
  WeightModule out;
  out.central = m.central;
  out.floor = m.floor;
  std::map<long, Matrix> q, r;
  for (const auto& [h, n] : m.dims) {
    auto it = s.find(h);
    Matrix sub = it == s.end() ? Matrix(n, 0) : image(it->second);
    q[h] = quotient_map(sub, n);
    r[h] = *solve(q[h], Matrix::identity(q[h].rows()));
    out.dims[h] = q[h].rows();
  }
  for (const auto& [h, n] : out.dims) {
    if (m.dims.count(h + 2)) out.up[h] = q[h + 2] * m.up_at(h) * r[h];
    if (m.dims.count(h - 2) && !is_bottom(m, h)) out.down[h] = q[h - 2] * m.down_at(h) * r[h];
  }
  return out;
}

WeightModule wm_subquotient(const WeightModule& m, const WeightSub& big, const WeightSub& small) {
  WeightModule res = wm_restrict(m, big);
  WeightSub coords;
  for (const auto& [h, n] : m.dims) {
    auto bi = big.find(h);
    Matrix b = bi == big.end() ? Matrix(n, 0) : image(bi->second);
    auto si = small.find(h);
    Matrix sm = si == small.end() ? Matrix(n, 0) : si->second;
    auto y = solve(b, sm);
    if (!y) throw std::logic_error("subquotient: small is not inside big");
    coords[h] = *y;
  }
  return wm_quotient(res, coords);
}

WeightSub wm_kernel(const WeightMap& f, const WeightModule& src) {
  WeightSub out;
  for (const auto& [h, n] : src.dims) {
    auto it = f.find(h);
    out[h] = it == f.end() ? Matrix::identity(n) : kernel(it->second);
  }
  return out;
}

WeightSub wm_image(const WeightMap& f, const WeightModule&) {
  WeightSub out;
  for (const auto& [h, a] : f) out[h] = image(a);
  return out;
}

WeightSub wm_full(const WeightModule& m) {
  WeightSub out;
  for (const auto& [h, n] : m.dims) out[h] = Matrix::identity(n);
  return out;
}

WeightSub wm_sum(const WeightSub& a, const WeightSub& b) {
  WeightSub out = a;
  for (const auto& [h, x] : b) out[h] = out.count(h) ? subspace_sum(out[h], x) : image(x);
  return out;
}

WeightSub wm_intersection(const WeightSub& a, const WeightSub& b) {
  WeightSub out;
  for (const auto& [h, x] : a) {
    auto it = b.find(h);
    out[h] = it == b.end() ? Matrix(x.rows(), 0) : subspace_intersection(x, it->second);
  }
  return out;
}

bool wm_contains(const WeightSub& big, const WeightSub& small) {
  for (const auto& [h, x] : small) {
    if (rank(x) == 0) continue;
    auto it = big.find(h);
    if (it == big.end() || !subspace_contains(it->second, x)) return false;
  }
  return true;
}

std::size_t wm_dim(const WeightSub& s) {
  std::size_t t = 0;
  for (const auto& [h, x] : s) t += rank(x);
  return t;
}

WeightTheta wm_theta_data(const WeightModule& m) {
  WeightTheta t;
  t.tensor = wm_tensor_V1(m);
  WeightSub off;
  for (const auto& [h, n] : t.tensor.dims) {
    Matrix c = shifted(wm_casimir(t.tensor, h), -1);
    Matrix k = generalized_kernel(c);
    Matrix rest = generalized_image(c);
    off[h] = k;
    t.inclusion[h] = k;
    Matrix both = Matrix::hcat(k, rest);
    if (both.cols() != n) throw std::logic_error("Casimir decomposition is not complete");
    t.projection[h] = n ? inverse(both).block(0, 0, k.cols(), n) : Matrix(0, 0);
  }
  t.off = wm_restrict(t.tensor, off);
  t.theta = wm_tensor_V1dual(t.off);
  return t;
}

WeightModule wm_theta(const WeightModule& m) { return wm_theta_data(m).theta; }

namespace {

// Θ-coordinates of a pair (block0 in (M⊗V_1)_{h+1}, block1 in (M⊗V_1)_{h-1}).
Matrix theta_coords(const WeightTheta& t, long h, const Matrix& x0, const Matrix& x1, bool check) {
  auto proj = [&](long k, const Matrix& x) {
    auto it = t.projection.find(k);
    if (it == t.projection.end()) return Matrix(0, x.cols());
    Matrix c = it->second * x;
    if (check && t.inclusion.at(k) * c != x)
      throw std::invalid_argument("closed-form unit needs 𝔠 = 0 on the module");
    return c;
  };
  (void)h;
  return stack2(proj(h + 1, x0), proj(h - 1, x1));
}

}  // namespace

WeightMap wm_iota(const WeightModule& m, const WeightTheta& t) {
  WeightMap out;
  for (const auto& [h, n] : t.theta.dims) {
    std::size_t mh = m.dim(h);
    Matrix hv = Matrix::identity(mh).scaled(h);
    Matrix x0 = stack2(m.up_at(h).scaled(-2), hv.scaled(-1));
    Matrix x1 = stack2(hv, m.down_at(h).scaled(-2));
    bool exact = m.reliable(h);
    out[h] = theta_coords(t, h, x0, x1, exact);
  }
  return out;
}

WeightMap wm_iota_natural(const WeightModule& m, const WeightTheta& t) {
  WeightMap out;
  for (const auto& [h, n] : t.theta.dims) {
    std::size_t mh = m.dim(h);
    Matrix x0 = stack2(Matrix(m.dim(h + 2), mh), Matrix::identity(mh));
    Matrix x1 = stack2(Matrix::identity(mh), Matrix(m.dim(h - 2), mh));
    out[h] = theta_coords(t, h, x0, x1, false);
  }
  return out;
}

// κ(-(v0⊗e0 + v1⊗e1)⊗e1^* + (v0'⊗e0 + v1'⊗e1)⊗e0^*) = v0' - v1, i.e. the
// contraction of V_1 against V_1^∨.
WeightMap wm_kappa(const WeightModule& m, const WeightTheta& t) {
  WeightMap out;
  for (const auto& [h, n] : t.theta.dims) {
    std::size_t mh = m.dim(h);
    auto basis = [&](long k) {
      auto it = t.inclusion.find(k);
      return it == t.inclusion.end() ? Matrix(t.tensor.dim(k), 0) : it->second;
    };
    Matrix k0 = basis(h + 1), k1 = basis(h - 1);
    Matrix w1 = k0.block(m.dim(h + 2), 0, mh, k0.cols());
    Matrix x0 = k1.block(0, 0, mh, k1.cols());
    out[h] = Matrix::hcat(w1, x0);
  }
  return out;
}

WeightSub wm_vartheta_plus_subspace(const WeightTheta& t) {
  WeightSub out;
  for (const auto& [h, n] : t.theta.dims) out[h] = kernel(wm_casimir(t.theta, h));
  return out;
}

WeightSub wm_vartheta_minus_subspace(const WeightModule& m, const WeightTheta& t) {
  WeightSub out = wm_image(wm_kappa(m, t), m);
  for (const auto& [h, n] : m.dims)
    if (!out.count(h)) out[h] = Matrix(n, 0);
  return out;
}

WeightModule wm_vartheta_plus(const WeightModule& m) {
  auto t = wm_theta_data(m);
  return wm_restrict(t.theta, wm_vartheta_plus_subspace(t));
}

WeightModule wm_vartheta_minus(const WeightModule& m) {
  auto t = wm_theta_data(m);
  return wm_restrict(raise_floor(m, t.theta), wm_vartheta_minus_subspace(m, t));
}

WeightModule wm_nabla_plus(const WeightModule& m) {
  auto t = wm_theta_data(m);
  WeightSub plus = wm_vartheta_plus_subspace(t);
  WeightSub rel = wm_intersection(wm_image(wm_iota_natural(m, t), t.theta), plus);
  return wm_subquotient(t.theta, plus, rel);
}

WeightModule wm_nabla_minus(const WeightModule& m) {
  auto t = wm_theta_data(m);
  return wm_quotient(raise_floor(m, t.theta), wm_vartheta_minus_subspace(m, t));
}

Multiplicities wm_multiplicities(const WeightModule& m) {
  for (long h : {0L, -2L, -4L})
    if (m.floor && h < *m.floor)
      throw DepthError("layer " + std::to_string(h) + " lies below the truncation floor " +
                       std::to_string(*m.floor));
  for (const auto& [h, n] : m.dims)
    if (n && (h > 0 || h % 2 != 0))
      throw std::invalid_argument("module has weight " + std::to_string(h) + " outside the block of 0");
  std::size_t top = m.dim(0), low = m.dim(-2);
  if (m.dim(-4) != low) throw std::invalid_argument("character is not a combination of L(0) and M(-2)");
  Multiplicities out;
  if (top) out[0] = top;
  if (low) out[1] = low;
  return out;
}

bool CompareReport::all_equal() const {
  if (!conclusive) return false;
  for (const auto& r : rows)
    if (!r.equal) return false;
  return true;
}

std::vector<std::string> wm_pattern_names() { return {"L", "Ls", "M", "Ms", "Mv", "P"}; }

WeightModule wm_pattern(const std::string& name, int depth) {
  if (name == "L") return wm_simple_finite(0);
  if (name == "Ls" || name == "Ms") return wm_verma(-2, depth);
  if (name == "M") return wm_verma(0, depth);
  if (name == "Mv") return wm_dual_verma(0, depth);
  if (name == "P") return wm_theta(wm_verma(-2, depth));
  throw std::invalid_argument("unknown pattern: " + name);
}

CompareReport wm_compare(const std::string& pattern, int depth) {
  BlockModule b;
  bool found = false;
  for (auto& [name, m] : shared_patterns())
    if (name == pattern) {
      b = m;
      found = true;
    }
  if (!found) throw std::invalid_argument("pattern not shared by both backends: " + pattern);
  CompareReport rep;
  rep.pattern = pattern;
  rep.depth = depth;
  WeightModule w = wm_pattern(pattern, depth);
  struct Entry {
    const char* name;
    BlockModule (*block)(const BlockModule&);
    WeightModule (*weight)(const WeightModule&);
  };
  static const Entry entries[] = {
      {"Theta", [](const BlockModule& m) { return theta(1, m); }, wm_theta},
      {"vartheta+", [](const BlockModule& m) { return vartheta_plus(1, m); }, wm_vartheta_plus},
      {"vartheta-", [](const BlockModule& m) { return vartheta_minus(1, m); }, wm_vartheta_minus},
      {"nabla+", [](const BlockModule& m) { return nabla_plus(1, m); }, wm_nabla_plus},
      {"nabla-", [](const BlockModule& m) { return nabla_minus(1, m); }, wm_nabla_minus},
  };
  for (const auto& e : entries) {
    CompareRow row;
    row.functor = e.name;
    row.block = composition_multiplicities(e.block(b));
    WeightModule out = e.weight(w);
    try {
      row.weight = wm_multiplicities(out);
    } catch (const DepthError&) {
      rep.conclusive = false;
      // Each wall-crossing costs one layer; -4 must stay above the floor.
      long missing = (*out.floor + 4 + 1) / 2;
      rep.required_depth = std::max<int>(rep.required_depth, depth + static_cast<int>(missing));
      rep.rows.push_back(row);
      continue;
    }
    row.equal = row.block == row.weight;
    rep.rows.push_back(row);
  }
  return rep;
}

std::string wm_dims_json(const WeightModule& m) {
  json dims = json::object();
  for (const auto& [h, n] : m.dims) dims[std::to_string(h)] = n;
  json j = {{"central", m.central}, {"dims", dims}};
  j["floor"] = m.floor ? json(*m.floor) : json(nullptr);
  return j.dump();
}

}  // namespace wallx

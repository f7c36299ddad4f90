#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace wallx {

// Enumeration limits, raised by the WALLX_BOUNDS environment variable
// ("key=value,key=value", or a bare integer k raising every limit by k-1).
struct Bounds {
  int weyl_n = 8;
  int ltensor_n = 5;
  int ltensor_d = 3;
  int refine_n = 7;
  static Bounds from_env();
};

class BoundsExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Embeddings {
  std::vector<std::string> labels;
  explicit Embeddings(std::size_t d);
  explicit Embeddings(std::vector<std::string> labels);
  std::size_t d() const { return labels.size(); }
};

// Root e_i - e_j with 1-based indices.
struct Root {
  int i = 1;
  int j = 2;
  bool positive() const { return i < j; }
  auto operator<=>(const Root&) const = default;
};

std::vector<Root> positive_roots(int n);
std::vector<Root> all_roots(int n);
std::vector<Root> simple_roots(int n);
// Standard inner product of e_i - e_j and e_k - e_l.
int inner(const Root& a, const Root& b);

// One-line notation, 1-based: p[i-1] = w(i).
using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_compose(const Perm& a, const Perm& b);  // (a∘b)(i) = a(b(i))
Perm perm_inverse(const Perm& p);
Perm simple_reflection(int n, int i);              // s_i swaps i, i+1
bool perm_valid(const Perm& p);
int perm_length(const Perm& p);
// Reduced word: p = s_{w[0]} ∘ s_{w[1]} ∘ ... ; right descents peeled smallest first.
std::vector<int> reduced_word(const Perm& p);
std::string word_string(const std::vector<int>& word);
Root apply_root(const Perm& w, const Root& r);

// Integer d x n weight, row σ holds (λ_{1,σ}, ..., λ_{n,σ}).
struct Weight {
  std::vector<std::vector<long>> rows;
  Weight() = default;
  Weight(std::size_t d, std::size_t n);
  explicit Weight(std::vector<std::vector<long>> r);
  std::size_t d() const { return rows.size(); }
  std::size_t n() const { return rows.empty() ? 0 : rows[0].size(); }
  auto operator<=>(const Weight&) const = default;
};

struct WeylElement {
  std::vector<Perm> perms;
  WeylElement() = default;
  explicit WeylElement(std::vector<Perm> p);
  static WeylElement identity(std::size_t d, int n);
  std::size_t d() const { return perms.size(); }
  int n() const { return perms.empty() ? 0 : static_cast<int>(perms[0].size()); }
  WeylElement operator*(const WeylElement& rhs) const;
  auto operator<=>(const WeylElement&) const = default;
};

Weight theta(std::size_t d, int n);  // (n-1, ..., 0) in every row
Weight apply(const WeylElement& w, const Weight& lambda);
Weight dot_action(const WeylElement& w, const Weight& lambda);
bool is_dominant(const Weight& lambda);
bool is_strictly_dominant(const Weight& lambda);

std::vector<Perm> weyl_enumerate(int n, const Bounds& b = Bounds::from_env());
std::vector<WeylElement> weyl_enumerate(std::size_t d, int n,
                                        const Bounds& b = Bounds::from_env());
std::set<Weight> orbit(const std::vector<WeylElement>& ws, const Weight& lambda);

std::string weight_to_json(const Weight& w);
Weight weight_from_json(const std::string& s);
std::string weyl_to_json(const WeylElement& w);
WeylElement weyl_from_json(const std::string& s);

}  // namespace wallx

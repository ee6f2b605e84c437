#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poly.hpp"
#include "rational.hpp"

namespace fnlab {

// Kernel conventions: a kernel of arity p on R^m is a polynomial map whose
// inputs are the coordinates a_S^j of a microcube point, S a subset of {1..p}
// encoded as a bit mask, placed at variable index S*m + j.

inline std::size_t kernel_vars(int p, int m) { return static_cast<std::size_t>(m) << p; }
inline std::size_t kernel_var(std::uint32_t s, int j, int m) {
  return static_cast<std::size_t>(s) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j);
}
/// The base projection γ ↦ γ_∅.
QPolyMap projection_kernel(int p, int m);

enum class FormClass { Omega0, Omega1, Omega12, Omega13, Omega123 };
enum class Encoding { Under, Over };

std::string class_name(FormClass c);
FormClass parse_class(const std::string& s);

/// A W_{D^k}-valued kernel of arity p on R^m; coefficient U (a mask over the k
/// expansion generators) is a kernel. With k = 1 and base π it is a
/// tangent-vector-valued form.
class FormElem {
 public:
  FormElem() = default;
  FormElem(int p, int k, int m, std::vector<QPolyMap> coeffs, FormClass tag = FormClass::Omega0,
           Encoding enc = Encoding::Under);
  /// k = 1 with base π and the given principal kernel.
  static FormElem tangent(int p, int m, QPolyMap principal, FormClass tag = FormClass::Omega1);

  int arity() const { return p_; }
  int expansion() const { return k_; }
  int dim() const { return m_; }
  const QPolyMap& coeff(std::uint32_t mask) const { return coeffs_.at(mask); }
  const std::vector<QPolyMap>& coeffs() const { return coeffs_; }
  const QPolyMap& principal() const;
  FormClass tag() const { return tag_; }
  Encoding encoding() const { return enc_; }
  FormElem with_tag(FormClass c) const;

  bool same_data(const FormElem& o) const { return p_ == o.p_ && k_ == o.k_ && m_ == o.m_ && coeffs_ == o.coeffs_; }
  friend bool operator==(const FormElem& a, const FormElem& b) { return a.same_data(b) && a.enc_ == b.enc_; }

 private:
  friend FormElem transpose_views(const FormElem& x);
  int p_ = 0, k_ = 0, m_ = 0;
  std::vector<QPolyMap> coeffs_;
  FormClass tag_ = FormClass::Omega0;
  Encoding enc_ = Encoding::Under;
};

/// Switches between the two encodings; the coefficient data is shared.
FormElem transpose_views(const FormElem& x);

/// Sum of principal parts of two tangent-valued forms over the same base.
FormElem add_tangent(const FormElem& x, const FormElem& y);
FormElem scale_tangent(const FormElem& x, const Rational& c);
bool principal_is_zero(const FormElem& x);

class Permutation {
 public:
  Permutation() = default;
  /// images[i-1] = σ(i), values 1..n.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);
  static std::vector<Permutation> all(int n);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& images() const { return img_; }
  int sign() const;
  Permutation inverse() const;
  std::uint32_t apply_mask(std::uint32_t mask) const;

  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> img_;
};

/// σ(i) = q + i for i <= p and σ(p + j) = j.
Permutation shuffle_sigma(int p, int q);

/// K^σ(γ) = K(γ^σ) with (γ^σ)_S = γ_σ(S), applied to every coefficient.
FormElem perm_act(const FormElem& x, const Permutation& sigma);
QPolyMap perm_act(const QPolyMap& kernel, int p, int m, const Permutation& sigma);

/// Empty when x satisfies the predicates of class c, else the failed predicate.
std::string class_failure(const FormElem& x, FormClass c);
bool is_omega1(const FormElem& x);
bool is_omega12(const FormElem& x);
bool is_omega13(const FormElem& x);
bool is_omega123(const FormElem& x);

/// Plain kernels: f of arity p on the first p axes, g of arity q on the next q.
QPolyMap conv_under(const QPolyMap& f, int p, const QPolyMap& g, int q, int m);
QPolyMap conv_over(const QPolyMap& f, int p, const QPolyMap& g, int q, int m);

/// Expansions: x over D^l and y over D^n combine over D^(l+n).
FormElem prod_under(const FormElem& x, const FormElem& y);
FormElem prod_over(const FormElem& x, const FormElem& y);

FormElem bracket_L1(const FormElem& x, const FormElem& y);
FormElem bracket_L12(const FormElem& x, const FormElem& y);

/// Σ_σ ε_σ x^σ on the principal part.
FormElem antisymmetrize(const FormElem& x);
/// antisymmetrize(x) / (p! q!), where p + q is the arity of x.
FormElem antisymmetrize_scaled(const FormElem& x, int p, int q);

FormElem bracket_FN13(const FormElem& x, const FormElem& y);
FormElem bracket_FN123(const FormElem& x, const FormElem& y);

}  // namespace fnlab

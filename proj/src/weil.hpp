#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace fnlab {

/// An infinitesimal object D^n{p}: n nilsquare generators, a set of index
/// sequences whose products vanish, and per-generator power bounds.
struct SimplicialObject {
  int n = 0;
  std::set<std::vector<int>> p_set;
  std::vector<int> power_bounds;

  /// Checks index ranges, strict monotonicity and bounds; throws ValidationError.
  void validate() const;
  bool is_simplicial() const;
  std::string name() const;

  friend bool operator==(const SimplicialObject&, const SimplicialObject&) = default;
  friend auto operator<=>(const SimplicialObject&, const SimplicialObject&) = default;
};

SimplicialObject make_object(int n, std::set<std::vector<int>> p_set = {}, std::vector<int> power_bounds = {});
SimplicialObject cube(int n);
/// D(n): n generators with every pairwise product zero.
SimplicialObject first_order(int n);
SimplicialObject oplus(const SimplicialObject& a, const SimplicialObject& b);

class WeilAlgebra;
using WeilAlgebraPtr = std::shared_ptr<const WeilAlgebra>;

/// The monomial quotient algebra of a SimplicialObject, basis in graded-lex order.
class WeilAlgebra {
 public:
  explicit WeilAlgebra(SimplicialObject obj);

  const SimplicialObject& object() const { return obj_; }
  std::size_t dim() const { return basis_.size(); }
  int generators() const { return obj_.n; }
  const std::vector<int>& exponent(std::size_t i) const { return basis_[i]; }
  /// Index of a monomial in the basis, or -1 when it reduces to zero.
  int index_of(const std::vector<int>& e) const;
  /// Index of the square-free monomial with generator set `mask` (bit g-1 for d_g), or -1.
  int index_of_mask(std::uint32_t mask) const;
  /// Index of basis_[i] * basis_[j], or -1 when the product vanishes.
  int product_index(std::size_t i, std::size_t j) const { return table_[i * basis_.size() + j]; }
  std::string monomial_name(std::size_t i) const;

  friend bool operator==(const WeilAlgebra& a, const WeilAlgebra& b) { return a.obj_ == b.obj_; }

 private:
  bool vanishes(const std::vector<int>& e) const;

  SimplicialObject obj_;
  std::vector<std::vector<int>> basis_;
  std::vector<int> table_;
};

/// Shared, cached algebra for an object.
WeilAlgebraPtr make_algebra(const SimplicialObject& obj);

/// Element of W ⊗ C for a coefficient module C (rationals or polynomials).
template <class C>
class BasicWeilElement {
 public:
  BasicWeilElement() = default;
  BasicWeilElement(WeilAlgebraPtr alg, const C& zero) : alg_(std::move(alg)), c_(alg_->dim(), zero) {}

  static BasicWeilElement scalar(WeilAlgebraPtr alg, const C& zero, const C& value) {
    BasicWeilElement r(std::move(alg), zero);
    r.c_[0] = value;
    return r;
  }

  const WeilAlgebraPtr& algebra() const { return alg_; }
  std::size_t size() const { return c_.size(); }
  const C& operator[](std::size_t i) const { return c_[i]; }
  C& operator[](std::size_t i) { return c_[i]; }
  const std::vector<C>& coefficients() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_) {
      if (!fnlab_is_zero(x)) return false;
    }
    return true;
  }

  BasicWeilElement& operator+=(const BasicWeilElement& o) {
    same_algebra(o);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!fnlab_is_zero(o.c_[i])) c_[i] += o.c_[i];
    }
    return *this;
  }
  BasicWeilElement& operator-=(const BasicWeilElement& o) {
    same_algebra(o);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!fnlab_is_zero(o.c_[i])) c_[i] -= o.c_[i];
    }
    return *this;
  }
  BasicWeilElement& operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend BasicWeilElement operator+(BasicWeilElement a, const BasicWeilElement& b) { return a += b; }
  friend BasicWeilElement operator-(BasicWeilElement a, const BasicWeilElement& b) { return a -= b; }
  friend BasicWeilElement operator*(BasicWeilElement a, const Rational& s) { return a *= s; }
  friend BasicWeilElement operator-(BasicWeilElement a) { return a *= Rational(-1); }

  friend BasicWeilElement operator*(const BasicWeilElement& a, const BasicWeilElement& b) {
    a.same_algebra(b);
    BasicWeilElement r(a.alg_, a.zero_like());
    const std::size_t n = a.c_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (fnlab_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < n; ++j) {
        int k = a.alg_->product_index(i, j);
        if (k < 0 || fnlab_is_zero(b.c_[j])) continue;
        r.c_[static_cast<std::size_t>(k)] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  BasicWeilElement& operator*=(const BasicWeilElement& o) { return *this = *this * o; }

  friend bool operator==(const BasicWeilElement& a, const BasicWeilElement& b) {
    return *a.alg_ == *b.alg_ && a.c_ == b.c_;
  }

  C zero_like() const { return c_[0] - c_[0]; }

 private:
  void same_algebra(const BasicWeilElement& o) const {
    if (!(*alg_ == *o.alg_)) {
      throw PreconditionError("Weil elements live in different algebras: " + alg_->object().name() + " vs " +
                              o.alg_->object().name());
    }
  }

  WeilAlgebraPtr alg_;
  std::vector<C> c_;
};

using WeilElement = BasicWeilElement<Rational>;

WeilElement weil_zero(const WeilAlgebraPtr& alg);
WeilElement weil_unit(const WeilAlgebraPtr& alg);
/// The generator d_g (1-based); zero when d_g itself vanishes in the algebra.
WeilElement weil_generator(const WeilAlgebraPtr& alg, int g);
std::string to_string(const WeilElement& x);

/// A morphism of infinitesimal objects source -> target, given by the images of
/// the target generators as elements of the source algebra.
class InfMorphism {
 public:
  using Term = std::pair<Rational, std::vector<int>>;

  /// Validates zero constant terms and that target relations map to zero.
  InfMorphism(SimplicialObject source, SimplicialObject target, std::vector<WeilElement> subst);
  static InfMorphism from_terms(SimplicialObject source, SimplicialObject target,
                                const std::vector<std::vector<Term>>& subst);
  static InfMorphism identity(const SimplicialObject& obj);

  const SimplicialObject& source() const { return source_; }
  const SimplicialObject& target() const { return target_; }
  const std::vector<WeilElement>& substitution() const { return subst_; }
  const WeilAlgebraPtr& source_algebra() const { return src_alg_; }
  const WeilAlgebraPtr& target_algebra() const { return tgt_alg_; }

  /// Image of target basis element t in the source algebra.
  const WeilElement& image(std::size_t t) const { return images_[t]; }

  /// Pullback of a target-algebra element to the source algebra.
  template <class C>
  BasicWeilElement<C> pull(const BasicWeilElement<C>& x) const {
    if (!(x.algebra()->object() == target_)) {
      throw PreconditionError("restriction expects a point on " + target_.name() + ", got " +
                              x.algebra()->object().name());
    }
    BasicWeilElement<C> r(src_alg_, x.zero_like());
    for (std::size_t t = 0; t < images_.size(); ++t) {
      if (fnlab_is_zero(x[t])) continue;
      const WeilElement& img = images_[t];
      for (std::size_t s = 0; s < img.size(); ++s) {
        if (sgn(img[s]) != 0) r[s] += x[t] * img[s];
      }
    }
    return r;
  }

  friend bool operator==(const InfMorphism& a, const InfMorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.subst_ == b.subst_;
  }

 private:
  SimplicialObject source_, target_;
  WeilAlgebraPtr src_alg_, tgt_alg_;
  std::vector<WeilElement> subst_;
  std::vector<WeilElement> images_;
};

/// f : A -> B, g : B -> C gives A -> C.
InfMorphism compose_morphisms(const InfMorphism& f, const InfMorphism& g);

}  // namespace fnlab

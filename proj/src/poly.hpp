#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"
#include "weil.hpp"

namespace fnlab {

using Monomial = std::vector<std::uint16_t>;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto e : m) {
      h ^= e;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

/// Sparse polynomial over a coefficient ring R in a fixed number of variables.
/// Terms are kept sorted by exponent vector with no zero coefficients.
template <class R>
class Poly {
 public:
  using Term = std::pair<Monomial, R>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const R& c) {
    Poly p(nvars);
    if (!fnlab_is_zero(c)) p.terms_.emplace_back(Monomial(nvars, 0), c);
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t v, const R& one) {
    if (v >= nvars) throw ValidationError("variable index out of range");
    Poly p(nvars);
    Monomial m(nvars, 0);
    m[v] = 1;
    p.terms_.emplace_back(std::move(m), one);
    return p;
  }
  /// Builds from arbitrary terms, merging duplicates and dropping zeros.
  static Poly from_terms(std::size_t nvars, std::vector<Term> terms) {
    for (const auto& t : terms) {
      if (t.first.size() != nvars) throw ValidationError("exponent vector length does not match variable count");
    }
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    Poly p(nvars);
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
      } else {
        p.terms_.push_back(std::move(t));
      }
    }
    p.drop_zeros();
    return p;
  }

  std::size_t var_count() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (auto e : m) s += e;
      d = std::max(d, s);
    }
    return d;
  }

  Poly& operator+=(const Poly& o) { return merge(o, false); }
  Poly& operator-=(const Poly& o) { return merge(o, true); }
  Poly& operator*=(const Rational& s) {
    if (fnlab_is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= s;
    drop_zeros();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_vars(b);
    Poly r(a.nvars_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    std::unordered_map<Monomial, R, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    Monomial m(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) {
          unsigned s = static_cast<unsigned>(ma[i]) + mb[i];
          if (s > 0xFFFFU) throw UnsupportedOperation("polynomial exponent overflow");
          m[i] = static_cast<std::uint16_t>(s);
        }
        auto it = acc.find(m);
        if (it == acc.end()) {
          acc.emplace(m, ca * cb);
        } else {
          it->second += ca * cb;
        }
      }
    }
    r.terms_.reserve(acc.size());
    for (auto& [mon, c] : acc) {
      if (!fnlab_is_zero(c)) r.terms_.emplace_back(mon, std::move(c));
    }
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

  /// Renames variable i to map[i] in a polynomial ring with new_nvars variables.
  Poly rename(std::span<const std::size_t> map, std::size_t new_nvars) const {
    if (map.size() != nvars_) throw ValidationError("rename map has wrong length");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      Monomial nm(new_nvars, 0);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (m[i] == 0) continue;
        if (map[i] >= new_nvars) throw ValidationError("rename target out of range");
        nm[map[i]] = static_cast<std::uint16_t>(nm[map[i]] + m[i]);
      }
      out.emplace_back(std::move(nm), c);
    }
    return from_terms(new_nvars, std::move(out));
  }

  /// Partial derivative with respect to variable v.
  Poly derivative(std::size_t v) const {
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
      if (m[v] == 0) continue;
      Monomial nm = m;
      --nm[v];
      R nc = c;
      nc *= Rational(m[v]);
      out.emplace_back(std::move(nm), std::move(nc));
    }
    return from_terms(nvars_, std::move(out));
  }

 private:
  void check_vars(const Poly& o) const {
    if (nvars_ != o.nvars_) {
      throw PreconditionError("polynomials in " + std::to_string(nvars_) + " and " + std::to_string(o.nvars_) +
                              " variables cannot be combined");
    }
  }
  void drop_zeros() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term& t) { return fnlab_is_zero(t.second); }),
                 terms_.end());
  }
  Poly& merge(const Poly& o, bool negate) {
    check_vars(o);
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
        out.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->first < a->first) {
        out.emplace_back(b->first, negate ? R(b->second * Rational(-1)) : b->second);
        ++b;
      } else {
        R c = std::move(a->second);
        if (negate) {
          c -= b->second;
        } else {
          c += b->second;
        }
        if (!fnlab_is_zero(c)) out.emplace_back(std::move(a->first), std::move(c));
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

template <class R>
bool fnlab_is_zero(const Poly<R>& p) {
  return p.is_zero();
}

using QPoly = Poly<Rational>;
/// Kernel-valued Weil expansion: W ⊗ Q[vars].
using WeilPoly = BasicWeilElement<QPoly>;

/// A polynomial map R^in -> R^out.
template <class R>
struct PolyMap {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::vector<Poly<R>> components;

  PolyMap() = default;
  PolyMap(std::size_t in, std::size_t out) : in_dim(in), out_dim(out), components(out, Poly<R>(in)) {}
  PolyMap(std::size_t in, std::vector<Poly<R>> comps) : in_dim(in), out_dim(comps.size()), components(std::move(comps)) {
    for (const auto& c : components) {
      if (c.var_count() != in) throw ValidationError("component variable count differs from map input dimension");
    }
  }

  static PolyMap identity(std::size_t n) {
    PolyMap f(n, n);
    for (std::size_t i = 0; i < n; ++i) f.components[i] = Poly<R>::variable(n, i, R(1));
    return f;
  }

  bool is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.is_zero(); });
  }
  friend bool operator==(const PolyMap&, const PolyMap&) = default;
};

using QPolyMap = PolyMap<Rational>;

/// Evaluates f at args in any commutative Q-algebra R. `unit` is the 1 of R.
template <class R>
std::vector<R> eval(const QPolyMap& f, std::span<const R> args, const R& unit) {
  if (args.size() != f.in_dim) {
    throw PreconditionError("evaluation expects " + std::to_string(f.in_dim) + " arguments, got " +
                            std::to_string(args.size()));
  }
  std::vector<std::vector<R>> powers(args.size());
  auto power = [&](std::size_t v, unsigned e) -> const R& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(args[v]);
    while (cache.size() < e) cache.push_back(cache.back() * args[v]);
    return cache[e - 1];
  };
  R zero = unit * Rational(0);
  std::vector<R> out;
  out.reserve(f.out_dim);
  for (const auto& comp : f.components) {
    R acc = zero;
    for (const auto& [m, c] : comp.terms()) {
      R term = unit * c;
      for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[v] != 0) term = term * power(v, m[v]);
      }
      acc += term;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

template <class R>
std::vector<R> eval(const QPolyMap& f, const std::vector<R>& args, const R& unit) {
  return eval<R>(f, std::span<const R>(args), unit);
}

std::vector<Rational> eval(const QPolyMap& f, const std::vector<Rational>& args);

/// f ∘ g.
QPolyMap compose(const QPolyMap& f, const QPolyMap& g);

bool poly_equal(const QPolyMap& f, const QPolyMap& g);

std::string to_string(const QPoly& p);

}  // namespace fnlab

#pragma once

// Reference computations used only by the tests. They share nothing with the
// library beyond exact rationals and the polynomial container.

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "poly.hpp"
#include "tvforms.hpp"

namespace oracle {

using fnlab::QPoly;
using fnlab::QPolyMap;
using fnlab::Rational;

/// Every exponent vector below the power bounds that no sequence in p_set divides.
inline std::vector<std::vector<int>> weil_basis(int n, const std::set<std::vector<int>>& p_set,
                                                std::vector<int> bounds = {}) {
  if (bounds.empty()) bounds.assign(static_cast<std::size_t>(n), 2);
  std::vector<std::vector<int>> out;
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  while (true) {
    bool killed = false;
    for (const auto& seq : p_set) {
      bool all = true;
      for (int g : seq) all = all && e[static_cast<std::size_t>(g - 1)] > 0;
      killed = killed || all;
    }
    if (!killed) out.push_back(e);
    int i = 0;
    while (i < n && ++e[static_cast<std::size_t>(i)] == bounds[static_cast<std::size_t>(i)]) {
      e[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

/// Partial derivative of p in variable v, term by term.
inline QPoly d(const QPoly& p, std::size_t v) {
  std::vector<QPoly::Term> terms;
  for (const auto& [mono, c] : p.terms()) {
    if (mono[v] == 0) continue;
    auto m2 = mono;
    --m2[v];
    terms.emplace_back(std::move(m2), c * Rational(mono[v]));
  }
  return QPoly::from_terms(p.var_count(), std::move(terms));
}

/// Substitutes polynomials for the variables of p.
inline QPoly substitute(const QPoly& p, const std::vector<QPoly>& args) {
  const std::size_t n = args.front().var_count();
  QPoly out(n);
  for (const auto& [mono, c] : p.terms()) {
    QPoly t = QPoly::constant(n, c);
    for (std::size_t v = 0; v < mono.size(); ++v) {
      for (int k = 0; k < mono[v]; ++k) t = t * args[v];
    }
    out += t;
  }
  return out;
}

/// Classical bracket of vector fields as derivations: [X,Y] = DY·X − DX·Y.
inline std::vector<QPoly> lie_bracket(const std::vector<QPoly>& x, const std::vector<QPoly>& y, std::size_t dims) {
  std::vector<QPoly> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    QPoly s(x[i].var_count());
    for (std::size_t l = 0; l < dims; ++l) s += d(y[i], l) * x[l] - d(x[i], l) * y[l];
    out.push_back(std::move(s));
  }
  return out;
}

/// Truncated polynomial algebra in two parameters s, t with s² = t² = 0.
/// Slots: 1, s, t, st. Coefficients are polynomials in the base variables.
struct Jet2 {
  std::array<QPoly, 4> c;
  explicit Jet2(std::size_t n) : c{QPoly(n), QPoly(n), QPoly(n), QPoly(n)} {}
  friend Jet2 operator+(Jet2 a, const Jet2& b) {
    for (int i = 0; i < 4; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r(a.c[0].var_count());
    r.c[0] = a.c[0] * b.c[0];
    r.c[1] = a.c[0] * b.c[1] + a.c[1] * b.c[0];
    r.c[2] = a.c[0] * b.c[2] + a.c[2] * b.c[0];
    r.c[3] = a.c[0] * b.c[3] + a.c[3] * b.c[0] + a.c[1] * b.c[2] + a.c[2] * b.c[1];
    return r;
  }
};

inline Jet2 apply(const QPoly& p, const std::vector<Jet2>& w) {
  const std::size_t n = w.front().c[0].var_count();
  Jet2 out(n);
  for (const auto& [mono, coef] : p.terms()) {
    Jet2 t(n);
    t.c[0] = QPoly::constant(n, coef);
    for (std::size_t v = 0; v < mono.size(); ++v) {
      for (int k = 0; k < mono[v]; ++k) t = t * w[v];
    }
    out = out + t;
  }
  return out;
}

/// One infinitesimal flow step w ↦ w + e·F(w), with e the parameter in `slot` (1 = s, 2 = t), scaled by sign.
inline std::vector<Jet2> flow(const std::vector<Jet2>& w, const QPolyMap& f, int slot, int sign) {
  std::vector<Jet2> out = w;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Jet2 fi = apply(f.components[i], w);
    Jet2 e(w.front().c[0].var_count());
    e.c[static_cast<std::size_t>(slot)] = QPoly::constant(e.c[0].var_count(), Rational(sign));
    out[i] = out[i] + e * fi;
  }
  return out;
}

/// st-coefficient of the group commutator: flow X by s, then Y by t, then X by −s, then Y by −t.
inline std::vector<QPoly> flow_commutator(const QPolyMap& x, const QPolyMap& y) {
  const std::size_t m = x.out_dim;
  std::vector<Jet2> w;
  for (std::size_t i = 0; i < m; ++i) {
    Jet2 j(m);
    j.c[0] = QPoly::variable(m, i, Rational(1));
    w.push_back(std::move(j));
  }
  w = flow(w, x, 1, 1);
  w = flow(w, y, 2, 1);
  w = flow(w, x, 1, -1);
  w = flow(w, y, 2, -1);
  std::vector<QPoly> out;
  for (const auto& j : w) out.push_back(j.c[3]);
  return out;
}

/// A (1,1)-form: an m×m matrix field K(x), acting as v ↦ K(x)v.
using Matrix = std::vector<std::vector<QPoly>>;

/// Applies K(at) to the vector vec, with K's m variables substituted by `at`.
inline std::vector<QPoly> act(const Matrix& k, const std::vector<QPoly>& at, const std::vector<QPoly>& vec) {
  std::vector<QPoly> out;
  for (const auto& row : k) {
    QPoly s(vec.front().var_count());
    for (std::size_t j = 0; j < row.size(); ++j) s += substitute(row[j], at) * vec[j];
    out.push_back(std::move(s));
  }
  return out;
}

/// Directional derivative (DK(at)[dir]) applied to vec.
inline std::vector<QPoly> dact(const Matrix& k, const std::vector<QPoly>& at, const std::vector<QPoly>& dir,
                               const std::vector<QPoly>& vec) {
  std::vector<QPoly> out;
  for (const auto& row : k) {
    QPoly s(vec.front().var_count());
    for (std::size_t j = 0; j < row.size(); ++j) {
      for (std::size_t l = 0; l < dir.size(); ++l) s += substitute(d(row[j], l), at) * dir[l] * vec[j];
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Cube coordinates a_S^j of arity p as polynomials in kernel_vars(p, m) variables.
inline std::vector<QPoly> cube_coord(int p, int m, std::uint32_t mask) {
  const std::size_t n = fnlab::kernel_vars(p, m);
  std::vector<QPoly> out;
  for (int j = 0; j < m; ++j) out.push_back(QPoly::variable(n, fnlab::kernel_var(mask, j, m), Rational(1)));
  return out;
}

inline std::vector<QPoly> add(std::vector<QPoly> a, const std::vector<QPoly>& b, int sign = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i] * Rational(sign);
  return a;
}

/// Principal kernel γ ↦ K(γ_∅)γ_1 of a (1,1)-form.
inline QPolyMap one_one_kernel(const Matrix& k) {
  const int m = static_cast<int>(k.size());
  return QPolyMap(fnlab::kernel_vars(1, m), act(k, cube_coord(1, m, 0), cube_coord(1, m, 1)));
}

/// Hand expansion of the corner strong difference for (1,1)-forms K, H:
/// DK[Hγ2]γ1 + K DH[γ1]γ2 + KHγ12 − DH[Kγ1]γ2 − H DK[γ2]γ1 − HKγ12, with all fields at γ_∅.
inline QPolyMap l1_one_one(const Matrix& k, const Matrix& h) {
  const int m = static_cast<int>(k.size());
  auto g0 = cube_coord(2, m, 0), g1 = cube_coord(2, m, 1), g2 = cube_coord(2, m, 2), g12 = cube_coord(2, m, 3);
  auto r = dact(k, g0, act(h, g0, g2), g1);
  r = add(r, act(k, g0, dact(h, g0, g1, g2)));
  r = add(r, act(k, g0, act(h, g0, g12)));
  r = add(r, dact(h, g0, act(k, g0, g1), g2), -1);
  r = add(r, act(h, g0, dact(k, g0, g2, g1)), -1);
  r = add(r, act(h, g0, act(k, g0, g12)), -1);
  return QPolyMap(fnlab::kernel_vars(2, m), std::move(r));
}

/// Classical Frölicher–Nijenhuis bracket of two (1,1)-forms evaluated on the
/// constant fields u = γ1, v = γ2 at x = γ_∅:
/// [K,H](u,v) = [Ku,Hv] − [Kv,Hu] − H([Ku,v] − [Kv,u]) − K([u,Hv] − [v,Hu]),
/// where [·,·] is the derivation commutator and [u,v] = 0.
inline QPolyMap fn_one_one(const Matrix& k, const Matrix& h) {
  const int m = static_cast<int>(k.size());
  const std::size_t n = fnlab::kernel_vars(2, m);
  // Vector fields over x = (x_0..x_{m-1}) with parameters u, v; derivatives act on x only.
  const std::size_t nf = 3 * static_cast<std::size_t>(m);
  std::vector<QPoly> x, u, v;
  for (int j = 0; j < m; ++j) {
    x.push_back(QPoly::variable(nf, static_cast<std::size_t>(j), Rational(1)));
    u.push_back(QPoly::variable(nf, static_cast<std::size_t>(m + j), Rational(1)));
    v.push_back(QPoly::variable(nf, static_cast<std::size_t>(2 * m + j), Rational(1)));
  }
  const auto mm = static_cast<std::size_t>(m);
  auto br = [&](const std::vector<QPoly>& a, const std::vector<QPoly>& b) { return lie_bracket(a, b, mm); };
  auto ku = act(k, x, u), kv = act(k, x, v), hu = act(h, x, u), hv = act(h, x, v);
  auto r = add(br(ku, hv), br(kv, hu), -1);
  r = add(r, act(h, x, add(br(ku, v), br(kv, u), -1)), -1);
  r = add(r, act(k, x, add(br(u, hv), br(v, hu), -1)), -1);
  std::vector<QPoly> args;
  for (std::uint32_t mask : {0U, 1U, 2U}) {
    for (int j = 0; j < m; ++j) args.push_back(QPoly::variable(n, fnlab::kernel_var(mask, j, m), Rational(1)));
  }
  std::vector<QPoly> out;
  for (const auto& c : r) out.push_back(substitute(c, args));
  return QPolyMap(n, std::move(out));
}

}  // namespace oracle

#include "tvforms.hpp"

#include <algorithm>
#include <numeric>

#include "microcalc.hpp"

namespace fnlab {

QPolyMap projection_kernel(int p, int m) {
  const std::size_t n = kernel_vars(p, m);
  QPolyMap f(n, static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) f.components[static_cast<std::size_t>(j)] = QPoly::variable(n, kernel_var(0, j, m), Rational(1));
  return f;
}

std::string class_name(FormClass c) {
  switch (c) {
    case FormClass::Omega0: return "omega0";
    case FormClass::Omega1: return "omega1";
    case FormClass::Omega12: return "omega12";
    case FormClass::Omega13: return "omega13";
    case FormClass::Omega123: return "omega123";
  }
  return "omega0";
}

FormClass parse_class(const std::string& s) {
  for (auto c : {FormClass::Omega0, FormClass::Omega1, FormClass::Omega12, FormClass::Omega13, FormClass::Omega123}) {
    if (class_name(c) == s) return c;
  }
  throw ValidationError("unknown form class '" + s + "'");
}

FormElem::FormElem(int p, int k, int m, std::vector<QPolyMap> coeffs, FormClass tag, Encoding enc)
    : p_(p), k_(k), m_(m), coeffs_(std::move(coeffs)), tag_(tag), enc_(enc) {
  if (p < 0 || k < 0 || m < 1 || p > 12 || k > 8) throw ValidationError("form dimensions out of range");
  if (coeffs_.size() != (std::size_t{1} << k)) {
    throw ValidationError("expected " + std::to_string(1 << k) + " expansion coefficients, got " +
                          std::to_string(coeffs_.size()));
  }
  for (const auto& c : coeffs_) {
    if (c.in_dim != kernel_vars(p, m) || c.out_dim != static_cast<std::size_t>(m)) {
      throw ValidationError("kernel must map " + std::to_string(kernel_vars(p, m)) + " variables to " +
                            std::to_string(m) + " components");
    }
  }
}

FormElem FormElem::tangent(int p, int m, QPolyMap principal, FormClass tag) {
  return FormElem(p, 1, m, {projection_kernel(p, m), std::move(principal)}, tag);
}

const QPolyMap& FormElem::principal() const {
  if (k_ != 1) throw PreconditionError("principal part requires a first-order expansion");
  return coeffs_[1];
}

FormElem FormElem::with_tag(FormClass c) const {
  FormElem r = *this;
  r.tag_ = c;
  return r;
}

FormElem transpose_views(const FormElem& x) {
  FormElem r = x;
  r.enc_ = x.enc_ == Encoding::Under ? Encoding::Over : Encoding::Under;
  return r;
}

namespace {

void require_tangent_pair(const FormElem& x, const FormElem& y) {
  if (x.expansion() != 1 || y.expansion() != 1 || x.arity() != y.arity() || x.dim() != y.dim()) {
    throw PreconditionError("tangent addition needs two first-order forms of equal arity and dimension");
  }
  if (!(x.coeff(0) == y.coeff(0))) throw PreconditionError("tangent addition needs a common base");
}

QPolyMap add_maps(const QPolyMap& a, const QPolyMap& b) {
  QPolyMap r = a;
  for (std::size_t i = 0; i < r.components.size(); ++i) r.components[i] += b.components[i];
  return r;
}

QPolyMap scale_map(QPolyMap a, const Rational& c) {
  for (auto& comp : a.components) comp *= c;
  return a;
}

}  // namespace

FormElem add_tangent(const FormElem& x, const FormElem& y) {
  require_tangent_pair(x, y);
  return FormElem(x.arity(), 1, x.dim(), {x.coeff(0), add_maps(x.coeff(1), y.coeff(1))}, x.tag());
}

FormElem scale_tangent(const FormElem& x, const Rational& c) {
  if (x.expansion() != 1) throw PreconditionError("scaling needs a first-order form");
  return FormElem(x.arity(), 1, x.dim(), {x.coeff(0), scale_map(x.coeff(1), c)}, x.tag());
}

bool principal_is_zero(const FormElem& x) { return x.principal().is_zero(); }

// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<int> sorted = img_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i + 1)) throw ValidationError("not a permutation of 1..n");
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

std::vector<Permutation> Permutation::all(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

int Permutation::sign() const {
  int s = 1;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    for (std::size_t j = i + 1; j < img_.size(); ++j) {
      if (img_[i] > img_[j]) s = -s;
    }
  }
  return s;
}

Permutation Permutation::inverse() const {
  std::vector<int> v(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) v[static_cast<std::size_t>(img_[i] - 1)] = static_cast<int>(i + 1);
  return Permutation(std::move(v));
}

std::uint32_t Permutation::apply_mask(std::uint32_t mask) const {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (mask & (1U << i)) out |= 1U << (img_[i] - 1);
  }
  return out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw PreconditionError("composing permutations of different sizes");
  std::vector<int> v(b.img_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a(b.img_[i]);
  return Permutation(std::move(v));
}

Permutation shuffle_sigma(int p, int q) {
  std::vector<int> v;
  for (int i = 1; i <= p; ++i) v.push_back(q + i);
  for (int j = 1; j <= q; ++j) v.push_back(j);
  return Permutation(std::move(v));
}

QPolyMap perm_act(const QPolyMap& kernel, int p, int m, const Permutation& sigma) {
  if (sigma.size() != p) throw PreconditionError("permutation size differs from arity");
  const std::size_t n = kernel_vars(p, m);
  std::vector<std::size_t> map(n);
  for (std::uint32_t s = 0; s < (1U << p); ++s) {
    for (int j = 0; j < m; ++j) map[kernel_var(s, j, m)] = kernel_var(sigma.apply_mask(s), j, m);
  }
  QPolyMap r(n, static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < r.components.size(); ++i) r.components[i] = kernel.components[i].rename(map, n);
  return r;
}

FormElem perm_act(const FormElem& x, const Permutation& sigma) {
  std::vector<QPolyMap> c;
  for (const auto& k : x.coeffs()) c.push_back(perm_act(k, x.arity(), x.dim(), sigma));
  return FormElem(x.arity(), x.expansion(), x.dim(), std::move(c), x.tag(), x.encoding());
}

// ---------------------------------------------------------------------------

namespace {

std::string multilinear_failure(const FormElem& x) {
  const int p = x.arity();
  const int m = x.dim();
  if (p == 0) return "";
  const std::size_t n = kernel_vars(p, m);
  const std::size_t total = n + static_cast<std::size_t>(p);
  const QPoly one = QPoly::constant(total, Rational(1));
  std::vector<QPoly> args;
  for (std::uint32_t s = 0; s < (1U << p); ++s) {
    for (int j = 0; j < m; ++j) {
      QPoly a = QPoly::variable(total, kernel_var(s, j, m), Rational(1));
      for (int i = 0; i < p; ++i) {
        if (s & (1U << i)) a *= QPoly::variable(total, n + static_cast<std::size_t>(i), Rational(1));
      }
      args.push_back(std::move(a));
    }
  }
  QPoly scale = one;
  for (int i = 0; i < p; ++i) scale *= QPoly::variable(total, n + static_cast<std::size_t>(i), Rational(1));
  std::vector<std::size_t> embed(n);
  std::iota(embed.begin(), embed.end(), std::size_t{0});
  auto lhs = eval<QPoly>(x.principal(), args, one);
  for (std::size_t c = 0; c < lhs.size(); ++c) {
    if (!(lhs[c] == scale * x.principal().components[c].rename(embed, total))) {
      return "omega12: principal kernel is not of degree one in each axis (component " + std::to_string(c + 1) + ")";
    }
  }
  return "";
}

std::string alternating_failure(const FormElem& x) {
  for (const auto& sigma : Permutation::all(x.arity())) {
    QPolyMap moved = perm_act(x.principal(), x.arity(), x.dim(), sigma);
    if (!(moved == scale_map(x.principal(), Rational(sigma.sign())))) {
      std::string s;
      for (int v : sigma.images()) s += std::to_string(v);
      return "omega13: principal kernel is not alternating under permutation " + s;
    }
  }
  return "";
}

}  // namespace

std::string class_failure(const FormElem& x, FormClass c) {
  if (c == FormClass::Omega0) return "";
  if (x.expansion() != 1) return "omega1: form is not a first-order expansion";
  if (!(x.coeff(0) == projection_kernel(x.arity(), x.dim()))) return "omega1: base kernel is not the projection";
  if (c == FormClass::Omega12 || c == FormClass::Omega123) {
    if (auto f = multilinear_failure(x); !f.empty()) return f;
  }
  if (c == FormClass::Omega13 || c == FormClass::Omega123) {
    if (auto f = alternating_failure(x); !f.empty()) return f;
  }
  return "";
}

bool is_omega1(const FormElem& x) { return class_failure(x, FormClass::Omega1).empty(); }
bool is_omega12(const FormElem& x) { return class_failure(x, FormClass::Omega12).empty(); }
bool is_omega13(const FormElem& x) { return class_failure(x, FormClass::Omega13).empty(); }
bool is_omega123(const FormElem& x) { return class_failure(x, FormClass::Omega123).empty(); }

// ---------------------------------------------------------------------------

namespace {

// outer ∘ T^{cube}(inner) on a total cube of p_outer + p_inner axes; the outer
// kernel reads axes starting at outer_off, the inner one axes starting at inner_off.
std::vector<QPolyMap> conv_core(const std::vector<QPolyMap>& outer, int p_outer, int outer_off,
                                const std::vector<QPolyMap>& inner, int p_inner, int inner_off, int k, int m) {
  const int total_axes = p_outer + p_inner;
  const std::size_t nv = kernel_vars(total_axes, m);
  const std::size_t mm = static_cast<std::size_t>(m);
  const QPoly zero(nv);
  const QPoly one = QPoly::constant(nv, Rational(1));
  auto big = make_algebra(cube(k + p_outer));
  auto small = make_algebra(cube(k));
  const std::uint32_t kmask_count = 1U << k;

  auto monomial = [&](const WeilAlgebraPtr& alg, std::uint32_t mask) {
    WeilPoly e(alg, zero);
    e[static_cast<std::size_t>(alg->index_of_mask(mask))] = one;
    return e;
  };

  const WeilPoly big_unit = WeilPoly::scalar(big, zero, one);
  std::vector<WeilPoly> args;
  args.reserve(kernel_vars(p_inner, m));
  for (std::uint32_t s = 0; s < (1U << p_inner); ++s) {
    for (int j = 0; j < m; ++j) {
      WeilPoly a(big, zero);
      for (std::uint32_t t = 0; t < (1U << p_outer); ++t) {
        std::uint32_t global = (t << outer_off) | (s << inner_off);
        a[static_cast<std::size_t>(big->index_of_mask(t << k))] =
            QPoly::variable(nv, kernel_var(global, j, m), Rational(1));
      }
      args.push_back(std::move(a));
    }
  }
  std::vector<WeilPoly> inner_val(mm, WeilPoly(big, zero));
  for (std::uint32_t u = 0; u < kmask_count; ++u) {
    if (inner[u].is_zero()) continue;
    auto v = eval<WeilPoly>(inner[u], args, big_unit);
    WeilPoly du = monomial(big, u);
    for (std::size_t j = 0; j < mm; ++j) inner_val[j] += du * v[j];
  }

  const WeilPoly small_unit = WeilPoly::scalar(small, zero, one);
  std::vector<WeilPoly> cargs;
  for (std::uint32_t t = 0; t < (1U << p_outer); ++t) {
    for (std::size_t j = 0; j < mm; ++j) {
      WeilPoly c(small, zero);
      for (std::uint32_t u = 0; u < kmask_count; ++u) {
        c[static_cast<std::size_t>(small->index_of_mask(u))] =
            inner_val[j][static_cast<std::size_t>(big->index_of_mask(u | (t << k)))];
      }
      cargs.push_back(std::move(c));
    }
  }
  std::vector<WeilPoly> outer_val(mm, WeilPoly(small, zero));
  for (std::uint32_t u = 0; u < kmask_count; ++u) {
    if (outer[u].is_zero()) continue;
    auto v = eval<WeilPoly>(outer[u], cargs, small_unit);
    WeilPoly du = monomial(small, u);
    for (std::size_t j = 0; j < mm; ++j) outer_val[j] += du * v[j];
  }

  std::vector<QPolyMap> out(kmask_count, QPolyMap(nv, mm));
  for (std::uint32_t u = 0; u < kmask_count; ++u) {
    for (std::size_t j = 0; j < mm; ++j) {
      out[u].components[j] = outer_val[j][static_cast<std::size_t>(small->index_of_mask(u))];
    }
  }
  return out;
}

void check_kernel(const QPolyMap& f, int p, int m, const char* which) {
  if (f.in_dim != kernel_vars(p, m) || f.out_dim != static_cast<std::size_t>(m)) {
    throw PreconditionError(std::string(which) + " kernel has the wrong shape for arity " + std::to_string(p));
  }
}

std::vector<QPolyMap> extend(const FormElem& x, int shift, int k) {
  std::vector<QPolyMap> out(std::size_t{1} << k, QPolyMap(kernel_vars(x.arity(), x.dim()), static_cast<std::size_t>(x.dim())));
  for (std::uint32_t u = 0; u < (1U << x.expansion()); ++u) out[u << shift] = x.coeff(u);
  return out;
}

void check_pair(const FormElem& x, const FormElem& y) {
  if (x.dim() != y.dim()) throw PreconditionError("forms on different model dimensions");
}

}  // namespace

QPolyMap conv_under(const QPolyMap& f, int p, const QPolyMap& g, int q, int m) {
  check_kernel(f, p, m, "outer");
  check_kernel(g, q, m, "inner");
  return conv_core({f}, p, 0, {g}, q, p, 0, m)[0];
}

QPolyMap conv_over(const QPolyMap& f, int p, const QPolyMap& g, int q, int m) {
  check_kernel(f, p, m, "first");
  check_kernel(g, q, m, "second");
  return conv_core({g}, q, p, {f}, p, 0, 0, m)[0];
}

FormElem prod_under(const FormElem& x, const FormElem& y) {
  check_pair(x, y);
  const int k = x.expansion() + y.expansion();
  auto c = conv_core(extend(x, 0, k), x.arity(), 0, extend(y, x.expansion(), k), y.arity(), x.arity(), k, x.dim());
  return FormElem(x.arity() + y.arity(), k, x.dim(), std::move(c));
}

FormElem prod_over(const FormElem& x, const FormElem& y) {
  check_pair(x, y);
  const int k = x.expansion() + y.expansion();
  auto c = conv_core(extend(y, x.expansion(), k), y.arity(), x.arity(), extend(x, 0, k), x.arity(), 0, k, x.dim());
  return FormElem(x.arity() + y.arity(), k, x.dim(), std::move(c));
}

// ---------------------------------------------------------------------------

namespace {

void require_class(const FormElem& x, FormClass c, const char* side) {
  if (auto f = class_failure(x, c); !f.empty()) throw PreconditionError(std::string(side) + " operand fails " + f);
}

}  // namespace

FormElem bracket_L1(const FormElem& x, const FormElem& y) {
  require_class(x, FormClass::Omega1, "left");
  require_class(y, FormClass::Omega1, "right");
  check_pair(x, y);
  FormElem a = prod_under(x, y);
  FormElem b = prod_over(x, y);
  for (std::uint32_t u : {0U, 1U, 2U}) {
    if (!(a.coeff(u) == b.coeff(u))) throw InvariantViolation("the two products disagree below the corner");
  }
  const int p = a.arity();
  const int m = a.dim();
  const std::size_t nv = kernel_vars(p, m);
  auto d2 = make_algebra(cube(2));
  QPolyMap principal(nv, static_cast<std::size_t>(m));
  for (std::size_t j = 0; j < static_cast<std::size_t>(m); ++j) {
    WeilPoly ga(d2, QPoly(nv));
    WeilPoly gb(d2, QPoly(nv));
    for (std::uint32_t u = 0; u < 4; ++u) {
      auto idx = static_cast<std::size_t>(d2->index_of_mask(u));
      ga[idx] = a.coeff(u).components[j];
      gb[idx] = b.coeff(u).components[j];
    }
    WeilPoly v = glue_and_read<QPoly>(SquareKind::Corner, ga, gb);
    principal.components[j] = v[static_cast<std::size_t>(v.algebra()->index_of_mask(1))];
  }
  return FormElem::tangent(p, m, std::move(principal), FormClass::Omega1);
}

FormElem bracket_L12(const FormElem& x, const FormElem& y) {
  require_class(x, FormClass::Omega12, "left");
  require_class(y, FormClass::Omega12, "right");
  FormElem r = bracket_L1(x, y).with_tag(FormClass::Omega12);
  if (auto f = class_failure(r, FormClass::Omega12); !f.empty()) throw InvariantViolation("bracket leaves the class: " + f);
  return r;
}

FormElem antisymmetrize(const FormElem& x) {
  if (x.expansion() != 1) throw PreconditionError("antisymmetrization needs a first-order form");
  QPolyMap acc(x.principal().in_dim, x.principal().out_dim);
  for (const auto& sigma : Permutation::all(x.arity())) {
    acc = add_maps(acc, scale_map(perm_act(x.principal(), x.arity(), x.dim(), sigma), Rational(sigma.sign())));
  }
  return FormElem(x.arity(), 1, x.dim(), {x.coeff(0), std::move(acc)}, x.tag());
}

FormElem antisymmetrize_scaled(const FormElem& x, int p, int q) {
  if (p < 0 || q < 0 || p + q != x.arity()) throw PreconditionError("arity split does not match the form");
  auto fact = [](int n) {
    mpz_class r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
  };
  Rational c(mpz_class(1), fact(p) * fact(q));
  return scale_tangent(antisymmetrize(x), c);
}

FormElem bracket_FN13(const FormElem& x, const FormElem& y) {
  require_class(x, FormClass::Omega13, "left");
  require_class(y, FormClass::Omega13, "right");
  return antisymmetrize_scaled(bracket_L1(x, y), x.arity(), y.arity()).with_tag(FormClass::Omega13);
}

FormElem bracket_FN123(const FormElem& x, const FormElem& y) {
  require_class(x, FormClass::Omega123, "left");
  require_class(y, FormClass::Omega123, "right");
  FormElem r = antisymmetrize_scaled(bracket_L1(x, y), x.arity(), y.arity()).with_tag(FormClass::Omega123);
  if (auto f = class_failure(r, FormClass::Omega123); !f.empty()) throw InvariantViolation("bracket leaves the class: " + f);
  return r;
}

}  // namespace fnlab

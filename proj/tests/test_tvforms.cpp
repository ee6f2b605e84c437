#include <doctest.h>

#include "oracles.hpp"
#include "samples.hpp"
#include "tvforms.hpp"

using namespace fnlab;

namespace {

QPoly var(int p, int m, std::uint32_t mask, int j) {
  return QPoly::variable(kernel_vars(p, m), kernel_var(mask, j, m), Rational(1));
}

FormElem form(int p, int m, std::vector<QPoly> principal, FormClass tag = FormClass::Omega1) {
  return FormElem::tangent(p, m, QPolyMap(kernel_vars(p, m), std::move(principal)), tag);
}

oracle::Matrix random_matrix(Rng& rng, int m) {
  oracle::Matrix k(static_cast<std::size_t>(m));
  for (auto& row : k) {
    for (int j = 0; j < m; ++j) row.push_back(rng.poly(static_cast<std::size_t>(m), 2, 3));
  }
  return k;
}

QPolyMap negate(QPolyMap f) {
  for (auto& c : f.components) c = -c;
  return f;
}

}  // namespace

TEST_CASE("block shuffles") {
  auto s11 = shuffle_sigma(1, 1);
  CHECK(s11.images() == std::vector<int>{2, 1});
  CHECK(s11.sign() == -1);
  auto s21 = shuffle_sigma(2, 1);
  CHECK(s21.images() == std::vector<int>{2, 3, 1});
  CHECK(s21.sign() == 1);
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; q <= 3; ++q) CHECK(shuffle_sigma(p, q).sign() == ((p * q) % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("permutations compose as functions") {
  Permutation a({2, 3, 1}), b({2, 1, 3});
  auto ab = a * b;
  for (int i = 1; i <= 3; ++i) CHECK(ab(i) == a(b(i)));
  CHECK((a * a.inverse()).images() == Permutation::identity(3).images());
  CHECK(Permutation::all(3).size() == 6);
}

TEST_CASE("relabelling a form") {
  auto x = form(2, 1, {var(2, 1, 1, 0)});
  auto swap = Permutation({2, 1});
  CHECK(perm_act(x, Permutation::identity(2)) == x);
  CHECK(perm_act(x, swap).principal() == QPolyMap(kernel_vars(2, 1), {var(2, 1, 2, 0)}));
  CHECK(perm_act(perm_act(x, swap), swap) == x);
}

TEST_CASE("class predicates") {
  SUBCASE("omega1") {
    CHECK(is_omega1(form(1, 1, {var(1, 1, 1, 0) * var(1, 1, 1, 0)})));
    auto two_pi = FormElem(1, 1, 1, {QPolyMap(2, {var(1, 1, 0, 0) * Rational(2)}), QPolyMap(2, 1)});
    CHECK_FALSE(is_omega1(two_pi));
    auto field = FormElem(0, 1, 1, {QPolyMap::identity(1), QPolyMap(1, {QPoly::variable(1, 0, Rational(1))})});
    CHECK(is_omega1(field));
  }
  SUBCASE("omega12") {
    CHECK(is_omega12(form(1, 1, {var(1, 1, 1, 0)})));
    CHECK_FALSE(is_omega12(form(1, 1, {var(1, 1, 1, 0) * var(1, 1, 1, 0)})));
    CHECK(is_omega12(form(2, 1, {var(2, 1, 3, 0)})));
    CHECK_FALSE(is_omega12(form(2, 1, {var(2, 1, 1, 0)})));
  }
  SUBCASE("omega13") {
    CHECK(is_omega13(form(1, 1, {var(1, 1, 1, 0) * var(1, 1, 0, 0)})));
    auto c = var(2, 1, 0, 0) * var(2, 1, 0, 0) + QPoly::constant(kernel_vars(2, 1), Rational(3));
    CHECK(is_omega13(form(2, 1, {var(2, 1, 1, 0) * c - var(2, 1, 2, 0) * c})));
    CHECK_FALSE(is_omega13(form(2, 1, {var(2, 1, 1, 0)})));
  }
  CHECK(class_failure(form(1, 1, {var(1, 1, 1, 0) * var(1, 1, 1, 0)}), FormClass::Omega12).rfind("omega12", 0) == 0);
}

TEST_CASE("convolution at arity zero is composition") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = rng.poly_map(2, 2, 2, 3);
    auto g = rng.poly_map(2, 2, 2, 3);
    CHECK(conv_under(f, 0, g, 0, 2) == compose(f, g));
    CHECK(conv_over(f, 0, g, 0, 2) == compose(g, f));
  }
  auto f = random_kernel(rng, 1, 2, {});
  CHECK(conv_under(f, 1, QPolyMap::identity(2), 0, 2) == f);
}

TEST_CASE("shuffle relation for convolutions") {
  Rng rng(32);
  for (int p = 0; p <= 2; ++p) {
    for (int q = 0; q <= 2; ++q) {
      auto f = random_kernel(rng, p, 1, {});
      auto g = random_kernel(rng, q, 1, {});
      CHECK(perm_act(conv_under(f, p, g, q, 1), p + q, 1, shuffle_sigma(p, q)) == conv_over(g, q, f, p, 1));
    }
  }
}

TEST_CASE("transposition relabels without changing data") {
  Rng rng(33);
  auto x = random_form(rng, FormClass::Omega1, 2, 2, {});
  CHECK(transpose_views(transpose_views(x)) == x);
  CHECK(transpose_views(x).same_data(x));
  CHECK(transpose_views(x).encoding() != x.encoding());
}

TEST_CASE("antisymmetrizer") {
  auto sym = form(2, 1, {var(2, 1, 1, 0) * var(2, 1, 2, 0)});
  CHECK(principal_is_zero(antisymmetrize(sym)));
  auto one_sided = form(2, 1, {var(2, 1, 1, 0) * var(2, 1, 0, 0)});
  auto expected = var(2, 1, 1, 0) * var(2, 1, 0, 0) - var(2, 1, 2, 0) * var(2, 1, 0, 0);
  CHECK(antisymmetrize(one_sided).principal() == QPolyMap(kernel_vars(2, 1), {expected}));
  auto arity1 = form(1, 1, {var(1, 1, 1, 0) * var(1, 1, 0, 0)});
  CHECK(antisymmetrize(arity1).principal() == arity1.principal());
}

TEST_CASE("vector field brackets against the classical bracket") {
  Rng rng(34);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 1 + trial % 2;
    auto x = random_vector_field(rng, m, {});
    auto y = random_vector_field(rng, m, {});
    auto b = bracket_L1(FormElem::tangent(0, m, x), FormElem::tangent(0, m, y));
    auto classical = oracle::lie_bracket(x.components, y.components, static_cast<std::size_t>(m));
    CHECK(b.principal() == negate(QPolyMap(static_cast<std::size_t>(m), classical)));
  }
  const QPoly t = QPoly::variable(1, 0, Rational(1));
  auto b = bracket_L1(FormElem::tangent(0, 1, QPolyMap(1, {t})),
                      FormElem::tangent(0, 1, QPolyMap(1, {QPoly::constant(1, Rational(1))})));
  CHECK(b.principal() == QPolyMap(1, {QPoly::constant(1, Rational(1))}));
}

TEST_CASE("L1 bracket of (1,1)-forms against the hand expansion") {
  Rng rng(35);
  for (int trial = 0; trial < 15; ++trial) {
    const int m = 1 + trial % 2;
    auto k = random_matrix(rng, m);
    auto h = random_matrix(rng, m);
    auto b = bracket_L1(FormElem::tangent(1, m, oracle::one_one_kernel(k)),
                        FormElem::tangent(1, m, oracle::one_one_kernel(h)));
    CHECK(b.principal() == oracle::l1_one_one(k, h));
  }
}

TEST_CASE("FN bracket of (1,1)-forms against the classical formula") {
  Rng rng(36);
  for (int trial = 0; trial < 15; ++trial) {
    const int m = 1 + trial % 2;
    auto k = random_matrix(rng, m);
    auto h = random_matrix(rng, m);
    auto kf = FormElem::tangent(1, m, oracle::one_one_kernel(k), FormClass::Omega13);
    auto hf = FormElem::tangent(1, m, oracle::one_one_kernel(h), FormClass::Omega13);
    CHECK(bracket_FN13(kf, hf).principal() == negate(oracle::fn_one_one(k, h)));
  }
}

TEST_CASE("brackets of special inputs") {
  auto id = FormElem::tangent(1, 1, QPolyMap(2, {var(1, 1, 1, 0)}), FormClass::Omega123);
  CHECK(is_omega12(bracket_L12(id, id)));
  CHECK(is_omega123(bracket_FN123(id, id)));
  CHECK(principal_is_zero(bracket_FN123(id, id)));
  auto zero = FormElem::tangent(1, 1, QPolyMap(2, 1), FormClass::Omega123);
  CHECK(principal_is_zero(bracket_L1(zero, id)));
  CHECK(principal_is_zero(bracket_FN123(id, zero)));

  Rng rng(37);
  auto x = random_form(rng, FormClass::Omega1, 0, 2, {});
  auto y = random_form(rng, FormClass::Omega1, 0, 2, {});
  auto l1 = bracket_L1(x, y);
  CHECK(bracket_L12(x, y).same_data(l1));
  CHECK(bracket_FN13(x, y).same_data(l1));
  CHECK(bracket_FN123(x, y).same_data(l1));

  auto field = FormElem::tangent(0, 1, QPolyMap(1, {QPoly::variable(1, 0, Rational(1))}), FormClass::Omega123);
  auto mixed = bracket_FN123(field, id);
  CHECK(mixed.arity() == 1);
  CHECK(is_omega123(mixed));
}

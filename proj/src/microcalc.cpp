#include "microcalc.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace fnlab {

MicroPoint::MicroPoint(WeilAlgebraPtr alg, std::vector<WeilElement> coords)
    : alg_(std::move(alg)), coords_(std::move(coords)) {
  for (const auto& c : coords_) {
    if (!(*c.algebra() == *alg_)) throw ValidationError("coordinate lives in a different algebra");
  }
}

MicroPoint MicroPoint::from_coefficients(WeilAlgebraPtr alg, const std::vector<std::vector<Rational>>& coeffs) {
  if (coeffs.size() != alg->dim()) {
    throw ValidationError("expected " + std::to_string(alg->dim()) + " coefficient vectors, got " +
                          std::to_string(coeffs.size()));
  }
  const std::size_t m = coeffs.empty() ? 0 : coeffs[0].size();
  std::vector<WeilElement> coords(m, weil_zero(alg));
  for (std::size_t b = 0; b < coeffs.size(); ++b) {
    if (coeffs[b].size() != m) throw ValidationError("coefficient vectors have different lengths");
    for (std::size_t j = 0; j < m; ++j) coords[j][b] = coeffs[b][j];
  }
  return MicroPoint(std::move(alg), std::move(coords));
}

std::vector<Rational> MicroPoint::coefficient(std::size_t basis) const {
  std::vector<Rational> v;
  v.reserve(coords_.size());
  for (const auto& c : coords_) v.push_back(c[basis]);
  return v;
}

std::vector<Rational> MicroPoint::at_mask(std::uint32_t mask) const {
  int idx = alg_->index_of_mask(mask);
  if (idx < 0) return std::vector<Rational>(coords_.size(), Rational(0));
  return coefficient(static_cast<std::size_t>(idx));
}

MicroPoint restrict(const MicroPoint& x, const InfMorphism& f) {
  std::vector<WeilElement> coords;
  coords.reserve(x.coords().size());
  for (const auto& c : x.coords()) coords.push_back(f.pull(c));
  return MicroPoint(f.source_algebra(), std::move(coords));
}

std::string to_string(const MicroPoint& x) {
  std::ostringstream os;
  os << x.object().name() << " (";
  for (int j = 0; j < x.m(); ++j) os << (j ? "; " : "") << to_string(x.coord(j));
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> mono(int n, std::initializer_list<int> gens) {
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  for (int g : gens) e[static_cast<std::size_t>(g - 1)] += 1;
  return e;
}

using Terms = std::vector<std::vector<InfMorphism::Term>>;

InfMorphism::Term term(int n, std::initializer_list<int> gens) { return {Rational(1), mono(n, gens)}; }

PullbackSquare make_corner() {
  auto apex = make_object(3, {{1, 3}, {2, 3}});
  auto leg = cube(2);
  auto shared = first_order(2);
  InfMorphism upper = InfMorphism::from_terms(leg, apex, Terms{{term(2, {1})}, {term(2, {2})}, {term(2, {1, 2})}});
  InfMorphism lower = InfMorphism::from_terms(leg, apex, Terms{{term(2, {1})}, {term(2, {2})}, {}});
  InfMorphism shared_in = InfMorphism::from_terms(shared, leg, Terms{{term(2, {1})}, {term(2, {2})}});
  InfMorphism readout = InfMorphism::from_terms(cube(1), apex, Terms{{}, {}, {term(1, {1})}});
  return {SquareKind::Corner, apex, leg, shared, upper, lower, shared_in, readout};
}

// Generators i < j span the face whose product is glued in as the fourth generator.
PullbackSquare make_axis(SquareKind kind, int axis) {
  int i = axis == 1 ? 2 : 1;
  int j = axis == 3 ? 2 : 3;
  auto apex = make_object(4, {{i, 4}, {j, 4}});
  auto leg = cube(3);
  auto shared = make_object(3, {{i, j}});
  Terms up{{term(3, {1})}, {term(3, {2})}, {term(3, {3})}, {term(3, {i, j})}};
  Terms low{{term(3, {1})}, {term(3, {2})}, {term(3, {3})}, {}};
  Terms in{{term(3, {1})}, {term(3, {2})}, {term(3, {3})}};
  Terms read(4);
  read[static_cast<std::size_t>(axis - 1)] = {term(2, {1})};
  read[3] = {term(2, {2})};
  return {kind,
          apex,
          leg,
          shared,
          InfMorphism::from_terms(leg, apex, up),
          InfMorphism::from_terms(leg, apex, low),
          InfMorphism::from_terms(shared, leg, in),
          InfMorphism::from_terms(cube(2), apex, read)};
}

}  // namespace

const PullbackSquare& pullback_square(SquareKind kind) {
  static const std::array<PullbackSquare, 4> squares = {make_corner(), make_axis(SquareKind::Axis1, 1),
                                                        make_axis(SquareKind::Axis2, 2),
                                                        make_axis(SquareKind::Axis3, 3)};
  return squares[static_cast<std::size_t>(kind)];
}

namespace {

void check_same_shape(const MicroPoint& g1, const MicroPoint& g2, const PullbackSquare& sq) {
  if (!(g1.object() == sq.leg) || !(g2.object() == sq.leg)) {
    throw PreconditionError("expected two points on " + sq.leg.name() + ", got " + g1.object().name() + " and " +
                            g2.object().name());
  }
  if (g1.m() != g2.m()) throw PreconditionError("points have different model dimensions");
  for (int j = 0; j < g1.m(); ++j) {
    if (auto bad = pullback_mismatch(sq, g1.coord(j), g2.coord(j)); !bad.empty()) {
      throw PreconditionError("points do not agree on " + sq.shared.name() + ": " + bad + " of coordinate " +
                              std::to_string(j + 1) + " differs");
    }
  }
}

}  // namespace

MicroPoint amalgamate(const MicroPoint& g1, const MicroPoint& g2, SquareKind kind,
                      const std::vector<std::size_t>& order) {
  const auto& sq = pullback_square(kind);
  check_same_shape(g1, g2, sq);
  std::vector<WeilElement> coords;
  for (int j = 0; j < g1.m(); ++j) coords.push_back(solve_pullback(sq, g1.coord(j), g2.coord(j), order));
  return MicroPoint(sq.upper.target_algebra(), std::move(coords));
}

MicroPoint strong_diff(const MicroPoint& g1, const MicroPoint& g2) {
  return restrict(amalgamate(g1, g2, SquareKind::Corner), pullback_square(SquareKind::Corner).readout);
}

MicroPoint strong_diff_axis(const MicroPoint& g1, const MicroPoint& g2, int axis) {
  if (axis < 1 || axis > 3) throw ValidationError("axis must be 1, 2 or 3");
  auto kind = static_cast<SquareKind>(axis);
  return restrict(amalgamate(g1, g2, kind), pullback_square(kind).readout);
}

// ---------------------------------------------------------------------------

namespace {

Rational eval_poly(const QPoly& p, const std::vector<Rational>& x) {
  QPolyMap f(p.var_count(), std::vector<QPoly>{p});
  return eval(f, x)[0];
}

struct FacePair {
  const char* a;
  const char* b;
};

// For each axis: the two pairs of microcubes glued along that axis.
const std::array<std::array<FacePair, 2>, 3>& face_groups() {
  static const std::array<std::array<FacePair, 2>, 3> groups = {{
      {{{"123", "132"}, {"231", "321"}}},
      {{{"231", "213"}, {"312", "132"}}},
      {{{"312", "321"}, {"123", "213"}}},
  }};
  return groups;
}

}  // namespace

MicroPoint MicroField::at(const std::vector<Rational>& x) const {
  std::vector<WeilElement> out;
  for (const auto& c : coords) {
    WeilElement e = weil_zero(alg);
    for (std::size_t b = 0; b < c.size(); ++b) e[b] = eval_poly(c[b], x);
    out.push_back(std::move(e));
  }
  return MicroPoint(alg, std::move(out));
}

const std::array<std::string, 6>& TriangleConfig::labels() {
  static const std::array<std::string, 6> l = {"123", "132", "213", "231", "312", "321"};
  return l;
}

std::size_t TriangleConfig::index(const std::string& label) {
  const auto& l = labels();
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i] == label) return i;
  }
  throw ValidationError("unknown arrangement '" + label + "'");
}

TriangleConfig TriangleField::at(const std::vector<Rational>& x) const {
  TriangleConfig t;
  for (std::size_t i = 0; i < 6; ++i) t.xi[i] = xi[i].at(x);
  return t;
}

std::vector<std::string> triangle_violations(const TriangleConfig& t) {
  std::vector<std::string> out;
  const auto d3 = cube(3);
  for (std::size_t i = 0; i < 6; ++i) {
    if (!(t.xi[i].object() == d3)) out.push_back(TriangleConfig::labels()[i] + " is not a microcube");
    if (t.xi[i].m() != t.xi[0].m()) out.push_back(TriangleConfig::labels()[i] + " has a different dimension");
  }
  if (!out.empty()) return out;
  const auto& corner = pullback_square(SquareKind::Corner);
  for (int axis = 1; axis <= 3; ++axis) {
    const auto& sq = pullback_square(static_cast<SquareKind>(axis));
    bool faces_ok = true;
    for (const auto& pr : face_groups()[static_cast<std::size_t>(axis - 1)]) {
      for (int j = 0; j < t.xi[0].m(); ++j) {
        auto bad = pullback_mismatch(sq, t[pr.a].coord(j), t[pr.b].coord(j));
        if (!bad.empty()) {
          out.push_back(std::string(pr.a) + " and " + pr.b + " differ on " + sq.shared.name() + " at " + bad +
                        " of coordinate " + std::to_string(j + 1));
          faces_ok = false;
          break;
        }
      }
    }
    if (!faces_ok) continue;
    const auto& g = face_groups()[static_cast<std::size_t>(axis - 1)];
    MicroPoint s1 = strong_diff_axis(t[g[0].a], t[g[0].b], axis);
    MicroPoint s2 = strong_diff_axis(t[g[1].a], t[g[1].b], axis);
    for (int j = 0; j < s1.m(); ++j) {
      auto bad = pullback_mismatch(corner, s1.coord(j), s2.coord(j));
      if (!bad.empty()) {
        out.push_back("intermediate squares for axis " + std::to_string(axis) + " differ on D(2) at " + bad +
                      " of coordinate " + std::to_string(j + 1));
        break;
      }
    }
  }
  return out;
}

MicroPoint jacobi3_defect(const TriangleConfig& t) {
  auto bad = triangle_violations(t);
  if (!bad.empty()) throw PreconditionError("incompatible configuration: " + bad.front());
  const int m = t.xi[0].m();
  auto d1 = make_algebra(cube(1));
  std::vector<WeilElement> coords(static_cast<std::size_t>(m), weil_zero(d1));
  for (int axis = 1; axis <= 3; ++axis) {
    const auto& g = face_groups()[static_cast<std::size_t>(axis - 1)];
    MicroPoint s1 = strong_diff_axis(t[g[0].a], t[g[0].b], axis);
    MicroPoint s2 = strong_diff_axis(t[g[1].a], t[g[1].b], axis);
    MicroPoint v = strong_diff(s1, s2);
    for (int j = 0; j < m; ++j) {
      coords[static_cast<std::size_t>(j)][0] = v.coord(j)[0];
      coords[static_cast<std::size_t>(j)][1] += v.coord(j)[1];
    }
  }
  return MicroPoint(d1, std::move(coords));
}

TriangleField triangle_from_vector_fields(const QPolyMap& x, const QPolyMap& y, const QPolyMap& z) {
  const std::size_t m = x.in_dim;
  for (const auto* f : {&x, &y, &z}) {
    if (f->in_dim != m || f->out_dim != m) throw ValidationError("vector fields must all map R^m to R^m");
  }
  auto alg = make_algebra(cube(3));
  const QPoly zero(m);
  const WeilPoly unit = WeilPoly::scalar(alg, zero, QPoly::constant(m, Rational(1)));
  std::array<const QPolyMap*, 3> fields = {&x, &y, &z};
  TriangleField out;
  for (std::size_t s = 0; s < 6; ++s) {
    const std::string& label = TriangleConfig::labels()[s];
    std::vector<WeilPoly> w;
    for (std::size_t j = 0; j < m; ++j) w.push_back(WeilPoly::scalar(alg, zero, QPoly::variable(m, j, Rational(1))));
    for (auto it = label.rbegin(); it != label.rend(); ++it) {
      const int i = *it - '0';
      WeilPoly d = WeilPoly::scalar(alg, zero, zero);
      d[static_cast<std::size_t>(alg->index_of_mask(1U << (i - 1)))] = QPoly::constant(m, Rational(1));
      auto v = eval<WeilPoly>(*fields[static_cast<std::size_t>(i - 1)], w, unit);
      for (std::size_t j = 0; j < m; ++j) w[j] += d * v[j];
    }
    out.xi[s] = MicroField{alg, std::move(w)};
  }
  return out;
}

// ---------------------------------------------------------------------------

TriangleConfig triangle_from_vector(const std::vector<Rational>& v, int m) {
  auto alg = make_algebra(cube(3));
  const std::size_t dim = alg->dim();
  TriangleConfig t;
  for (std::size_t c = 0; c < 6; ++c) {
    std::vector<std::vector<Rational>> coeffs(dim, std::vector<Rational>(static_cast<std::size_t>(m)));
    for (std::size_t b = 0; b < dim; ++b) {
      for (std::size_t j = 0; j < static_cast<std::size_t>(m); ++j) {
        coeffs[b][j] = v[(c * dim + b) * static_cast<std::size_t>(m) + j];
      }
    }
    t.xi[c] = MicroPoint::from_coefficients(alg, coeffs);
  }
  return t;
}

namespace {

TriangleConstraints build_constraints(int m) {
  auto alg = make_algebra(cube(3));
  const std::size_t dim = alg->dim();
  const std::size_t mm = static_cast<std::size_t>(m);
  const std::size_t n = 6 * dim * mm;
  auto slot = [&](const std::string& label, std::size_t b, std::size_t j) {
    return (TriangleConfig::index(label) * dim + b) * mm + j;
  };
  RationalMatrix rows;
  for (int axis = 1; axis <= 3; ++axis) {
    const auto& sq = pullback_square(static_cast<SquareKind>(axis));
    const auto& in = sq.shared_in;
    for (const auto& pr : face_groups()[static_cast<std::size_t>(axis - 1)]) {
      for (std::size_t s = 0; s < in.source_algebra()->dim(); ++s) {
        for (std::size_t j = 0; j < mm; ++j) {
          std::vector<Rational> row(n);
          for (std::size_t t = 0; t < dim; ++t) {
            const Rational& c = in.image(t)[s];
            if (sgn(c) == 0) continue;
            row[slot(pr.a, t, j)] += c;
            row[slot(pr.b, t, j)] -= c;
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  TriangleConstraints out;
  out.pairwise_basis = nullspace(std::move(rows), n);

  const auto& corner = pullback_square(SquareKind::Corner);
  const std::size_t f = out.pairwise_basis.size();
  RationalMatrix extra;
  for (std::size_t k = 0; k < f; ++k) {
    TriangleConfig t = triangle_from_vector(out.pairwise_basis[k], m);
    std::vector<Rational> disc;
    for (int axis = 1; axis <= 3; ++axis) {
      const auto& g = face_groups()[static_cast<std::size_t>(axis - 1)];
      MicroPoint s1 = strong_diff_axis(t[g[0].a], t[g[0].b], axis);
      MicroPoint s2 = strong_diff_axis(t[g[1].a], t[g[1].b], axis);
      for (std::size_t j = 0; j < mm; ++j) {
        auto r = corner.shared_in.pull(s1.coord(static_cast<int>(j)) - s2.coord(static_cast<int>(j)));
        for (std::size_t s = 0; s < r.size(); ++s) disc.push_back(r[s]);
      }
    }
    if (extra.empty()) extra.assign(disc.size(), std::vector<Rational>(f));
    for (std::size_t i = 0; i < disc.size(); ++i) extra[i][k] = disc[i];
  }
  auto combos = nullspace(extra, f);
  out.extra_rank = f - combos.size();
  for (const auto& z : combos) {
    std::vector<Rational> v(n);
    for (std::size_t k = 0; k < f; ++k) {
      if (sgn(z[k]) == 0) continue;
      for (std::size_t i = 0; i < n; ++i) v[i] += z[k] * out.pairwise_basis[k][i];
    }
    out.full_basis.push_back(std::move(v));
  }
  return out;
}

}  // namespace

TriangleConstraints triangle_constraints(int m) {
  if (m < 1) throw ValidationError("model dimension must be positive");
  static std::mutex mu;
  static std::map<int, TriangleConstraints> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, build_constraints(m)).first;
  return it->second;
}

TriangleConfig random_triangle(Rng& rng, int m) {
  const auto c = triangle_constraints(m);
  const std::size_t n = 6 * 8 * static_cast<std::size_t>(m);
  std::vector<Rational> v(n);
  for (const auto& b : c.full_basis) {
    Rational r = rng.rational();
    if (sgn(r) == 0) continue;
    for (std::size_t i = 0; i < n; ++i) v[i] += r * b[i];
  }
  return triangle_from_vector(v, m);
}

}  // namespace fnlab

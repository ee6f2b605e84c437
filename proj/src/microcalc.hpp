#pragma once

#include <array>
#include <string>
#include <vector>

#include "linsolve.hpp"
#include "poly.hpp"
#include "random.hpp"
#include "weil.hpp"

namespace fnlab {

/// A point of M^D = R^m over an infinitesimal object: one Weil element per coordinate.
class MicroPoint {
 public:
  MicroPoint() = default;
  MicroPoint(WeilAlgebraPtr alg, std::vector<WeilElement> coords);
  /// coeffs[basis][coordinate]
  static MicroPoint from_coefficients(WeilAlgebraPtr alg, const std::vector<std::vector<Rational>>& coeffs);

  const WeilAlgebraPtr& algebra() const { return alg_; }
  const SimplicialObject& object() const { return alg_->object(); }
  int m() const { return static_cast<int>(coords_.size()); }
  const std::vector<WeilElement>& coords() const { return coords_; }
  const WeilElement& coord(int j) const { return coords_[static_cast<std::size_t>(j)]; }
  /// The vector a_S for a basis element.
  std::vector<Rational> coefficient(std::size_t basis) const;
  /// The vector a_S for a square-free generator set; zero when the monomial vanishes.
  std::vector<Rational> at_mask(std::uint32_t mask) const;

  friend bool operator==(const MicroPoint& a, const MicroPoint& b) {
    return *a.alg_ == *b.alg_ && a.coords_ == b.coords_;
  }

 private:
  WeilAlgebraPtr alg_;
  std::vector<WeilElement> coords_;
};

MicroPoint restrict(const MicroPoint& x, const InfMorphism& f);
std::string to_string(const MicroPoint& x);

/// The four pullback squares used to glue two microcubes.
enum class SquareKind { Corner, Axis1, Axis2, Axis3 };

struct PullbackSquare {
  SquareKind kind;
  SimplicialObject apex, leg, shared;
  /// leg -> apex, adding the product generator
  InfMorphism upper;
  /// leg -> apex, the plain inclusion
  InfMorphism lower;
  /// shared -> leg
  InfMorphism shared_in;
  /// result object -> apex
  InfMorphism readout;
};

const PullbackSquare& pullback_square(SquareKind kind);

/// Returns the first coefficient where the two legs disagree on the shared object, or "".
template <class C>
std::string pullback_mismatch(const PullbackSquare& sq, const BasicWeilElement<C>& g1, const BasicWeilElement<C>& g2) {
  auto r1 = sq.shared_in.pull(g1);
  auto r2 = sq.shared_in.pull(g2);
  for (std::size_t s = 0; s < r1.size(); ++s) {
    if (!(r1[s] == r2[s])) return "coefficient " + r1.algebra()->monomial_name(s);
  }
  return "";
}

/// The unique apex element restricting to g1 along `upper` and g2 along `lower`.
template <class C>
BasicWeilElement<C> solve_pullback(const PullbackSquare& sq, const BasicWeilElement<C>& g1,
                                   const BasicWeilElement<C>& g2, std::vector<std::size_t> order = {}) {
  if (!(g1.algebra()->object() == sq.leg) || !(g2.algebra()->object() == sq.leg)) {
    throw PreconditionError("amalgamation expects points on " + sq.leg.name());
  }
  if (auto bad = pullback_mismatch(sq, g1, g2); !bad.empty()) {
    throw PreconditionError("points do not agree on " + sq.shared.name() + ": " + bad + " differs");
  }
  const auto& apex = sq.upper.target_algebra();
  const std::size_t leg_dim = g1.size();
  RationalMatrix a;
  std::vector<C> rhs;
  for (int half = 0; half < 2; ++half) {
    const InfMorphism& f = half == 0 ? sq.upper : sq.lower;
    const auto& g = half == 0 ? g1 : g2;
    for (std::size_t s = 0; s < leg_dim; ++s) {
      std::vector<Rational> row(apex->dim());
      for (std::size_t t = 0; t < apex->dim(); ++t) row[t] = f.image(t)[s];
      a.push_back(std::move(row));
      rhs.push_back(g[s]);
    }
  }
  auto sol = solve_linear<C>(std::move(a), std::move(rhs), g1.zero_like(), std::move(order));
  BasicWeilElement<C> out(apex, g1.zero_like());
  for (std::size_t t = 0; t < sol.size(); ++t) out[t] = std::move(sol[t]);
  return out;
}

/// Amalgamate then read out along the square's readout map.
template <class C>
BasicWeilElement<C> glue_and_read(SquareKind kind, const BasicWeilElement<C>& g1, const BasicWeilElement<C>& g2) {
  const auto& sq = pullback_square(kind);
  return sq.readout.pull(solve_pullback(sq, g1, g2));
}

MicroPoint amalgamate(const MicroPoint& g1, const MicroPoint& g2, SquareKind kind,
                      const std::vector<std::size_t>& order = {});
/// Tangent vector obtained from two microsquares agreeing on D(2).
MicroPoint strong_diff(const MicroPoint& g1, const MicroPoint& g2);
/// Microsquare obtained from two microcubes agreeing off the axis-th face.
MicroPoint strong_diff_axis(const MicroPoint& g1, const MicroPoint& g2, int axis);

/// Symbolic family of points x -> point over an object, for x in R^m.
struct MicroField {
  WeilAlgebraPtr alg;
  std::vector<WeilPoly> coords;
  MicroPoint at(const std::vector<Rational>& x) const;
};

/// Six microcubes indexed by the arrangements 123, 132, 213, 231, 312, 321.
struct TriangleConfig {
  static const std::array<std::string, 6>& labels();
  static std::size_t index(const std::string& label);
  std::array<MicroPoint, 6> xi;
  const MicroPoint& operator[](const std::string& label) const { return xi[index(label)]; }
};

struct TriangleField {
  std::array<MicroField, 6> xi;
  TriangleConfig at(const std::vector<Rational>& x) const;
};

/// Every unmet compatibility condition of a configuration, in a fixed order.
std::vector<std::string> triangle_violations(const TriangleConfig& t);
/// Tangent vector given by the three-term general Jacobi sum.
MicroPoint jacobi3_defect(const TriangleConfig& t);

/// Composite flows of three polynomial vector fields R^m -> R^m.
TriangleField triangle_from_vector_fields(const QPolyMap& x, const QPolyMap& y, const QPolyMap& z);

/// Linear description of the compatibility constraints for m coordinates.
struct TriangleConstraints {
  /// Basis of configurations meeting the pairwise face agreements.
  std::vector<std::vector<Rational>> pairwise_basis;
  /// Rank of the remaining D(2) conditions on that space.
  std::size_t extra_rank = 0;
  /// Basis of configurations meeting every condition.
  std::vector<std::vector<Rational>> full_basis;
};
TriangleConstraints triangle_constraints(int m);
TriangleConfig triangle_from_vector(const std::vector<Rational>& v, int m);
/// Random compatible configuration: random combination of the full constraint basis.
TriangleConfig random_triangle(Rng& rng, int m);

}  // namespace fnlab

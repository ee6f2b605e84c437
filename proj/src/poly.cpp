#include "poly.hpp"

#include <sstream>

namespace fnlab {

std::vector<Rational> eval(const QPolyMap& f, const std::vector<Rational>& args) {
  return eval<Rational>(f, std::span<const Rational>(args), Rational(1));
}

QPolyMap compose(const QPolyMap& f, const QPolyMap& g) {
  if (f.in_dim != g.out_dim) {
    throw PreconditionError("cannot compose: outer map takes " + std::to_string(f.in_dim) +
                            " arguments, inner map produces " + std::to_string(g.out_dim));
  }
  QPoly unit = QPoly::constant(g.in_dim, Rational(1));
  return QPolyMap(g.in_dim, eval<QPoly>(f, std::span<const QPoly>(g.components), unit));
}

bool poly_equal(const QPolyMap& f, const QPolyMap& g) { return f == g; }

std::string to_string(const QPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      os << "*x" << v;
      if (m[v] > 1) os << "^" << m[v];
    }
  }
  return os.str();
}

}  // namespace fnlab

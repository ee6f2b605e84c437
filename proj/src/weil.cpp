#include "weil.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace fnlab {

void SimplicialObject::validate() const {
  if (n < 0) throw ValidationError("generator count must be non-negative, got " + std::to_string(n));
  if (static_cast<int>(power_bounds.size()) != n) {
    throw ValidationError("power_bounds has " + std::to_string(power_bounds.size()) + " entries for " +
                          std::to_string(n) + " generators");
  }
  for (int b : power_bounds) {
    if (b < 2) throw ValidationError("power bound must be at least 2, got " + std::to_string(b));
  }
  for (const auto& seq : p_set) {
    if (seq.empty()) throw ValidationError("empty sequence in p-set");
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq[i] < 1 || seq[i] > n) {
        throw ValidationError("index " + std::to_string(seq[i]) + " out of range 1.." + std::to_string(n));
      }
      if (i > 0 && seq[i] <= seq[i - 1]) throw ValidationError("p-set sequence is not strictly increasing");
    }
  }
}

bool SimplicialObject::is_simplicial() const {
  return std::all_of(power_bounds.begin(), power_bounds.end(), [](int b) { return b == 2; });
}

std::string SimplicialObject::name() const {
  std::ostringstream os;
  os << "D^" << n;
  if (!p_set.empty()) {
    os << "{";
    bool first = true;
    for (const auto& seq : p_set) {
      if (!first) os << ",";
      first = false;
      os << "(";
      for (std::size_t i = 0; i < seq.size(); ++i) os << (i ? "," : "") << seq[i];
      os << ")";
    }
    os << "}";
  }
  if (!is_simplicial()) {
    os << "[bounds";
    for (int b : power_bounds) os << " " << b;
    os << "]";
  }
  return os.str();
}

SimplicialObject make_object(int n, std::set<std::vector<int>> p_set, std::vector<int> power_bounds) {
  SimplicialObject obj;
  obj.n = n;
  obj.p_set = std::move(p_set);
  obj.power_bounds = power_bounds.empty() && n > 0 ? std::vector<int>(static_cast<std::size_t>(n), 2)
                                                   : std::move(power_bounds);
  obj.validate();
  return obj;
}

SimplicialObject cube(int n) { return make_object(n); }

SimplicialObject first_order(int n) {
  std::set<std::vector<int>> p;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) p.insert({i, j});
  }
  return make_object(n, std::move(p));
}

SimplicialObject oplus(const SimplicialObject& a, const SimplicialObject& b) {
  if (!a.is_simplicial() || !b.is_simplicial()) {
    throw UnsupportedOperation("oplus is defined only for objects with all power bounds equal to 2");
  }
  std::set<std::vector<int>> p = a.p_set;
  for (const auto& seq : b.p_set) {
    std::vector<int> shifted(seq);
    for (int& i : shifted) i += a.n;
    p.insert(std::move(shifted));
  }
  for (int i = 1; i <= a.n; ++i) {
    for (int j = 1; j <= b.n; ++j) p.insert({i, j + a.n});
  }
  return make_object(a.n + b.n, std::move(p));
}

// ---------------------------------------------------------------------------

WeilAlgebra::WeilAlgebra(SimplicialObject obj) : obj_(std::move(obj)) {
  obj_.validate();
  const int n = obj_.n;
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  // Enumerate the exponent box and keep surviving monomials.
  while (true) {
    if (!vanishes(e)) basis_.push_back(e);
    int i = n - 1;
    while (i >= 0 && ++e[static_cast<std::size_t>(i)] == obj_.power_bounds[static_cast<std::size_t>(i)]) {
      e[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  std::sort(basis_.begin(), basis_.end(), [](const auto& x, const auto& y) {
    int dx = std::accumulate(x.begin(), x.end(), 0);
    int dy = std::accumulate(y.begin(), y.end(), 0);
    if (dx != dy) return dx < dy;
    return x > y;
  });
  const std::size_t d = basis_.size();
  table_.assign(d * d, -1);
  std::vector<int> prod(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t g = 0; g < prod.size(); ++g) prod[g] = basis_[i][g] + basis_[j][g];
      table_[i * d + j] = index_of(prod);
    }
  }
}

bool WeilAlgebra::vanishes(const std::vector<int>& e) const {
  for (std::size_t g = 0; g < e.size(); ++g) {
    if (e[g] >= obj_.power_bounds[g]) return true;
  }
  for (const auto& seq : obj_.p_set) {
    bool all = true;
    for (int i : seq) all = all && e[static_cast<std::size_t>(i - 1)] > 0;
    if (all) return true;
  }
  return false;
}

int WeilAlgebra::index_of(const std::vector<int>& e) const {
  if (static_cast<int>(e.size()) != obj_.n || vanishes(e)) return -1;
  auto it = std::lower_bound(basis_.begin(), basis_.end(), e, [](const auto& x, const auto& y) {
    int dx = std::accumulate(x.begin(), x.end(), 0);
    int dy = std::accumulate(y.begin(), y.end(), 0);
    if (dx != dy) return dx < dy;
    return x > y;
  });
  if (it == basis_.end() || *it != e) return -1;
  return static_cast<int>(it - basis_.begin());
}

int WeilAlgebra::index_of_mask(std::uint32_t mask) const {
  std::vector<int> e(static_cast<std::size_t>(obj_.n), 0);
  for (int g = 0; g < obj_.n; ++g) e[static_cast<std::size_t>(g)] = (mask >> g) & 1U;
  if (obj_.n < 32 && (mask >> obj_.n) != 0) return -1;
  return index_of(e);
}

std::string WeilAlgebra::monomial_name(std::size_t i) const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t g = 0; g < basis_[i].size(); ++g) {
    int k = basis_[i][g];
    if (k == 0) continue;
    os << "d" << g + 1;
    if (k > 1) os << "^" << k;
    any = true;
  }
  return any ? os.str() : "1";
}

WeilAlgebraPtr make_algebra(const SimplicialObject& obj) {
  static std::mutex mu;
  static std::map<SimplicialObject, WeilAlgebraPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(obj);
  if (it != cache.end()) return it->second;
  auto alg = std::make_shared<const WeilAlgebra>(obj);
  cache.emplace(obj, alg);
  return alg;
}

WeilElement weil_zero(const WeilAlgebraPtr& alg) { return WeilElement(alg, Rational(0)); }

WeilElement weil_unit(const WeilAlgebraPtr& alg) { return WeilElement::scalar(alg, Rational(0), Rational(1)); }

WeilElement weil_generator(const WeilAlgebraPtr& alg, int g) {
  if (g < 1 || g > alg->generators()) throw ValidationError("generator index out of range");
  WeilElement r = weil_zero(alg);
  std::vector<int> e(static_cast<std::size_t>(alg->generators()), 0);
  e[static_cast<std::size_t>(g - 1)] = 1;
  int idx = alg->index_of(e);
  if (idx >= 0) r[static_cast<std::size_t>(idx)] = 1;
  return r;
}

std::string to_string(const WeilElement& x) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << x[i].get_str() << "*" << x.algebra()->monomial_name(i);
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------

InfMorphism::InfMorphism(SimplicialObject source, SimplicialObject target, std::vector<WeilElement> subst)
    : source_(std::move(source)), target_(std::move(target)), subst_(std::move(subst)) {
  source_.validate();
  target_.validate();
  src_alg_ = make_algebra(source_);
  tgt_alg_ = make_algebra(target_);
  if (static_cast<int>(subst_.size()) != target_.n) {
    throw ValidationError("substitution gives " + std::to_string(subst_.size()) + " images for " +
                          std::to_string(target_.n) + " target generators");
  }
  for (std::size_t b = 0; b < subst_.size(); ++b) {
    if (!(*subst_[b].algebra() == *src_alg_)) throw ValidationError("substitution image outside the source algebra");
    if (sgn(subst_[b][0]) != 0) {
      throw ValidationError("image of d" + std::to_string(b + 1) + " has nonzero constant term " +
                            format_rational(subst_[b][0]));
    }
  }
  auto power = [&](const WeilElement& x, int k) {
    WeilElement r = weil_unit(src_alg_);
    for (int i = 0; i < k; ++i) r *= x;
    return r;
  };
  for (const auto& seq : target_.p_set) {
    WeilElement r = weil_unit(src_alg_);
    for (int i : seq) r *= subst_[static_cast<std::size_t>(i - 1)];
    if (!r.is_zero()) {
      std::string s;
      for (int i : seq) s += "d" + std::to_string(i);
      throw ValidationError("relation " + s + " = 0 of " + target_.name() + " is not preserved: image is " +
                            to_string(r));
    }
  }
  for (int b = 0; b < target_.n; ++b) {
    int k = target_.power_bounds[static_cast<std::size_t>(b)];
    WeilElement r = power(subst_[static_cast<std::size_t>(b)], k);
    if (!r.is_zero()) {
      throw ValidationError("relation d" + std::to_string(b + 1) + "^" + std::to_string(k) +
                            " = 0 is not preserved: image is " + to_string(r));
    }
  }
  images_.reserve(tgt_alg_->dim());
  for (std::size_t t = 0; t < tgt_alg_->dim(); ++t) {
    const auto& e = tgt_alg_->exponent(t);
    WeilElement r = weil_unit(src_alg_);
    for (std::size_t b = 0; b < e.size(); ++b) r *= power(subst_[b], e[b]);
    images_.push_back(std::move(r));
  }
}

InfMorphism InfMorphism::from_terms(SimplicialObject source, SimplicialObject target,
                                    const std::vector<std::vector<Term>>& subst) {
  source.validate();
  auto alg = make_algebra(source);
  std::vector<WeilElement> images;
  for (const auto& poly : subst) {
    WeilElement x = weil_zero(alg);
    for (const auto& [c, e] : poly) {
      if (static_cast<int>(e.size()) != source.n) {
        throw ValidationError("exponent vector of length " + std::to_string(e.size()) + " for " +
                              std::to_string(source.n) + " source generators");
      }
      WeilElement mono = weil_unit(alg);
      for (std::size_t g = 0; g < e.size(); ++g) {
        if (e[g] < 0) throw ValidationError("negative exponent in substitution");
        for (int k = 0; k < e[g]; ++k) mono *= weil_generator(alg, static_cast<int>(g + 1));
      }
      x += mono * c;
    }
    images.push_back(std::move(x));
  }
  return InfMorphism(std::move(source), std::move(target), std::move(images));
}

InfMorphism InfMorphism::identity(const SimplicialObject& obj) {
  auto alg = make_algebra(obj);
  std::vector<WeilElement> images;
  for (int g = 1; g <= obj.n; ++g) images.push_back(weil_generator(alg, g));
  return InfMorphism(obj, obj, std::move(images));
}

InfMorphism compose_morphisms(const InfMorphism& f, const InfMorphism& g) {
  if (!(f.target() == g.source())) {
    throw PreconditionError("cannot compose: " + f.target().name() + " is not " + g.source().name());
  }
  std::vector<WeilElement> images;
  for (const auto& y : g.substitution()) images.push_back(f.pull(y));
  return InfMorphism(f.source(), g.target(), std::move(images));
}

}  // namespace fnlab

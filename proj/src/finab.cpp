#include "modbrauer/finab.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "modbrauer/snf.hpp"

namespace modbrauer {

namespace {

bool is_divisibility_chain(const Vector& f) {
  for (std::size_t i = 0; i + 1 < f.size(); ++i)
    if (f[i + 1] % f[i] != 0) return false;
  return true;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
  std::vector<std::pair<Int, int>> out;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

Int ipow(Int b, int e) {
  Int r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

}  // namespace

FinAbGroup FinAbGroup::from_relations(const IntMatrix& relations) {
  FinAbGroup g;
  g.ambient_dim_ = relations.rows();
  g.relations_ = relations;
  const std::size_t m = relations.rows();
  if (m == 0) return g;

  SmithForm f = smith_normal_form(relations);
  const std::size_t rank = f.rank();
  if (rank < m) {
    throw InfiniteGroupError("cokernel is infinite: relation matrix has rank " + std::to_string(rank) +
                             " on " + std::to_string(m) + " generators");
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < m; ++i)
    if (f.S(i, i) > 1) {
      keep.push_back(i);
      g.factors_.push_back(f.S(i, i));
    }
  IntMatrix to(keep.size(), m);
  IntMatrix from(m, keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j)
    for (std::size_t c = 0; c < m; ++c) {
      to(j, c) = mod_floor(f.U(keep[j], c), g.factors_[j]);  // coordinate j lives in Z/d_j
      from(c, j) = f.U_inverse(c, keep[j]);
    }
  g.to_canon_ = std::move(to);
  g.from_canon_ = std::move(from);
  return g;
}

FinAbGroup FinAbGroup::from_invariant_factors(Vector factors) {
  FinAbGroup g;
  for (Int d : factors) {
    if (d <= 0) throw InfiniteGroupError("invariant factors must be positive");
    if (d > 1) g.factors_.push_back(d);
  }
  if (!is_divisibility_chain(g.factors_))
    throw std::invalid_argument("invariant factors do not form a divisibility chain");
  g.ambient_dim_ = g.factors_.size();
  g.relations_ = IntMatrix::diagonal(g.factors_);
  return g;
}

FinAbGroup FinAbGroup::from_cyclic_orders(const Vector& orders) {
  std::map<Int, std::vector<Int>> by_prime;
  for (Int n : orders) {
    if (n <= 0) throw InfiniteGroupError("cyclic orders must be positive");
    for (auto [p, e] : factorize(n)) by_prime[p].push_back(ipow(p, e));
  }
  std::size_t len = 0;
  for (auto& [p, powers] : by_prime) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    len = std::max(len, powers.size());
  }
  Vector factors(len, 1);
  for (const auto& [p, powers] : by_prime)
    for (std::size_t j = 0; j < powers.size(); ++j)
      factors[len - 1 - j] = checked_mul(factors[len - 1 - j], powers[j]);
  return from_invariant_factors(std::move(factors));
}

BigInt FinAbGroup::order() const {
  BigInt o = 1;
  for (Int d : factors_) o *= d;
  return o;
}

Int FinAbGroup::exponent() const { return factors_.empty() ? 1 : factors_.back(); }

Element FinAbGroup::reduce(Element e) const {
  if (e.size() != factors_.size()) throw std::invalid_argument("element has wrong number of coordinates");
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = mod_floor(e[i], factors_[i]);
  return e;
}

Element FinAbGroup::to_canonical(const Vector& ambient) const {
  if (ambient.size() != ambient_dim_)
    throw std::invalid_argument("ambient vector has " + std::to_string(ambient.size()) + " coordinates, expected " +
                                std::to_string(ambient_dim_));
  if (!to_canon_) return reduce(ambient);
  return reduce((*to_canon_) * ambient);
}

Vector FinAbGroup::lift(const Element& canonical) const {
  Element c = reduce(canonical);
  if (!from_canon_) return c;
  return (*from_canon_) * c;
}

IntMatrix FinAbGroup::to_canonical_matrix() const {
  return to_canon_ ? *to_canon_ : IntMatrix::identity(factors_.size());
}

IntMatrix FinAbGroup::lift_matrix() const {
  return from_canon_ ? *from_canon_ : IntMatrix::identity(factors_.size());
}

Element FinAbGroup::generator(std::size_t i) const {
  Element e = zero();
  e.at(i) = 1;
  return e;
}

Element FinAbGroup::add(const Element& a, const Element& b) const {
  Element r(factors_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_floor(checked_add(a.at(i), b.at(i)), factors_[i]);
  return r;
}

Element FinAbGroup::scale(Int k, const Element& a) const {
  Element r(factors_.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = mod_floor(checked_mul(mod_floor(k, factors_[i]), a.at(i)), factors_[i]);
  return r;
}

Int FinAbGroup::element_order(const Element& a) const {
  Int o = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    Int x = mod_floor(a.at(i), factors_[i]);
    o = lcm(o, factors_[i] / gcd(x, factors_[i]));
  }
  return o;
}

bool FinAbGroup::is_zero(const Element& a) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (mod_floor(a.at(i), factors_[i]) != 0) return false;
  return true;
}

std::vector<Element> FinAbGroup::elements() const {
  if (order() > 1'000'000) throw std::length_error("group too large to enumerate");
  std::vector<Element> out;
  Element e = zero();
  for (;;) {
    out.push_back(e);
    bool wrapped = true;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      if (++e[i] < factors_[i]) {
        wrapped = false;
        break;
      }
      e[i] = 0;
    }
    if (wrapped) return out;
  }
}

FinAbGroup FinAbGroup::rebased(const std::vector<Element>& generators) const {
  const std::size_t k = factors_.size();
  if (generators.size() != k) throw std::invalid_argument("rebased: need one generator per invariant factor");
  for (std::size_t i = 0; i < k; ++i)
    if (element_order(generators[i]) != factors_[i])
      throw std::invalid_argument("rebased: generator order does not match invariant factor");

  // New canonical coordinates c map to old ones via P c; invert by enumeration.
  std::map<Element, Element> inverse;
  for (const Element& c : elements()) {
    Element old = zero();
    for (std::size_t i = 0; i < k; ++i) old = add(old, scale(c[i], generators[i]));
    inverse.emplace(old, c);
  }
  if (static_cast<BigInt>(inverse.size()) != order())
    throw std::invalid_argument("rebased: generators do not form a basis");

  IntMatrix P = IntMatrix::from_columns(generators, k);
  std::vector<Element> qcols;
  for (std::size_t j = 0; j < k; ++j) qcols.push_back(inverse.at(generator(j)));
  IntMatrix Q = IntMatrix::from_columns(qcols, k);

  FinAbGroup g = *this;
  g.to_canon_ = Q * to_canonical_matrix();
  g.from_canon_ = lift_matrix() * P;
  return g;
}

std::string FinAbGroup::label() const {
  if (factors_.empty()) return "0";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < factors_.size()) {
    std::size_t j = i;
    while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
    if (!first) os << " + ";
    first = false;
    if (j - i == 1)
      os << "Z/" << factors_[i];
    else
      os << "(Z/" << factors_[i] << ")^" << (j - i);
    i = j;
  }
  return os.str();
}

GroupHom::GroupHom(FinAbGroup source, FinAbGroup target, IntMatrix canonical_matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(canonical_matrix)) {
  if (matrix_.rows() != target_.num_factors() || matrix_.cols() != source_.num_factors())
    throw std::invalid_argument("homomorphism matrix has wrong shape");
  for (std::size_t r = 0; r < matrix_.rows(); ++r)
    for (std::size_t c = 0; c < matrix_.cols(); ++c) matrix_(r, c) = mod_floor(matrix_(r, c), target_.invariant_factors()[r]);
  for (std::size_t c = 0; c < matrix_.cols(); ++c) {
    Element img = target_.scale(source_.invariant_factors()[c], matrix_.column(c));
    if (!target_.is_zero(img))
      throw IllDefinedHomError("homomorphism is not well defined on generator " + std::to_string(c) + " of order " +
                               std::to_string(source_.invariant_factors()[c]));
  }
}

GroupHom GroupHom::from_source_ambient(const FinAbGroup& source, const FinAbGroup& target,
                                       const IntMatrix& ambient_to_canonical) {
  return GroupHom(source, target, ambient_to_canonical * source.lift_matrix());
}

GroupHom GroupHom::zero(const FinAbGroup& source, const FinAbGroup& target) {
  return GroupHom(source, target, IntMatrix(target.num_factors(), source.num_factors()));
}

Element GroupHom::operator()(const Element& x) const { return target_.reduce(matrix_ * source_.reduce(x)); }

Subgroup subgroup(const FinAbGroup& a, const std::vector<Element>& gens) {
  const std::size_t k = a.num_factors();
  const std::size_t t = gens.size();
  std::vector<Element> reduced;
  reduced.reserve(t);
  for (const auto& g : gens) reduced.push_back(a.reduce(g));
  IntMatrix G = IntMatrix::from_columns(reduced, k);
  IntMatrix M = G.hconcat(IntMatrix::diagonal(a.invariant_factors()));
  IntMatrix K = integer_kernel(M);
  FinAbGroup sub = FinAbGroup::from_relations(K.submatrix(0, 0, t, K.cols()));
  GroupHom inc = GroupHom::from_source_ambient(sub, a, G);
  return Subgroup{std::move(sub), std::move(inc)};
}

Quotient quotient(const FinAbGroup& a, const std::vector<Element>& gens) {
  const std::size_t k = a.num_factors();
  std::vector<Element> reduced;
  for (const auto& g : gens) reduced.push_back(a.reduce(g));
  IntMatrix M = IntMatrix::diagonal(a.invariant_factors()).hconcat(IntMatrix::from_columns(reduced, k));
  FinAbGroup q = FinAbGroup::from_relations(M);
  GroupHom proj(a, q, q.to_canonical_matrix());
  return Quotient{std::move(q), std::move(proj)};
}

ImageCokernel image_cokernel(const GroupHom& f) {
  std::vector<Element> cols;
  for (std::size_t c = 0; c < f.matrix().cols(); ++c) cols.push_back(f.matrix().column(c));
  return ImageCokernel{subgroup(f.target(), cols).group, quotient(f.target(), cols).group};
}

Subgroup kernel(const GroupHom& f) {
  const std::size_t ks = f.source().num_factors();
  IntMatrix M = f.matrix().hconcat(IntMatrix::diagonal(f.target().invariant_factors()));
  IntMatrix K = integer_kernel(M);
  std::vector<Element> gens;
  for (std::size_t c = 0; c < K.cols(); ++c) {
    Element x(ks);
    for (std::size_t i = 0; i < ks; ++i) x[i] = K(i, c);
    x = f.source().reduce(std::move(x));
    if (!f.source().is_zero(x)) gens.push_back(std::move(x));
  }
  return subgroup(f.source(), gens);
}

FinAbGroup dual(const FinAbGroup& a) { return FinAbGroup::from_invariant_factors(a.invariant_factors()); }

FinAbGroup exterior_square(const FinAbGroup& a) {
  const Vector& d = a.invariant_factors();
  Vector out;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) out.push_back(gcd(d[i], d[j]));
  std::sort(out.begin(), out.end());
  return FinAbGroup::from_invariant_factors(std::move(out));
}

FinAbGroup power(const FinAbGroup& a, std::size_t n) {
  Vector out;
  out.reserve(a.num_factors() * n);
  for (Int d : a.invariant_factors()) out.insert(out.end(), n, d);
  return FinAbGroup::from_invariant_factors(std::move(out));
}

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
  Vector all = a.invariant_factors();
  all.insert(all.end(), b.invariant_factors().begin(), b.invariant_factors().end());
  return FinAbGroup::from_cyclic_orders(all);
}

FinAbGroup quotient_by_top_cyclic(const FinAbGroup& a, Int k) {
  if (k == 1) return FinAbGroup::from_invariant_factors(a.invariant_factors());
  if (a.is_trivial() || k <= 0 || a.exponent() % k != 0)
    throw std::invalid_argument("no cyclic subgroup of order " + std::to_string(k) + " in the top factor of " +
                                a.label());
  Vector f = a.invariant_factors();
  f.back() /= k;
  return FinAbGroup::from_cyclic_orders(f);
}

}  // namespace modbrauer

#include "modbrauer/rootdata.hpp"

#include <algorithm>
#include <charconv>

namespace modbrauer {

namespace {

// Bond between simple roots i and j (0-based); `ratio` is |long|^2 / |short|^2 and
// `long_end` tells which end is long when ratio > 1.
struct Bond {
  int i;
  int j;
  int ratio;
  int long_end;
};

std::vector<Bond> bonds(const DynkinType& t) {
  const int r = t.rank;
  std::vector<Bond> out;
  auto chain = [&](int upto) {
    for (int k = 0; k + 1 < upto; ++k) out.push_back({k, k + 1, 1, -1});
  };
  switch (t.family) {
    case Family::A:
      chain(r);
      break;
    case Family::B:
      chain(r - 1);
      out.push_back({r - 2, r - 1, 2, r - 2});
      break;
    case Family::C:
      chain(r - 1);
      out.push_back({r - 2, r - 1, 2, r - 1});
      break;
    case Family::D:
      chain(r - 1);
      out.push_back({r - 3, r - 1, 1, -1});
      break;
    case Family::E:
      // 1-3-4-5-6(-7-8), 2-4 in one-based labels.
      out.push_back({0, 2, 1, -1});
      out.push_back({1, 3, 1, -1});
      for (int k = 2; k + 1 < r; ++k) out.push_back({k, k + 1, 1, -1});
      break;
    case Family::F:
      out.push_back({0, 1, 1, -1});
      out.push_back({1, 2, 2, 1});
      out.push_back({2, 3, 1, -1});
      break;
    case Family::G:
      out.push_back({0, 1, 3, 1});
      break;
  }
  return out;
}

Family family_from_letter(char c) {
  switch (c) {
    case 'A': return Family::A;
    case 'B': return Family::B;
    case 'C': return Family::C;
    case 'D': return Family::D;
    case 'E': return Family::E;
    case 'F': return Family::F;
    case 'G': return Family::G;
    default: throw SpecError(std::string("unknown root system family '") + c + "'");
  }
}

}  // namespace

char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

std::string DynkinType::name() const { return family_letter(family) + std::to_string(rank); }

bool DynkinType::simply_laced() const {
  return family == Family::A || family == Family::D || family == Family::E;
}

DynkinType make_type(Family family, int rank) {
  bool ok = false;
  switch (family) {
    case Family::A: ok = rank >= 1; break;
    case Family::B: ok = rank >= 2; break;
    case Family::C: ok = rank >= 2; break;
    case Family::D: ok = rank >= 3; break;
    case Family::E: ok = rank >= 6 && rank <= 8; break;
    case Family::F: ok = rank == 4; break;
    case Family::G: ok = rank == 2; break;
  }
  if (!ok)
    throw SpecError("invalid rank " + std::to_string(rank) + " for family " + family_letter(family));
  return DynkinType{family, rank};
}

DynkinType parse_type(std::string_view s) {
  if (s.size() < 2) throw SpecError("malformed root system name '" + std::string(s) + "'");
  const Family f = family_from_letter(s[0]);
  int rank = 0;
  auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), rank);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw SpecError("malformed root system name '" + std::string(s) + "'");
  return make_type(f, rank);
}

IntMatrix cartan_matrix(const DynkinType& t) {
  make_type(t.family, t.rank);
  const auto n = static_cast<std::size_t>(t.rank);
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 2;
  for (const Bond& b : bonds(t)) {
    // A_ij = 2 (a_i, a_j) / (a_j, a_j): the entry in the long root's row carries the ratio.
    Int at_i = -1, at_j = -1;
    if (b.ratio > 1) (b.long_end == b.i ? at_i : at_j) = -b.ratio;
    a(b.i, b.j) = at_i;
    a(b.j, b.i) = at_j;
  }
  return a;
}

Vector coroot_norm_halves(const DynkinType& t) {
  Vector n(static_cast<std::size_t>(t.rank), 1);
  switch (t.family) {
    case Family::B: n.back() = 2; break;
    case Family::C:
      for (std::size_t i = 0; i + 1 < n.size(); ++i) n[i] = 2;
      break;
    case Family::F: n[2] = n[3] = 2; break;
    case Family::G: n[0] = 3; break;
    default: break;
  }
  return n;
}

IntMatrix coroot_gram(const DynkinType& t) {
  IntMatrix a = cartan_matrix(t);
  const Vector n = coroot_norm_halves(t);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = checked_mul(n[i], a(i, j));
  return a;
}

// ---------------------------------------------------------------------------

LinkingForm::LinkingForm(std::vector<std::vector<QmodZ>> values) : values_(std::move(values)) {
  for (const auto& row : values_)
    if (row.size() != values_.size()) throw std::invalid_argument("linking form matrix must be square");
}

QmodZ LinkingForm::operator()(const Vector& x, const Vector& y) const {
  if (x.size() != dim() || y.size() != dim()) throw std::invalid_argument("linking form: dimension mismatch");
  QmodZ acc;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (y[j] == 0) continue;
      acc += checked_mul(x[i], y[j]) * values_[i][j];
    }
  }
  return acc;
}

Int LinkingForm::order() const {
  Int o = 1;
  for (const auto& row : values_)
    for (const QmodZ& v : row) o = lcm(o, v.den());
  return o;
}

bool LinkingForm::is_symmetric() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (values_[i][j] != values_[j][i]) return false;
  return true;
}

LinkingForm LinkingForm::direct_sum(const LinkingForm& other) const {
  const std::size_t n = dim() + other.dim();
  std::vector<std::vector<QmodZ>> v(n, std::vector<QmodZ>(n));
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) v[i][j] = values_[i][j];
  for (std::size_t i = 0; i < other.dim(); ++i)
    for (std::size_t j = 0; j < other.dim(); ++j) v[dim() + i][dim() + j] = other.values_[i][j];
  return LinkingForm(std::move(v));
}

// ---------------------------------------------------------------------------

Vector CenterData::block(const Vector& x, std::size_t i) const {
  return Vector(x.begin() + static_cast<std::ptrdiff_t>(offsets.at(i)),
                x.begin() + static_cast<std::ptrdiff_t>(offsets[i] + widths[i]));
}

Vector CenterData::embed(const Vector& x, std::size_t i) const {
  if (x.size() != widths.at(i)) throw std::invalid_argument("embed: wrong block width");
  Vector out(group.ambient_dim(), 0);
  std::copy(x.begin(), x.end(), out.begin() + static_cast<std::ptrdiff_t>(offsets[i]));
  return out;
}

LinkingForm CenterData::factor_form(std::size_t i) const {
  std::vector<std::vector<QmodZ>> v(widths.at(i), std::vector<QmodZ>(widths[i]));
  for (std::size_t a = 0; a < widths[i]; ++a)
    for (std::size_t b = 0; b < widths[i]; ++b) v[a][b] = form.at(offsets[i] + a, offsets[i] + b);
  return LinkingForm(std::move(v));
}

namespace {

// Preferred generators: fundamental coweight classes, lowest index first.
std::vector<Element> preferred_generators(const FinAbGroup& z, const std::vector<Element>& classes) {
  std::vector<Element> gens;
  if (z.is_trivial()) return gens;
  if (z.is_cyclic()) {
    for (const Element& c : classes)
      if (z.element_order(c) == z.exponent()) return {c};
    throw std::logic_error("no fundamental coweight generates a cyclic center");
  }
  // Non-cyclic centers of simple types are (Z/2)^2.
  for (const Element& c : classes) {
    if (z.is_zero(c)) continue;
    if (gens.empty() || (c != gens[0])) gens.push_back(c);
    if (gens.size() == 2) return gens;
  }
  throw std::logic_error("fundamental coweights do not generate the center");
}

}  // namespace

bool is_nondegenerate(const FinAbGroup& z, const LinkingForm& form) {
  for (const Element& x : z.elements()) {
    if (z.is_zero(x)) continue;
    bool pairs = false;
    for (std::size_t j = 0; j < z.num_factors() && !pairs; ++j) pairs = !form(x, z.generator(j)).is_zero();
    if (!pairs) return false;
  }
  return true;
}

CenterData center(const DynkinType& t) {
  const IntMatrix a = cartan_matrix(t);
  const IntMatrix gram = coroot_gram(t);
  const auto n = a.rows();
  // Columns of A^-1 are the fundamental coweights in the simple-coroot basis.
  const auto ainv = rational_inverse(a);

  const FinAbGroup raw = FinAbGroup::from_relations(a);
  std::vector<Element> classes;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e(n, 0);
    e[i] = 1;
    classes.push_back(raw.to_canonical(e));
  }
  const FinAbGroup pinned = raw.is_trivial() ? raw : raw.rebased(preferred_generators(raw, classes));

  CenterData out;
  out.group = FinAbGroup::from_invariant_factors(pinned.invariant_factors());
  out.factors = {t};
  out.offsets = {0};
  out.widths = {pinned.num_factors()};
  const std::size_t k = pinned.num_factors();
  out.fundamental_classes = IntMatrix(k, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector e(n, 0);
    e[i] = 1;
    Element c = pinned.to_canonical(e);
    for (std::size_t j = 0; j < k; ++j) out.fundamental_classes(j, i) = c[j];
  }

  for (std::size_t j = 0; j < k; ++j) {
    const Vector w = pinned.lift(pinned.generator(j));  // coweight-basis coefficients
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t i = 0; i < n; ++i)
        if (w[i] != 0) x[r] += Rational(w[i]) * ainv[r][i];
    out.gen_coords.push_back(std::move(x));
  }

  std::vector<std::vector<QmodZ>> vals(k, std::vector<QmodZ>(k));
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q) {
      Rational s(0);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (gram(r, c) != 0) s += out.gen_coords[p][r] * Rational(gram(r, c)) * out.gen_coords[q][c];
      vals[p][q] = QmodZ(s);
    }
  out.form = LinkingForm(std::move(vals));
  if (!out.form.is_symmetric()) throw std::logic_error("linking form is not symmetric");
  return out;
}

CenterData product_center(const std::vector<DynkinType>& factors) {
  if (factors.empty()) throw SpecError("a group needs at least one simple factor");
  if (factors.size() == 1) return center(factors[0]);

  CenterData out;
  Vector diag;
  for (const DynkinType& t : factors) {
    CenterData c = center(t);
    out.factors.push_back(t);
    out.offsets.push_back(diag.size());
    out.widths.push_back(c.group.num_factors());
    for (Int d : c.group.invariant_factors()) diag.push_back(d);
    out.form = out.form.direct_sum(c.form);
  }
  out.group = diag.empty() ? FinAbGroup::trivial() : FinAbGroup::from_relations(IntMatrix::diagonal(diag));
  return out;
}

std::vector<Vector> named_subgroup(const DynkinType& t, std::string_view name) {
  const CenterData c = center(t);
  const FinAbGroup& z = c.group;
  auto fundamental = [&](std::size_t i) { return z.reduce(c.fundamental_classes.column(i)); };
  auto reject = [&]() -> std::vector<Vector> {
    throw SpecError("subgroup '" + std::string(name) + "' is not defined for " + t.name());
  };

  if (name == "trivial") return {};
  if (name == "full") {
    std::vector<Vector> g;
    for (std::size_t i = 0; i < z.num_factors(); ++i) g.push_back(z.generator(i));
    return g;
  }
  if (name == "so-kernel") {
    if (t.family != Family::B && t.family != Family::D) return reject();
    return {fundamental(0)};
  }
  if (name == "omega-kernel") {
    if (t.family != Family::D || t.rank % 2 != 0) return reject();
    return {fundamental(static_cast<std::size_t>(t.rank - 1))};
  }
  if (name.size() > 4 && name.substr(0, 3) == "mu(" && name.back() == ')') {
    if (t.family != Family::A) return reject();
    const std::string_view digits = name.substr(3, name.size() - 4);
    Int k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || k < 1)
      throw SpecError("malformed subgroup name '" + std::string(name) + "'");
    const Int n = t.rank + 1;
    if (n % k != 0)
      throw SpecError(std::to_string(k) + " does not divide " + std::to_string(n) + " in " + std::string(name));
    return {z.scale(n / k, z.generator(0))};
  }
  throw SpecError("unknown subgroup name '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

void validate(const GroupSpec& spec, const CenterData& c) {
  if (spec.factors.empty()) throw SpecError("a group needs at least one simple factor");
  for (const DynkinType& t : spec.factors) make_type(t.family, t.rank);
  if (spec.genus > kMaxGenus) throw SpecError("genus above " + std::to_string(kMaxGenus) + " is not supported");
  if (spec.genus < 0) throw SpecError("genus must be non-negative");
  if (spec.genus < 3 && !spec.allow_low_genus)
    throw SpecError("genus " + std::to_string(spec.genus) + " is below 3; pass the low-genus override to proceed");

  const std::size_t dim = c.group.ambient_dim();
  auto check_vector = [&](const Vector& v, const char* what) {
    if (v.size() != dim)
      throw SpecError(std::string(what) + " has " + std::to_string(v.size()) + " coordinates, expected " +
                      std::to_string(dim));
  };
  check_vector(spec.delta, "delta");
  for (const Vector& g : spec.pi1_gens) check_vector(g, "pi1 generator");

  if (spec.mode == SpecMode::TwistedSimplyConnected) {
    if (!spec.pi1_gens.empty()) throw SpecError("twisted simply connected mode takes no pi1 generators");
    return;
  }
  std::vector<Element> gens;
  for (const Vector& g : spec.pi1_gens) gens.push_back(c.group.to_canonical(g));
  const Quotient q = quotient(c.group, gens);
  if (!q.group.is_zero(q.projection(c.group.to_canonical(spec.delta))))
    throw SpecError("delta does not lie in pi1");
}

void validate(const GroupSpec& spec) { validate(spec, product_center(spec.factors)); }

}  // namespace modbrauer

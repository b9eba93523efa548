#include "modbrauer/brauer.hpp"

#include <stdexcept>

namespace modbrauer {

namespace {

// Everything derived from a spec that more than one quantity needs.
struct Context {
  GroupSpec spec;
  CenterData center;
  std::vector<Element> pi1_canonical;
  Subgroup pi1;
  Quotient center_mod_pi1;
  PsiGroup psi;

  explicit Context(const GroupSpec& s) : spec(s), center(product_center(s.factors)), pi1(init_pi1()),
                                         center_mod_pi1(quotient(center.group, pi1_canonical)),
                                         psi(build_psi()) {}

  bool twisted() const { return spec.mode == SpecMode::TwistedSimplyConnected; }

  Element delta_canonical() const { return center.group.to_canonical(spec.delta); }

  bool in_pi1(const Element& z) const {
    return center_mod_pi1.group.is_zero(center_mod_pi1.projection(z));
  }

 private:
  Subgroup init_pi1() {
    validate(spec, center);
    for (const Vector& g : spec.pi1_gens) pi1_canonical.push_back(center.group.to_canonical(g));
    return subgroup(center.group, pi1_canonical);
  }

  PsiGroup build_psi() const {
    PsiGroup p;
    for (std::size_t i = 0; i < center.factors.size(); ++i) p.per_factor_orders.push_back(center.factor_form(i).order());
    p.group = FinAbGroup::from_relations(IntMatrix::diagonal(p.per_factor_orders));
    return p;
  }
};

Int to_int(const BigInt& b) {
  if (b > BigInt(INT64_MAX)) throw ArithmeticOverflow("value does not fit in 64 bits");
  return static_cast<Int>(b);
}

Subgroup full_subgroup(const FinAbGroup& a) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < a.num_factors(); ++i) gens.push_back(a.generator(i));
  return subgroup(a, gens);
}

Subgroup psi_G_of(const Context& ctx) {
  const PsiGroup& p = ctx.psi;
  const auto& gens = ctx.spec.pi1_gens;
  if (gens.empty() || p.group.is_trivial()) return full_subgroup(p.group);

  // One Z/N_pair coordinate per unordered pair of pi1 generators.
  const std::size_t s = p.per_factor_orders.size();
  std::vector<std::vector<QmodZ>> values;
  Vector moduli;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a; b < gens.size(); ++b) {
      std::vector<QmodZ> row;
      Int n = 1;
      for (std::size_t i = 0; i < s; ++i) {
        Vector k(s, 0);
        k[i] = 1;
        row.push_back(p.evaluate(ctx.center, k, gens[a], gens[b]));
        n = lcm(n, row.back().den());
      }
      values.push_back(std::move(row));
      moduli.push_back(n);
    }
  IntMatrix m(values.size(), s);
  for (std::size_t r = 0; r < values.size(); ++r)
    for (std::size_t i = 0; i < s; ++i) m(r, i) = values[r][i].num() * (moduli[r] / values[r][i].den());
  const FinAbGroup target = FinAbGroup::from_relations(IntMatrix::diagonal(moduli));
  if (target.is_trivial()) return full_subgroup(p.group);
  return kernel(GroupHom::from_source_ambient(p.group, target, target.to_canonical_matrix() * m));
}

GroupHom ev_of(const Context& ctx) {
  const PsiGroup& p = ctx.psi;
  const FinAbGroup& z = ctx.center.group;
  const Quotient& zq = ctx.center_mod_pi1;

  if (!ctx.twisted() && !ctx.in_pi1(ctx.delta_canonical())) throw SpecError("delta does not lie in pi1");

  // Source generators as coefficient tuples.
  std::vector<Vector> source_gens;
  FinAbGroup source;
  if (ctx.twisted()) {
    source = p.group;
    for (std::size_t j = 0; j < source.num_factors(); ++j) source_gens.push_back(p.group.lift(source.generator(j)));
  } else {
    Subgroup sub = psi_G_of(ctx);
    source = sub.group;
    for (std::size_t j = 0; j < source.num_factors(); ++j)
      source_gens.push_back(p.group.lift(sub.inclusion(source.generator(j))));
  }

  const FinAbGroup target = dual(zq.group);
  const Vector& d = zq.group.invariant_factors();
  IntMatrix mat(target.num_factors(), source.num_factors());
  for (std::size_t j = 0; j < source_gens.size(); ++j) {
    const Vector& k = source_gens[j];
    for (const Vector& g : ctx.spec.pi1_gens)
      if (!p.evaluate(ctx.center, k, ctx.spec.delta, g).is_zero())
        throw IllDefinedHomError("b(delta, -) does not vanish on pi1");
    for (std::size_t l = 0; l < d.size(); ++l) {
      const Vector q = z.lift(zq.group.lift(zq.group.generator(l)));
      const QmodZ v = p.evaluate(ctx.center, k, ctx.spec.delta, q);
      const Int scaled = checked_mul(v.num(), d[l]);
      if (scaled % v.den() != 0) throw IllDefinedHomError("evaluation is not a character of the quotient");
      mat(l, j) = scaled / v.den();
    }
  }
  return GroupHom(source, target, std::move(mat));
}

GroupSpec twisted_spec(const std::vector<DynkinType>& factors, const Vector& delta) {
  GroupSpec s;
  s.factors = factors;
  s.delta = delta;
  s.mode = SpecMode::TwistedSimplyConnected;
  return s;
}

// ---------------------------------------------------------------------------
// Classification of component-mode specs into the tabulated families.

Classification classify_ctx(const Context& ctx) {
  Classification c;
  const FinAbGroup& p = ctx.pi1.group;
  if (p.is_trivial()) {
    c.kind = GroupClass::SimplyConnected;
    c.name = "simply connected";
    return c;
  }
  c.name = "untabulated";
  if (ctx.center.factors.size() != 1) return c;

  const DynkinType t = ctx.center.factors[0];
  const FinAbGroup& z = ctx.center.group;
  const Element delta = ctx.delta_canonical();
  const BigInt order = p.order();
  auto fundamental = [&](int i) { return z.reduce(ctx.center.fundamental_classes.column(static_cast<std::size_t>(i))); };
  auto generates = [&](const Element& g) {
    // pi1 has order 2 here, so it is <g> iff g is a nonzero element of pi1.
    return !z.is_zero(g) && ctx.in_pi1(g);
  };

  if (t.family == Family::C && t.rank >= 3 && order == z.order()) {
    c.kind = GroupClass::ProjectiveSymplectic;
    c.parameter = t.rank;
    c.delta_index = delta[0];
    c.name = "PSp(" + std::to_string(2 * t.rank) + ")";
  } else if (t.family == Family::B && t.rank >= 4 && order == 2) {
    c.kind = GroupClass::SpecialOrthogonal;
    c.parameter = 2 * t.rank + 1;
    c.delta_index = z.is_zero(delta) ? 0 : 1;
    c.name = "SO(" + std::to_string(c.parameter) + ")";
  } else if (t.family == Family::D && t.rank >= 4) {
    const int m = t.rank;
    if (order == z.order()) {
      c.kind = GroupClass::ProjectiveOrthogonal;
      c.parameter = 2 * m;
      if (m % 2 == 1) {
        c.delta_index = delta[0];
      } else {
        // (Z/2)^2 with generators (vector class, half-spin class): index a + 2b.
        c.delta_index = delta[0] + 2 * delta[1];
      }
      c.name = "PSO(" + std::to_string(2 * m) + ")";
    } else if (order == 2) {
      const bool vector = generates(fundamental(0));
      if (vector || m == 4) {
        c.kind = GroupClass::SpecialOrthogonal;
        c.parameter = 2 * m;
        c.name = "SO(" + std::to_string(2 * m) + ")";
        if (!vector) c.name += " (triality image of Spin(8) mod a half-spin class)";
      } else if (m >= 6) {
        c.kind = GroupClass::Omega;
        c.parameter = 2 * m;
        c.name = "Omega(" + std::to_string(2 * m) + ")";
      }
      c.delta_index = z.is_zero(delta) ? 0 : 1;
    }
  }
  return c;
}

// Order of the image of Pic of the affine Grassmannian in pi1^dual (stack descent index).
std::optional<Int> pi1_descent_index(const Classification& c) {
  switch (c.kind) {
    case GroupClass::ProjectiveSymplectic: return c.parameter % 2 == 1 ? 2 : 1;
    case GroupClass::SpecialOrthogonal: return 1;
    case GroupClass::ProjectiveOrthogonal: return 1;
    case GroupClass::Omega: {
      const int n = c.parameter / 4;
      return (c.delta_index == 0 || n % 2 == 1) ? 2 : 1;
    }
    default: return std::nullopt;
  }
}

// Order of the subgroup A removed from H^2(Gamma, C^*) for PSO(2n).
Int pso_a_order(int dim, Int delta_index) {
  if (dim % 4 == 0) return delta_index == 0 ? 2 : 1;
  const Int d = mod_floor(delta_index, 4);
  if (d == 0) return 4;
  if (d == 2) return 2;
  return 1;
}

std::optional<Int> kernel_index_m(const Classification& c) {
  switch (c.kind) {
    case GroupClass::SimplyConnected: return 1;
    case GroupClass::ProjectiveSymplectic: return (c.parameter % 2 == 1 && c.delta_index == 0) ? 2 : 1;
    case GroupClass::SpecialOrthogonal: return 1;
    default: return std::nullopt;
  }
}

BrauerGroup resolved(std::vector<Piece> pieces) {
  BrauerGroup b;
  b.resolved = true;
  b.split = SplitStatus::ProvenSplit;
  b.group = FinAbGroup::trivial();
  for (const Piece& p : pieces) b.group = direct_sum(b.group, p.group);
  b.order = b.group.order();
  b.order_at_least = *b.order;
  b.pieces = std::move(pieces);
  return b;
}

ConsistencyReport cross_check_report(const BrauerReport& r) {
  ConsistencyReport out;
  out.m = r.kernel_index_m;
  if (!out.m || !r.stack.order || r.spec.mode != SpecMode::Component) {
    out.status = ConsistencyReport::Status::NotCheckable;
    out.detail = "no tabulated kernel index for " + r.classification.name;
    return out;
  }
  const FinAbGroup tw = br_twisted_sc(r.spec.factors, r.spec.delta);
  const BigInt h2 = r.h2_gamma.order();
  if (h2 % *out.m != 0) {
    out.status = ConsistencyReport::Status::Fail;
    out.detail = "kernel index does not divide |H^2(Gamma, C*)|";
    return out;
  }
  out.lhs = h2 / *out.m * tw.order();
  out.rhs = r.coker_ev.order() * *r.stack.order;
  out.status = out.lhs == out.rhs ? ConsistencyReport::Status::Pass : ConsistencyReport::Status::Fail;
  out.detail = "|H^2(Gamma,C*)|/m * |Br twisted simply connected| = " + to_string(out.lhs) +
               ", |Coker ev| * |Br stack| = " + to_string(out.rhs);
  return out;
}

BrauerReport base_report(const Context& ctx) {
  BrauerReport r;
  r.spec = ctx.spec;
  r.center = ctx.center.group;
  r.pi1 = ctx.pi1.group;
  r.psi = ctx.psi.group;
  const GroupHom e = ev_of(ctx);
  r.psi_G = ctx.twisted() ? ctx.psi.group : e.source();
  const ImageCokernel ic = image_cokernel(e);
  r.ev_image = ic.image;
  r.coker_ev = ic.cokernel;
  r.pi1_dual = dual(r.pi1);
  if (ctx.twisted()) {
    r.gamma = FinAbGroup::trivial();
    r.h2_gamma = FinAbGroup::trivial();
  } else {
    r.gamma = power(r.pi1, 2 * static_cast<std::size_t>(ctx.spec.genus));
    r.h2_gamma = exterior_square(r.gamma);
  }
  return r;
}

void fill_twisted(BrauerReport& r) {
  r.classification.kind = GroupClass::SimplyConnected;
  r.classification.name = "twisted simply connected";
  r.stack = resolved({});
  r.notes.push_back("Twisted stack of a simply connected group: Br = 0");
  r.notes.push_back("Twisted moduli space: Br(M^rs) = Coker(ev) over all admissible forms, target Hom(Z, Q/Z)");
  if (r.spec.factors.size() == 1) {
    r.descent_power = to_int(dual(r.center).order() / r.coker_ev.order());
    r.notes.push_back("Descent power = |Z^dual| / |Coker ev| (order of the weight of the generating line bundle)");
  }
}

void fill_stack(BrauerReport& r) {
  const Classification& c = r.classification;
  r.stack_descent_index = pi1_descent_index(c);
  r.kernel_index_m = kernel_index_m(c);

  if (c.kind == GroupClass::SimplyConnected) {
    r.pi1_dual_quotient = FinAbGroup::trivial();
    r.stack = resolved({});
    r.notes.push_back("Simply connected: Br of the moduli stack vanishes");
    return;
  }
  if (!r.stack_descent_index) {
    BrauerGroup b;
    b.pieces = {{"h2_gamma", r.h2_gamma}, {"pi1_dual", r.pi1_dual}};
    b.order_divides = r.h2_gamma.order() * r.pi1_dual.order();
    b.order_at_least = 1;
    r.stack = std::move(b);
    r.notes.push_back("Stack Brauer group is a quotient of an extension of pi1^dual by H^2(Gamma, C*); "
                      "the image of Pic of the affine Grassmannian is not tabulated for this group, so only "
                      "graded pieces and an order bound are reported");
    return;
  }

  r.notes.push_back("Stack: H^2(BL_C(G), C*) is an extension of pi1^dual by H^2(Gamma, C*); Br(stack) is its "
                    "quotient by the image of Pic of the affine Grassmannian");
  if (c.kind == GroupClass::ProjectiveOrthogonal) {
    const Int a = pso_a_order(c.parameter, c.delta_index);
    r.pi1_dual_quotient = r.pi1_dual;
    r.stack = resolved({{"h2_gamma_mod_A", quotient_by_top_cyclic(r.h2_gamma, a)}, {"pi1_dual", r.pi1_dual}});
    r.notes.push_back("PSO: the image is a subgroup A of order " + std::to_string(a) +
                      " inside H^2(Gamma, C*); Br(stack) = H^2(Gamma, C*)/A + pi1^dual");
    return;
  }
  const FinAbGroup q = quotient_by_top_cyclic(r.pi1_dual, *r.stack_descent_index);
  r.pi1_dual_quotient = q;
  r.stack = resolved({{"h2_gamma", r.h2_gamma}, {"pi1_dual_quotient", q}});
  switch (c.kind) {
    case GroupClass::ProjectiveSymplectic:
      r.notes.push_back(c.parameter % 2 == 1
                            ? "PSp(2n), n odd: the generating line bundle of the Grassmannian does not descend, "
                              "the pi1^dual summand is killed"
                            : "PSp(2n), n even: the generating line bundle descends, pi1^dual survives");
      break;
    case GroupClass::SpecialOrthogonal:
      r.notes.push_back("SO(n): the Pfaffian bundle exists, so pi1^dual survives and the sequence splits");
      break;
    case GroupClass::Omega:
      r.notes.push_back("Omega(4n): component index d read as delta under pi1 = Z/2 generated by a half-spin class");
      break;
    default: break;
  }
}

void fill_moduli(BrauerReport& r) {
  const Classification& c = r.classification;
  r.notes.push_back("Moduli: 0 -> Coker(ev) -> Br(M^rs) -> Br(stack) -> 0");
  if (!r.stack.resolved) {
    BrauerGroup b;
    b.pieces = {{"coker_ev", r.coker_ev}};
    for (const Piece& p : r.stack.pieces) b.pieces.push_back(p);
    b.order_at_least = r.coker_ev.order();
    b.order_divides = r.coker_ev.order() * *r.stack.order_divides;
    r.moduli = std::move(b);
    return;
  }
  if (c.kind == GroupClass::SpecialOrthogonal) {
    // The centre part is the Brauer group of the twisted Spin moduli space (m = 1 route).
    const FinAbGroup tw = br_twisted_sc(r.spec.factors, r.spec.delta);
    r.moduli = resolved({{"h2_gamma", r.h2_gamma}, {"br_twisted_spin", tw}});
    r.notes.push_back("SO(n): Br(M^rs) = H^2(Gamma, C*) + Br(M^delta(Spin_n)^rs)");
  } else {
    std::vector<Piece> pieces = {{"coker_ev", r.coker_ev}};
    for (const Piece& p : r.stack.pieces) pieces.push_back(p);
    r.moduli = resolved(std::move(pieces));
  }
  if (r.moduli.group.order() != r.coker_ev.order() * r.stack.group.order())
    throw std::logic_error("order equation |Br(M^rs)| = |Coker ev| * |Br(stack)| fails for " + c.name);
}

BrauerReport analyze(const GroupSpec& spec, bool with_moduli) {
  const Context ctx(spec);
  BrauerReport r = base_report(ctx);
  if (ctx.twisted()) {
    fill_twisted(r);
    r.moduli = resolved({{"coker_ev", r.coker_ev}});
    r.cross_check.status = ConsistencyReport::Status::NotCheckable;
    r.cross_check.detail = "twisted simply connected mode";
    return r;
  }
  r.classification = classify_ctx(ctx);
  fill_stack(r);
  if (with_moduli) {
    fill_moduli(r);
    r.cross_check = cross_check_report(r);
  }
  return r;
}

}  // namespace

QmodZ PsiGroup::evaluate(const CenterData& center, const Vector& k, const Vector& x, const Vector& y) const {
  QmodZ acc;
  for (std::size_t i = 0; i < center.factors.size(); ++i) {
    if (k.at(i) == 0) continue;
    const std::size_t off = center.offsets[i], w = center.widths[i];
    QmodZ part;
    for (std::size_t a = 0; a < w; ++a) {
      if (x[off + a] == 0) continue;
      for (std::size_t b = 0; b < w; ++b)
        if (y[off + b] != 0) part += checked_mul(x[off + a], y[off + b]) * center.form.at(off + a, off + b);
    }
    acc += k[i] * part;
  }
  return acc;
}

PsiGroup psi(const GroupSpec& spec) { return Context(spec).psi; }

Subgroup psi_G(const GroupSpec& spec) {
  if (spec.mode != SpecMode::Component) throw SpecError("Psi(G) is defined in component mode");
  return psi_G_of(Context(spec));
}

GroupHom ev(const GroupSpec& spec) { return ev_of(Context(spec)); }

FinAbGroup coker_ev(const GroupSpec& spec) { return image_cokernel(ev(spec)).cokernel; }

FinAbGroup gamma(const GroupSpec& spec) {
  if (spec.mode != SpecMode::Component) throw SpecError("Gamma is defined in component mode");
  const Context ctx(spec);
  return power(ctx.pi1.group, 2 * static_cast<std::size_t>(spec.genus));
}

FinAbGroup h2_gamma(const GroupSpec& spec) { return exterior_square(gamma(spec)); }

FinAbGroup br_twisted_sc(const std::vector<DynkinType>& factors, const Vector& delta) {
  return coker_ev(twisted_spec(factors, delta));
}

FinAbGroup br_twisted_sc(const DynkinType& t, const Vector& delta) {
  return br_twisted_sc(std::vector<DynkinType>{t}, delta);
}

Int min_descending_power(const DynkinType& t, const Vector& delta) {
  const FinAbGroup z = center(t).group;
  return to_int(z.order() / br_twisted_sc(t, delta).order());
}

Classification classify(const GroupSpec& spec) {
  const Context ctx(spec);
  if (ctx.twisted()) {
    Classification c;
    c.kind = GroupClass::SimplyConnected;
    c.name = "twisted simply connected";
    return c;
  }
  return classify_ctx(ctx);
}

BrauerReport br_stack(const GroupSpec& spec) { return analyze(spec, false); }

BrauerReport br_moduli(const GroupSpec& spec) { return analyze(spec, true); }

ConsistencyReport cross_check(const GroupSpec& spec) { return br_moduli(spec).cross_check; }

bool sp_local_factoriality(int n) {
  if (n < 3) throw SpecError("local factoriality verdict needs n >= 3");
  return n % 2 == 1;
}

std::string to_string(ConsistencyReport::Status s) {
  switch (s) {
    case ConsistencyReport::Status::Pass: return "pass";
    case ConsistencyReport::Status::Fail: return "fail";
    case ConsistencyReport::Status::NotCheckable: return "not-checkable";
  }
  return "unknown";
}

}  // namespace modbrauer

#include <doctest.h>

#include "modbrauer/brauer.hpp"
#include "modbrauer/cli.hpp"

using namespace modbrauer;

namespace {

GroupSpec twisted(const DynkinType& t, Vector delta, int genus = 3) {
  GroupSpec s;
  s.factors = {t};
  s.delta = std::move(delta);
  s.mode = SpecMode::TwistedSimplyConnected;
  s.genus = genus;
  return s;
}

GroupSpec component(std::vector<DynkinType> f, std::vector<Vector> pi1, Vector delta, int genus = 3) {
  GroupSpec s;
  s.factors = std::move(f);
  s.pi1_gens = std::move(pi1);
  s.delta = std::move(delta);
  s.genus = genus;
  return s;
}

DynkinType T(const char* name) { return parse_type(name); }

// Component-mode specs over the classical presets plus a few products and raw subgroups.
std::vector<GroupSpec> grid(int genus = 3) {
  std::vector<GroupSpec> out;
  for (int n = 2; n <= 6; ++n)
    for (int d = 0; d < n; ++d) out.push_back(preset_spec("PGL", n, d, genus));
  for (int n = 3; n <= 6; ++n)
    for (int d = 0; d < 2; ++d) out.push_back(preset_spec("PSp", 2 * n, d, genus));
  for (int n = 8; n <= 12; ++n)
    for (int d = 0; d < 2; ++d) out.push_back(preset_spec("SO", n, d, genus));
  for (int n = 8; n <= 12; n += 2)
    for (int d = 0; d < 4; ++d) out.push_back(preset_spec("PSO", n, d, genus));
  for (int d = 0; d < 2; ++d) out.push_back(preset_spec("Omega", 12, d, genus));
  out.push_back(component({T("A3")}, {{2}}, {2}, genus));
  out.push_back(component({T("A1"), T("A1")}, {{1, 1}}, {1, 1}, genus));
  out.push_back(component({T("A3"), T("C2")}, {{2, 1}}, {0, 0}, genus));
  out.push_back(component({T("E6")}, {}, {0}, genus));
  return out;
}

}  // namespace

TEST_CASE("psi") {
  for (int n = 2; n <= 8; ++n) CHECK(psi(twisted(T(("A" + std::to_string(n - 1)).c_str()), {0})).group.invariant_factors() == Vector{n});
  CHECK(psi(twisted(T("E8"), {})).group.is_trivial());
  for (int n : {3, 5, 7}) CHECK(psi(twisted(make_type(Family::C, n), {0})).group.invariant_factors() == Vector{2});

  const PsiGroup p = psi(component({T("A1"), T("E6")}, {}, {0, 0}));
  CHECK(p.per_factor_orders == Vector{2, 3});
  for (std::size_t i = 0; i < p.per_factor_orders.size(); ++i) {
    const FinAbGroup zi = center(component({T("A1"), T("E6")}, {}, {0, 0}).factors[i]).group;
    const Int bound = static_cast<Int>(zi.order()) * (zi.is_trivial() ? 1 : zi.exponent());
    CHECK(bound % p.per_factor_orders[i] == 0);
  }
}

TEST_CASE("psi_G") {
  CHECK(psi_G(component({T("A3")}, {}, {0})).group.invariant_factors() == Vector{4});
  CHECK(psi_G(preset_spec("PGL", 2, 0)).group.is_trivial());
  for (int n : {3, 5, 7}) CHECK(psi_G(preset_spec("PSp", 2 * n, 0)).group.is_trivial());
  // mu(2) in SL(4): k(-1/4)(2)(2) = -k vanishes for every k.
  CHECK(psi_G(component({T("A3")}, {{2}}, {0})).group.invariant_factors() == Vector{4});
}

TEST_CASE("ev and its cokernel") {
  CHECK(image_cokernel(ev(component({T("A4")}, {}, {0}))).image.is_trivial());
  for (int n = 2; n <= 8; ++n)
    for (int d = 0; d < n; ++d) {
      const GroupSpec s = twisted(make_type(Family::A, n - 1), {d});
      const Int g = std::gcd(n, d);
      CHECK(image_cokernel(ev(s)).image.order() == n / g);
      CHECK(coker_ev(s).invariant_factors() == (g == 1 ? Vector{} : Vector{g}));
    }
  for (int n : {3, 5, 7}) CHECK(coker_ev(twisted(make_type(Family::C, n), {1})).is_trivial());
  for (int n : {4, 6, 8}) CHECK(coker_ev(twisted(make_type(Family::C, n), {1})).invariant_factors() == Vector{2});
  for (int r = 1; r <= 12; ++r)
    for (Family f : {Family::A, Family::B, Family::C, Family::D}) {
      if ((f == Family::B || f == Family::C) && r < 2) continue;
      if (f == Family::D && r < 3) continue;
      const DynkinType t = make_type(f, r);
      const FinAbGroup z = center(t).group;
      CHECK(coker_ev(component({t}, {}, Vector(z.ambient_dim(), 0))).invariant_factors() == dual(z).invariant_factors());
    }
}

TEST_CASE("gamma and its exterior square") {
  CHECK(gamma(component({T("A3")}, {}, {0})).is_trivial());
  CHECK(h2_gamma(component({T("A3")}, {}, {0})).is_trivial());
  CHECK(gamma(preset_spec("PSp", 6, 0)).invariant_factors() == Vector(6, 2));
  CHECK(gamma(preset_spec("PGL", 4, 0)).invariant_factors() == Vector(6, 4));
  CHECK(h2_gamma(preset_spec("PSp", 6, 0)).invariant_factors() == Vector(15, 2));
  CHECK(h2_gamma(preset_spec("PSO", 8, 0)).invariant_factors() == Vector(66, 2));
}

TEST_CASE("descent powers and twisted Brauer groups") {
  for (int n : {3, 5, 7}) CHECK(min_descending_power(make_type(Family::C, n), {1}) == 2);
  for (int n : {4, 6, 8}) CHECK(min_descending_power(make_type(Family::C, n), {1}) == 1);
  CHECK(min_descending_power(make_type(Family::D, 5), {1}) == 4);
  CHECK(br_twisted_sc(make_type(Family::D, 5), {1}).is_trivial());
  for (int r = 3; r <= 7; ++r) CHECK(br_twisted_sc(make_type(Family::B, r), {1}).invariant_factors() == Vector{2});
  CHECK(br_twisted_sc(T("E7"), {0}).invariant_factors() == Vector{2});
  for (const DynkinType& t : {T("A5"), T("B4"), T("C4"), T("D5"), T("D6"), T("E6"), T("E7")}) {
    const FinAbGroup z = center(t).group;
    for (const Element& d : z.elements())
      CHECK(BigInt(min_descending_power(t, d)) * coker_ev(twisted(t, d)).order() == z.order());
  }
  CHECK_THROWS(sp_local_factoriality(2));
  CHECK(sp_local_factoriality(3));
  CHECK_FALSE(sp_local_factoriality(4));
  CHECK(sp_local_factoriality(5));
}

TEST_CASE("stack and moduli on the classical families") {
  const BrauerReport sc = br_moduli(component({T("B3")}, {}, {0}));
  CHECK(sc.stack.resolved);
  CHECK(sc.stack.group.is_trivial());
  CHECK(sc.cross_check.status == ConsistencyReport::Status::Pass);

  const BrauerReport psp = br_moduli(preset_spec("PSp", 6, 0));
  CHECK(psp.stack.group.invariant_factors() == Vector(15, 2));
  CHECK(psp.cross_check.status == ConsistencyReport::Status::Pass);
  CHECK(psp.cross_check.m == 2);

  const BrauerReport so = br_moduli(preset_spec("SO", 10, 0));
  Vector expected(15, 2);
  expected.push_back(4);
  CHECK(so.moduli.group.invariant_factors() == Vector{2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 4});
  CHECK(so.stack.group.invariant_factors() == Vector(16, 2));
  CHECK(so.moduli.split == SplitStatus::ProvenSplit);
  CHECK(so.cross_check.m == 1);

  const BrauerReport om = br_moduli(preset_spec("Omega", 12, 1));
  CHECK(om.moduli.group.invariant_factors() == Vector(16, 2));

  for (const char* e : {"G2", "F4", "E8"})
    for (int g : {3, 4, 5}) {
      const BrauerReport r = br_moduli(component({T(e)}, {}, {}, g));
      CHECK(r.stack.group.is_trivial());
      CHECK(r.moduli.group.is_trivial());
    }
}

TEST_CASE("untabulated groups stay graded") {
  const BrauerReport r = br_moduli(preset_spec("PGL", 2, 1));
  CHECK_FALSE(r.stack.resolved);
  CHECK_FALSE(r.fully_resolved());
  CHECK(r.stack.split == SplitStatus::OrderOnly);
  CHECK_FALSE(r.stack.pieces.empty());
  CHECK(r.cross_check.status == ConsistencyReport::Status::NotCheckable);
  if (r.moduli.order && r.stack.order) CHECK(*r.moduli.order == r.coker_ev.order() * *r.stack.order);
}

TEST_CASE("grid invariants") {
  for (const GroupSpec& s : grid()) {
    CAPTURE(render(s));
    const BrauerReport r = br_moduli(s);
    // |coker ev| divides |Hom(Z / pi1, Q/Z)|.
    CHECK(r.center.order() % (r.pi1.order() * r.coker_ev.order()) == 0);
    // Certificate: every b in Psi(G) kills delta against pi1.
    const PsiGroup p = psi(s);
    const Subgroup pg = psi_G(s);
    const CenterData c = product_center(s.factors);
    for (const Element& k : pg.group.elements()) {
      const Vector kk = p.group.lift(pg.inclusion(k));
      for (const Vector& g : s.pi1_gens) {
        CHECK(p.evaluate(c, kk, s.delta, g).is_zero());
        for (const Vector& h : s.pi1_gens) CHECK(p.evaluate(c, kk, g, h).is_zero());
      }
    }
    if (r.fully_resolved()) CHECK(r.moduli.group.order() == r.coker_ev.order() * r.stack.group.order());
    CHECK(r.cross_check.status != ConsistencyReport::Status::Fail);

    // Only the exterior-square part depends on the genus.
    for (int g : {4, 5}) {
      GroupSpec s2 = s;
      s2.genus = g;
      const BrauerReport r2 = br_moduli(s2);
      CHECK(r2.coker_ev.invariant_factors() == r.coker_ev.invariant_factors());
      CHECK(r2.pi1_dual.invariant_factors() == r.pi1_dual.invariant_factors());
      CHECK(r2.stack_descent_index == r.stack_descent_index);
      CHECK(r2.gamma.invariant_factors() == power(r.pi1, 2 * g).invariant_factors());
      if (r.stack.resolved && r2.stack.resolved)
        CHECK(r2.stack.group.order() * r.h2_gamma.order() == r.stack.group.order() * r2.h2_gamma.order());
    }
  }
}

TEST_CASE("swapping factors") {
  const GroupSpec a = component({T("A3"), T("C3")}, {{2, 1}}, {2, 1});
  const GroupSpec b = component({T("C3"), T("A3")}, {{1, 2}}, {1, 2});
  const BrauerReport ra = br_moduli(a), rb = br_moduli(b);
  CHECK(ra.coker_ev.invariant_factors() == rb.coker_ev.invariant_factors());
  CHECK(ra.psi_G.invariant_factors() == rb.psi_G.invariant_factors());
  CHECK(ra.h2_gamma.invariant_factors() == rb.h2_gamma.invariant_factors());
  CHECK(ra.stack.order_at_least == rb.stack.order_at_least);
  CHECK(ra.moduli.order == rb.moduli.order);
}

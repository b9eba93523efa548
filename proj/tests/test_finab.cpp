#include <doctest.h>

#include <set>

#include "modbrauer/finab.hpp"

using namespace modbrauer;

namespace {

FinAbGroup cyc(Vector orders) { return FinAbGroup::from_cyclic_orders(orders); }

// Every abelian group of order <= 16, as lists of cyclic orders.
std::vector<Vector> small_groups() {
  std::vector<Vector> out;
  for (Int n = 1; n <= 16; ++n) out.push_back({n});
  for (Vector v : {Vector{2, 2}, {2, 4}, {3, 3}, {2, 6}, {2, 2, 2}, {4, 4}, {2, 8}, {2, 2, 4}, {2, 2, 2, 2}})
    out.push_back(v);
  return out;
}

// Brute-force closure of the subgroup generated by gens.
std::size_t closure_size(const FinAbGroup& a, const std::vector<Element>& gens) {
  std::set<Element> seen{a.zero()};
  std::vector<Element> frontier{a.zero()};
  while (!frontier.empty()) {
    const Element x = frontier.back();
    frontier.pop_back();
    for (const Element& g : gens) {
      const Element y = a.add(x, g);
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  return seen.size();
}

}  // namespace

TEST_CASE("from_relations") {
  CHECK(FinAbGroup::from_relations(IntMatrix::diagonal({2, 4})).invariant_factors() == Vector{2, 4});
  CHECK(FinAbGroup::from_relations({{2, 1}, {0, 2}}).invariant_factors() == Vector{4});
  CHECK(FinAbGroup::from_relations({{1}}).is_trivial());
  CHECK_THROWS_AS(FinAbGroup::from_relations({{2, 0}, {0, 0}}), InfiniteGroupError);
}

TEST_CASE("canonical round trip") {
  const FinAbGroup g = FinAbGroup::from_relations({{2, 1, 0}, {0, 3, 1}, {1, 0, 4}});
  CHECK(g.order() == 25);
  for (const Element& e : g.elements()) CHECK(g.to_canonical(g.lift(e)) == e);
  CHECK(cyc({6, 4}).invariant_factors() == Vector{2, 12});
}

TEST_CASE("subgroups and quotients") {
  const FinAbGroup z4 = cyc({4});
  CHECK(subgroup(z4, {{2}}).group.invariant_factors() == Vector{2});
  CHECK(subgroup(cyc({2, 2}), {{1, 1}}).group.invariant_factors() == Vector{2});
  CHECK(subgroup(cyc({6}), {{2}, {3}}).group.invariant_factors() == Vector{6});
  CHECK(quotient(z4, {{2}}).group.invariant_factors() == Vector{2});
  CHECK(quotient(cyc({2, 2}), {{1, 1}}).group.invariant_factors() == Vector{2});
  CHECK(quotient(cyc({12}), {{4}}).group.invariant_factors() == Vector{4});

  for (const Vector& orders : small_groups()) {
    const FinAbGroup a = cyc(orders);
    for (const Element& x : a.elements()) {
      const Subgroup s = subgroup(a, {x});
      const Quotient q = quotient(a, {x});
      CHECK(s.group.order() * q.group.order() == a.order());
      CHECK(s.group.order() == closure_size(a, {x}));
      for (const Element& y : s.group.elements()) CHECK(q.projection(s.inclusion(y)) == q.group.zero());
    }
  }
}

TEST_CASE("image and cokernel") {
  const FinAbGroup z4 = cyc({4});
  ImageCokernel ic = image_cokernel(GroupHom(z4, z4, {{2}}));
  CHECK(ic.image.invariant_factors() == Vector{2});
  CHECK(ic.cokernel.invariant_factors() == Vector{2});
  ic = image_cokernel(GroupHom::zero(cyc({3}), cyc({5})));
  CHECK(ic.cokernel.invariant_factors() == Vector{5});
  ic = image_cokernel(GroupHom(cyc({2, 2}), z4, {{2, 2}}));
  CHECK(ic.image.invariant_factors() == Vector{2});
  CHECK(ic.cokernel.invariant_factors() == Vector{2});
  CHECK_THROWS_AS(GroupHom(cyc({2}), cyc({3}), {{1}}), IllDefinedHomError);

  const FinAbGroup a = cyc({2, 4}), b = cyc({2, 8});
  for (Int p = 0; p < 2; ++p)
    for (Int q = 0; q < 4; ++q) {
      const GroupHom f(a, b, {{p, 0}, {0, 2 * q}});
      const ImageCokernel r = image_cokernel(f);
      CHECK(r.image.order() * r.cokernel.order() == b.order());
      CHECK(kernel(f).group.order() * r.image.order() == a.order());
    }
}

TEST_CASE("dual, exterior square and powers") {
  for (const Vector& orders : small_groups()) {
    const FinAbGroup a = cyc(orders);
    CHECK(dual(a).invariant_factors() == a.invariant_factors());
    CHECK(dual(dual(a)).invariant_factors() == a.invariant_factors());
  }
  CHECK(exterior_square(cyc({12})).is_trivial());
  CHECK(exterior_square(cyc({2, 2, 2, 2})).invariant_factors() == Vector(6, 2));
  for (Int g = 1; g <= 5; ++g)
    CHECK(exterior_square(power(cyc({2}), 2 * g)).invariant_factors() == Vector(g * (2 * g - 1), 2));
  CHECK(exterior_square(cyc({2, 4, 12})).invariant_factors() == Vector{2, 2, 4});
  CHECK(direct_sum(cyc({2}), cyc({3})).invariant_factors() == Vector{6});
  CHECK(quotient_by_top_cyclic(cyc({2, 4}), 2).invariant_factors() == Vector{2, 2});
}

TEST_CASE("schur multiplier oracle") {
  CHECK(schur_multiplier_oracle(cyc({2, 2})).invariant_factors() == Vector{2});
  CHECK(schur_multiplier_oracle(cyc({4})).is_trivial());
  CHECK(schur_multiplier_oracle(cyc({2, 4})).invariant_factors() == Vector{2});
  CHECK(schur_multiplier_oracle(cyc({2, 2, 2})).invariant_factors() == Vector{2, 2, 2});
}

TEST_CASE("determinism") {
  const IntMatrix rel{{4, 6, 2}, {2, 8, 10}, {6, 2, 4}};
  const FinAbGroup a = FinAbGroup::from_relations(rel), b = FinAbGroup::from_relations(rel);
  CHECK(a.invariant_factors() == b.invariant_factors());
  CHECK(a.to_canonical_matrix() == b.to_canonical_matrix());
  CHECK(a.lift_matrix() == b.lift_matrix());
}

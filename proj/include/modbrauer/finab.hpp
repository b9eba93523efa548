#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modbrauer/matrix.hpp"

namespace modbrauer {

/// Element of a FinAbGroup in canonical coordinates, reduced modulo the invariant factors.
using Element = Vector;

class InfiniteGroupError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IllDefinedHomError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Finite abelian group Z^m / (column span of a relation matrix).
///
/// Two coordinate systems coexist. Ambient coordinates are vectors in Z^m for the
/// generators of the presentation; canonical coordinates index the invariant-factor
/// decomposition Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k and every d_i >= 2.
/// `to_canonical` and `lift` convert between them. Groups built directly from an
/// invariant-factor list have ambient == canonical and store no transform.
class FinAbGroup {
 public:
  FinAbGroup() = default;

  /// Cokernel of `relations` (rows = ambient generators, columns = relations).
  /// Throws InfiniteGroupError if the cokernel has positive rank.
  static FinAbGroup from_relations(const IntMatrix& relations);
  /// Group whose ambient coordinates are already canonical. Factors of 1 are dropped;
  /// the remaining list must satisfy the divisibility chain.
  static FinAbGroup from_invariant_factors(Vector factors);
  /// Abstract group Z/n_1 + ... + Z/n_r (any orders >= 1), canonicalized by primary
  /// decomposition. Ambient coordinates are canonical; the original summands are forgotten.
  static FinAbGroup from_cyclic_orders(const Vector& orders);
  static FinAbGroup trivial() { return FinAbGroup(); }

  const Vector& invariant_factors() const { return factors_; }
  std::size_t num_factors() const { return factors_.size(); }
  std::size_t ambient_dim() const { return ambient_dim_; }
  const IntMatrix& relation_matrix() const { return relations_; }

  BigInt order() const;
  Int exponent() const;
  bool is_trivial() const { return factors_.empty(); }
  bool is_cyclic() const { return factors_.size() <= 1; }

  Element to_canonical(const Vector& ambient) const;
  Vector lift(const Element& canonical) const;
  /// k x m matrix sending ambient coordinates to (unreduced) canonical coordinates.
  IntMatrix to_canonical_matrix() const;
  /// m x k matrix whose columns are ambient lifts of the canonical generators.
  IntMatrix lift_matrix() const;

  Element reduce(Element e) const;
  Element zero() const { return Element(factors_.size(), 0); }
  Element generator(std::size_t i) const;
  Element add(const Element& a, const Element& b) const;
  Element scale(Int k, const Element& a) const;
  Int element_order(const Element& a) const;
  bool is_zero(const Element& a) const;

  /// All elements in lexicographic order of canonical coordinates. Intended for small groups.
  std::vector<Element> elements() const;

  /// Replace the canonical generators by `generators` (given in canonical coordinates).
  /// They must form a basis adapted to the invariant factors: generator i has order d_i
  /// and together they generate the group. Used to pin generators to preferred elements.
  FinAbGroup rebased(const std::vector<Element>& generators) const;

  bool isomorphic_to(const FinAbGroup& other) const { return factors_ == other.factors_; }

  /// "0", "Z/4", "(Z/2)^15 + Z/4".
  std::string label() const;

 private:
  Vector factors_;
  std::size_t ambient_dim_ = 0;
  IntMatrix relations_;
  // Present only when ambient coordinates differ from canonical ones.
  std::optional<IntMatrix> to_canon_;
  std::optional<IntMatrix> from_canon_;
};

/// Homomorphism between finite abelian groups, stored as an integer matrix acting on
/// canonical coordinates. Construction verifies well-definedness:
/// matrix * (d_i e_i) must vanish in the target for every source invariant factor d_i.
class GroupHom {
 public:
  GroupHom(FinAbGroup source, FinAbGroup target, IntMatrix canonical_matrix);

  /// Matrix given as source-ambient -> target-canonical.
  static GroupHom from_source_ambient(const FinAbGroup& source, const FinAbGroup& target,
                                      const IntMatrix& ambient_to_canonical);
  static GroupHom zero(const FinAbGroup& source, const FinAbGroup& target);

  const FinAbGroup& source() const { return source_; }
  const FinAbGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  Element operator()(const Element& x) const;

 private:
  FinAbGroup source_;
  FinAbGroup target_;
  IntMatrix matrix_;
};

struct Subgroup {
  FinAbGroup group;
  GroupHom inclusion;
};

struct Quotient {
  FinAbGroup group;
  GroupHom projection;
};

struct ImageCokernel {
  FinAbGroup image;
  FinAbGroup cokernel;
};

/// Subgroup of `a` generated by `gens` (canonical coordinates of `a`).
Subgroup subgroup(const FinAbGroup& a, const std::vector<Element>& gens);
/// `a` modulo the subgroup generated by `gens`. The quotient's ambient coordinates are
/// the canonical coordinates of `a`, so `quotient.group.lift` yields representatives in `a`.
Quotient quotient(const FinAbGroup& a, const std::vector<Element>& gens);
ImageCokernel image_cokernel(const GroupHom& f);
Subgroup kernel(const GroupHom& f);

/// Hom(A, Q/Z). A character with canonical coordinates c sends generator e_i to c_i / d_i.
FinAbGroup dual(const FinAbGroup& a);
/// Lambda^2 A = sum over i < j of Z/gcd(d_i, d_j).
FinAbGroup exterior_square(const FinAbGroup& a);
/// A^n.
FinAbGroup power(const FinAbGroup& a, std::size_t n);
/// Abstract direct sum (canonical presentation only).
FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);
/// Quotient of a by a cyclic subgroup of order `k` generated by (d_top / k) times the
/// generator of the largest invariant factor. Requires k | exponent(a).
FinAbGroup quotient_by_top_cyclic(const FinAbGroup& a, Int k);

/// H^2(A, C^*) for trivial action, computed from normalized 2-cocycles with values in
/// Z/|A| modulo coboundaries and the Bockstein images of characters. Independent of
/// `exterior_square`; restricted to |A| <= 16.
FinAbGroup schur_multiplier_oracle(const FinAbGroup& a);

}  // namespace modbrauer

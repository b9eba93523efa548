#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modbrauer/rootdata.hpp"

namespace modbrauer {

/// Admissible forms: sums k_1 b_1 + ... + k_s b_s of the per-factor linking forms.
/// Ambient coordinates of `group` are the coefficient tuples (k_1, ..., k_s).
struct PsiGroup {
  Vector per_factor_orders;
  FinAbGroup group;

  /// The form with coefficients k evaluated on center elements x, y (product ambient coordinates).
  QmodZ evaluate(const CenterData& center, const Vector& k, const Vector& x, const Vector& y) const;
};

PsiGroup psi(const GroupSpec& spec);
/// Forms in Psi vanishing on pi1 x pi1, as a subgroup of psi(spec).group.
Subgroup psi_G(const GroupSpec& spec);

/// b -> b(delta, -). Component mode: Psi(G) -> Hom(Z / pi1, Q/Z).
/// Twisted mode: Psi -> Hom(Z, Q/Z). Throws IllDefinedHomError if a certificate fails.
GroupHom ev(const GroupSpec& spec);
FinAbGroup coker_ev(const GroupSpec& spec);

/// H^1(C, pi1) = pi1^(2g), and its Schur multiplier.
FinAbGroup gamma(const GroupSpec& spec);
FinAbGroup h2_gamma(const GroupSpec& spec);

/// Order of the weight of the generating line bundle on the twisted stack of a simple
/// simply connected group: |Z^dual| / |coker ev|.
Int min_descending_power(const DynkinType& t, const Vector& delta);
/// Brauer group of the regularly stable locus of the twisted moduli space.
FinAbGroup br_twisted_sc(const DynkinType& t, const Vector& delta);
FinAbGroup br_twisted_sc(const std::vector<DynkinType>& factors, const Vector& delta);

/// Which tabulated family a component-mode spec belongs to.
enum class GroupClass {
  SimplyConnected,
  SpecialOrthogonal,     // SO(n), n >= 8
  ProjectiveSymplectic,  // PSp(2n), n >= 3
  ProjectiveOrthogonal,  // PSO(2n), 2n >= 8
  Omega,                 // Spin(4n) / half-spin, 4n >= 12
  Untabulated,
};

struct Classification {
  GroupClass kind = GroupClass::Untabulated;
  /// Dimension of the standard representation (SO, PSO, Omega) or n for PSp(2n).
  int parameter = 0;
  /// Canonical coordinate of delta in the cyclic part used by the tables.
  Int delta_index = 0;
  std::string name;
};

Classification classify(const GroupSpec& spec);

enum class SplitStatus { ProvenSplit, OrderOnly };

struct Piece {
  std::string role;  // "coker_ev", "h2_gamma", "pi1_dual", ...
  FinAbGroup group;
};

/// Brauer group either resolved to an explicit group or known only through graded pieces.
struct BrauerGroup {
  bool resolved = false;
  FinAbGroup group;           // valid when resolved
  std::vector<Piece> pieces;  // summands when resolved, graded pieces otherwise
  SplitStatus split = SplitStatus::OrderOnly;
  std::optional<BigInt> order;
  /// Upper bound for the order when it is not known exactly (the order divides it).
  std::optional<BigInt> order_divides;
  BigInt order_at_least = 1;
};

struct ConsistencyReport {
  enum class Status { Pass, Fail, NotCheckable };
  Status status = Status::NotCheckable;
  std::optional<Int> m;
  BigInt lhs = 0;
  BigInt rhs = 0;
  std::string detail;
};

std::string to_string(ConsistencyReport::Status s);

struct BrauerReport {
  GroupSpec spec;
  Classification classification;
  FinAbGroup center;
  FinAbGroup pi1;
  FinAbGroup psi;
  FinAbGroup psi_G;
  FinAbGroup ev_image;
  FinAbGroup coker_ev;
  FinAbGroup gamma;
  FinAbGroup h2_gamma;
  FinAbGroup pi1_dual;
  /// pi1^dual modulo the image of Pic of the affine Grassmannian, when tabulated.
  std::optional<FinAbGroup> pi1_dual_quotient;
  std::optional<Int> stack_descent_index;
  std::optional<Int> kernel_index_m;
  std::optional<Int> descent_power;
  BrauerGroup stack;
  BrauerGroup moduli;
  ConsistencyReport cross_check;
  std::vector<std::string> notes;

  /// Both groups resolved with explicit isomorphism types.
  bool fully_resolved() const { return stack.resolved && moduli.resolved; }
};

/// Stack analysis only: the moduli field and the cross check are left empty.
BrauerReport br_stack(const GroupSpec& spec);
/// Full analysis. Throws std::logic_error if the order equation
/// |moduli| = |coker ev| * |stack| fails for resolved groups.
BrauerReport br_moduli(const GroupSpec& spec);

ConsistencyReport cross_check(const GroupSpec& spec);

/// Local factoriality of the twisted semistable moduli space for Sp(2n), n >= 3.
bool sp_local_factoriality(int n);

}  // namespace modbrauer

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "modbrauer/finab.hpp"

namespace modbrauer {

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Family { A, B, C, D, E, F, G };

char family_letter(Family f);

/// A simple root system by Cartan-Killing type. Validity: A >= 1, B >= 2, C >= 2, D >= 3,
/// E in {6,7,8}, F = 4, G = 2. D3 is accepted and behaves as A3 (same center and form).
struct DynkinType {
  Family family = Family::A;
  int rank = 1;

  std::string name() const;
  bool simply_laced() const;
  friend bool operator==(const DynkinType&, const DynkinType&) = default;
};

/// Throws SpecError when the rank is not allowed for the family.
DynkinType make_type(Family family, int rank);
/// Parses "A3", "E8", "D10", ...
DynkinType parse_type(std::string_view s);

/// Cartan matrix, A_ij = 2 (a_i, a_j) / (a_j, a_j), Bourbaki numbering.
IntMatrix cartan_matrix(const DynkinType& t);

/// Half the coroot self-pairings under the basic form: 1 for coroots of long roots,
/// 2 or 3 for coroots of short roots.
Vector coroot_norm_halves(const DynkinType& t);

/// Gram matrix of the minimal even W-invariant form on the coroot lattice, in the
/// simple-coroot basis. Short coroots have self-pairing 2.
IntMatrix coroot_gram(const DynkinType& t);

/// Q/Z-valued symmetric bilinear form, stored by its values on the generators of a presentation.
class LinkingForm {
 public:
  LinkingForm() = default;
  explicit LinkingForm(std::vector<std::vector<QmodZ>> values);

  std::size_t dim() const { return values_.size(); }
  const QmodZ& at(std::size_t i, std::size_t j) const { return values_[i][j]; }
  QmodZ operator()(const Vector& x, const Vector& y) const;
  /// Order in Hom(Z (x) Z, Q/Z): lcm of the denominators.
  Int order() const;
  bool is_symmetric() const;
  LinkingForm direct_sum(const LinkingForm& other) const;

 private:
  std::vector<std::vector<QmodZ>> values_;
};

/// True when every nonzero element pairs nontrivially with some generator. Holds for the
/// simply laced types; B(n) and C(2k) carry the zero form on their Z/2 center.
bool is_nondegenerate(const FinAbGroup& z, const LinkingForm& form);

/// Center of a simply connected group with its linking form.
///
/// For a simple type the ambient coordinates of `group` are canonical. For a product the
/// ambient coordinates are the concatenated canonical coordinates of the factors
/// (`offsets[i]` is where factor i starts) and `form` is block diagonal.
struct CenterData {
  FinAbGroup group;
  /// Coweight representative of each canonical generator, in the simple-coroot basis.
  /// Filled for simple types only.
  std::vector<std::vector<Rational>> gen_coords;
  LinkingForm form;

  std::vector<DynkinType> factors;
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> widths;
  /// Simple types: column i holds the canonical coordinates of the class of the i-th
  /// fundamental coweight.
  IntMatrix fundamental_classes;

  /// Ambient block of factor i in x.
  Vector block(const Vector& x, std::size_t i) const;
  /// Embed a vector of factor i's coordinates into the product ambient coordinates.
  Vector embed(const Vector& x, std::size_t i) const;
  /// Restriction of the form to factor i.
  LinkingForm factor_form(std::size_t i) const;
};

CenterData center(const DynkinType& t);
CenterData product_center(const std::vector<DynkinType>& factors);

/// Generators (canonical coordinates of center(t)) of a named central subgroup:
/// "trivial", "full", "so-kernel" (B, D: class of the vector-representation coweight),
/// "omega-kernel" (D with even rank: a half-spin class of order 2), "mu(k)" (A(n-1), k | n).
std::vector<Vector> named_subgroup(const DynkinType& t, std::string_view name);

enum class SpecMode { Component, TwistedSimplyConnected };

/// Input to the engine. Element vectors live in the ambient coordinates of
/// product_center(factors).
struct GroupSpec {
  std::vector<DynkinType> factors;
  std::vector<Vector> pi1_gens;
  Vector delta;
  int genus = 3;
  SpecMode mode = SpecMode::Component;
  bool allow_low_genus = false;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

inline constexpr int kMaxGenus = 64;

/// Checks the invariants of a GroupSpec against its center; throws SpecError.
void validate(const GroupSpec& spec, const CenterData& center);
void validate(const GroupSpec& spec);

}  // namespace modbrauer

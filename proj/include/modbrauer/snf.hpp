#pragma once

#include "modbrauer/matrix.hpp"

namespace modbrauer {

/// U * M * V == S with U, V unimodular and S diagonal, s_1 | s_2 | ... (zeros last).
/// `U_inverse` is tracked alongside so callers can map canonical coordinates back.
struct SmithForm {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  IntMatrix U_inverse;

  // Number of nonzero diagonal entries.
  std::size_t rank() const;
  Vector diagonal() const;
};

/// Smith normal form by repeated smallest-absolute-value pivoting.
/// Ties are broken by lowest row index, then lowest column index, so the output
/// (including U and V) is a deterministic function of M.
SmithForm smith_normal_form(const IntMatrix& M);

/// Columns form a Z-basis of the integer kernel {x in Z^n : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& M);

}  // namespace modbrauer

#include <doctest.h>

#include <random>

#include "modbrauer/snf.hpp"

using namespace modbrauer;

namespace {

// Exact product; transform entries can be large enough for int64 intermediates to overflow.
std::vector<std::vector<BigInt>> product(const IntMatrix& a, const IntMatrix& b) {
  std::vector<std::vector<BigInt>> out(a.rows(), std::vector<BigInt>(b.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) out[i][j] += BigInt(a(i, k)) * b(k, j);
  return out;
}

std::vector<std::vector<BigInt>> product(const std::vector<std::vector<BigInt>>& a, const IntMatrix& b) {
  std::vector<std::vector<BigInt>> out(a.size(), std::vector<BigInt>(b.cols()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k) out[i][j] += a[i][k] * b(k, j);
  return out;
}

std::vector<std::vector<BigInt>> widen(const IntMatrix& a) { return product(a, IntMatrix::identity(a.cols())); }

// Determinant of a small matrix by cofactor expansion in exact arithmetic.
BigInt exact_det(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  BigInt d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    d += (c % 2 ? -1 : 1) * m[0][c] * exact_det(minor);
  }
  return d;
}

bool divisibility_chain(const IntMatrix& s) {
  const std::size_t k = std::min(s.rows(), s.cols());
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const Int a = s(i, i), b = s(i + 1, i + 1);
    if (a < 0 || b < 0) return false;
    if (a == 0 && b != 0) return false;
    if (a != 0 && b % a != 0) return false;
  }
  return true;
}

void check_smith(const IntMatrix& m) {
  const SmithForm f = smith_normal_form(m);
  CHECK(product(product(f.U, m), f.V) == widen(f.S));
  CHECK(f.S.is_diagonal());
  CHECK(divisibility_chain(f.S));
  CHECK(abs(exact_det(widen(f.U))) == 1);
  CHECK(abs(exact_det(widen(f.V))) == 1);
  CHECK(product(f.U, f.U_inverse) == widen(IntMatrix::identity(m.rows())));
}

}  // namespace

TEST_CASE("smith form of small examples") {
  SmithForm f = smith_normal_form({{2, 0}, {0, 3}});
  CHECK(f.diagonal() == Vector{1, 6});
  check_smith({{2, 0}, {0, 3}});

  f = smith_normal_form(IntMatrix(2, 3));
  CHECK(f.S == IntMatrix(2, 3));
  CHECK(f.U == IntMatrix::identity(2));
  CHECK(f.V == IntMatrix::identity(3));

  f = smith_normal_form({{1}});
  CHECK(f.S == IntMatrix{{1}});
}

TEST_CASE("smith form is deterministic and exact on random matrices") {
  std::mt19937 rng(20261018);
  std::uniform_int_distribution<int> size(1, 6), entry(-9, 9);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix m(size(rng), size(rng));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entry(rng);
    check_smith(m);
    const SmithForm a = smith_normal_form(m), b = smith_normal_form(m);
    CHECK(a.U == b.U);
    CHECK(a.V == b.V);
  }
}

TEST_CASE("integer kernel") {
  const IntMatrix m{{1, 2, 3}, {2, 4, 6}};
  const IntMatrix k = integer_kernel(m);
  CHECK(k.cols() == 2);
  CHECK(m * k == IntMatrix(2, 2));
  CHECK(integer_kernel(IntMatrix::identity(3)).cols() == 0);
}

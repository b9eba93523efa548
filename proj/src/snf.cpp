#include "modbrauer/snf.hpp"

#include <optional>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace modbrauer {

namespace {

using Rat = boost::multiprecision::cpp_rational;

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) --q;
  return q;
}

// Nearest integer to a / b.
BigInt round_div(BigInt a, BigInt b) {
  if (b < 0) {
    a = -a;
    b = -b;
  }
  return floor_div(2 * a + b, 2 * b);
}

BigInt round_rat(const Rat& x) { return round_div(numerator(x), denominator(x)); }

// Working matrix with unbounded entries; results are narrowed to Int at the end.
struct BigMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<BigInt> a;

  BigMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  static BigMatrix identity(std::size_t n) {
    BigMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static BigMatrix from(const IntMatrix& src) {
    BigMatrix m(src.rows(), src.cols());
    for (std::size_t r = 0; r < m.rows; ++r)
      for (std::size_t c = 0; c < m.cols; ++c) m(r, c) = src(r, c);
    return m;
  }
  BigInt& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  void add_row(std::size_t dst, std::size_t src, const BigInt& k) {
    for (std::size_t c = 0; c < cols; ++c) (*this)(dst, c) += k * (*this)(src, c);
  }
  void add_col(std::size_t dst, std::size_t src, const BigInt& k) {
    for (std::size_t r = 0; r < rows; ++r) (*this)(r, dst) += k * (*this)(r, src);
  }
  void swap_rows(std::size_t x, std::size_t y) {
    for (std::size_t c = 0; c < cols; ++c) std::swap((*this)(x, c), (*this)(y, c));
  }
  void swap_cols(std::size_t x, std::size_t y) {
    for (std::size_t r = 0; r < rows; ++r) std::swap((*this)(r, x), (*this)(r, y));
  }
  void negate_row(std::size_t x) {
    for (std::size_t c = 0; c < cols; ++c) (*this)(x, c) = -(*this)(x, c);
  }
  void negate_col(std::size_t x) {
    for (std::size_t r = 0; r < rows; ++r) (*this)(r, x) = -(*this)(r, x);
  }
  std::vector<BigInt> row(std::size_t r) const { return {a.begin() + r * cols, a.begin() + (r + 1) * cols}; }
  std::vector<BigInt> col(std::size_t c) const {
    std::vector<BigInt> v(rows);
    for (std::size_t r = 0; r < rows; ++r) v[r] = (*this)(r, c);
    return v;
  }

  IntMatrix narrow() const {
    static const BigInt lo = std::numeric_limits<Int>::min(), hi = std::numeric_limits<Int>::max();
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        const BigInt& v = (*this)(r, c);
        if (v < lo || v > hi) throw ArithmeticOverflow("Smith transform entry exceeds 64 bits");
        m(r, c) = static_cast<Int>(v);
      }
    return m;
  }
};

Rat dot(const std::vector<Rat>& x, const std::vector<Rat>& y) {
  Rat s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// Gram-Schmidt data of a list of integer vectors.
struct GramSchmidt {
  std::vector<std::vector<Rat>> star;
  std::vector<Rat> norm;
  std::vector<std::vector<Rat>> mu;

  explicit GramSchmidt(const std::vector<std::vector<BigInt>>& b) {
    const std::size_t n = b.size();
    star.resize(n);
    norm.resize(n);
    mu.assign(n, std::vector<Rat>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      star[i].assign(b[i].begin(), b[i].end());
      for (std::size_t j = 0; j < i; ++j) {
        const std::vector<Rat> bi(b[i].begin(), b[i].end());
        mu[i][j] = dot(bi, star[j]) / norm[j];
        for (std::size_t k = 0; k < star[i].size(); ++k) star[i][k] -= mu[i][j] * star[j][k];
      }
      norm[i] = dot(star[i], star[i]);
    }
  }
};

class Reducer {
 public:
  explicit Reducer(const IntMatrix& M)
      : S_(BigMatrix::from(M)), U_(BigMatrix::identity(M.rows())), V_(BigMatrix::identity(M.cols())),
        Uinv_(BigMatrix::identity(M.rows())) {}

  SmithForm run() {
    const std::size_t rank = hermite_rows();
    reduce_against_kernel(rank, true);
    hermite_cols(rank);
    reduce_against_kernel(rank, false);
    for (std::size_t t = 0; t < rank; ++t) diagonalize_at(t);
    return SmithForm{U_.narrow(), S_.narrow(), V_.narrow(), Uinv_.narrow()};
  }

 private:
  // Every row operation is mirrored on U and, inverted, on U^-1.
  void row_add(std::size_t dst, std::size_t src, const BigInt& k) {
    if (k == 0) return;
    S_.add_row(dst, src, k);
    U_.add_row(dst, src, k);
    Uinv_.add_col(src, dst, -k);
  }
  void row_swap(std::size_t x, std::size_t y) {
    if (x == y) return;
    S_.swap_rows(x, y);
    U_.swap_rows(x, y);
    Uinv_.swap_cols(x, y);
  }
  void row_negate(std::size_t r) {
    S_.negate_row(r);
    U_.negate_row(r);
    Uinv_.negate_col(r);
  }
  void col_add(std::size_t dst, std::size_t src, const BigInt& k) {
    if (k == 0) return;
    S_.add_col(dst, src, k);
    V_.add_col(dst, src, k);
  }
  void col_swap(std::size_t x, std::size_t y) {
    if (x == y) return;
    S_.swap_cols(x, y);
    V_.swap_cols(x, y);
  }
  void col_negate(std::size_t c) {
    S_.negate_col(c);
    V_.negate_col(c);
  }

  // Row echelon form with entries above each pivot reduced into [0, pivot). Returns the rank.
  std::size_t hermite_rows() {
    std::size_t row = 0;
    for (std::size_t c = 0; c < S_.cols && row < S_.rows; ++c) {
      std::optional<std::size_t> best;
      for (std::size_t r = row; r < S_.rows; ++r)
        if (S_(r, c) != 0 && (!best || abs(S_(r, c)) < abs(S_(*best, c)))) best = r;
      if (!best) continue;
      row_swap(row, *best);
      for (std::size_t r = row + 1; r < S_.rows; ++r)
        while (S_(r, c) != 0) {
          row_add(row, r, -(S_(row, c) / S_(r, c)));
          row_swap(row, r);
        }
      if (S_(row, c) < 0) row_negate(row);
      for (std::size_t i = 0; i < row; ++i) row_add(i, row, -floor_div(S_(i, c), S_(row, c)));
      ++row;
    }
    return row;
  }

  // Same on columns for the first `rank` rows; leaves an invertible lower triangular block.
  void hermite_cols(std::size_t rank) {
    for (std::size_t i = 0; i < rank; ++i) {
      std::optional<std::size_t> best;
      for (std::size_t c = i; c < S_.cols; ++c)
        if (S_(i, c) != 0 && (!best || abs(S_(i, c)) < abs(S_(i, *best)))) best = c;
      col_swap(i, *best);
      for (std::size_t c = i + 1; c < S_.cols; ++c)
        while (S_(i, c) != 0) {
          col_add(i, c, -(S_(i, i) / S_(i, c)));
          col_swap(i, c);
        }
      if (S_(i, i) < 0) col_negate(i);
      for (std::size_t c = 0; c < i; ++c) col_add(c, i, -floor_div(S_(i, c), S_(i, i)));
    }
  }

  // Rows (or columns) from `rank` on span the left (right) kernel. LLL-reduce them, then
  // size-reduce the remaining rows of U (columns of V) against that lattice. S is unchanged
  // because the corresponding rows (columns) of S are zero.
  void reduce_against_kernel(std::size_t rank, bool rows) {
    const std::size_t total = rows ? U_.rows : V_.cols;
    if (rank >= total) return;
    std::vector<std::size_t> idx;
    for (std::size_t i = rank; i < total; ++i) idx.push_back(i);
    auto vec = [&](std::size_t i) { return rows ? U_.row(i) : V_.col(i); };
    auto add = [&](std::size_t dst, std::size_t src, const BigInt& k) {
      rows ? row_add(dst, src, k) : col_add(dst, src, k);
    };
    auto swap = [&](std::size_t x, std::size_t y) { rows ? row_swap(x, y) : col_swap(x, y); };
    auto basis = [&] {
      std::vector<std::vector<BigInt>> b;
      for (std::size_t i : idx) b.push_back(vec(i));
      return b;
    };

    const Rat delta(3, 4);
    std::size_t k = 1;
    while (k < idx.size()) {
      for (std::size_t j = k; j-- > 0;) {
        const GramSchmidt gs(basis());
        add(idx[k], idx[j], -round_rat(gs.mu[k][j]));
      }
      const GramSchmidt gs(basis());
      if (gs.norm[k] >= (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm[k - 1]) {
        ++k;
      } else {
        swap(idx[k], idx[k - 1]);
        k = k > 1 ? k - 1 : 1;
      }
    }

    const GramSchmidt gs(basis());
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = idx.size(); j-- > 0;) {
        const std::vector<BigInt> v = vec(i);
        const Rat m = dot(std::vector<Rat>(v.begin(), v.end()), gs.star[j]) / gs.norm[j];
        add(i, idx[j], -round_rat(m));
      }
  }

  // Smallest-absolute-value pivot (ties: lowest row, then column) on the block from t on.
  std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    BigInt best_abs;
    for (std::size_t r = t; r < S_.rows; ++r)
      for (std::size_t c = t; c < S_.cols; ++c) {
        if (S_(r, c) == 0) continue;
        const BigInt v = abs(S_(r, c));
        if (!best || v < best_abs) {
          best = std::make_pair(r, c);
          best_abs = v;
        }
      }
    return best;
  }

  void diagonalize_at(std::size_t t) {
    for (;;) {
      const auto p = smallest_entry(t);
      row_swap(t, p->first);
      col_swap(t, p->second);
      bool clean = true;
      for (std::size_t r = t + 1; r < S_.rows; ++r) {
        if (S_(r, t) == 0) continue;
        row_add(r, t, -round_div(S_(r, t), S_(t, t)));
        if (S_(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < S_.cols; ++c) {
        if (S_(t, c) == 0) continue;
        col_add(c, t, -round_div(S_(t, c), S_(t, t)));
        if (S_(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: every remaining entry must be a multiple of the pivot.
      std::optional<std::size_t> offending;
      for (std::size_t r = t + 1; r < S_.rows && !offending; ++r)
        for (std::size_t c = t + 1; c < S_.cols; ++c)
          if (S_(r, c) % S_(t, t) != 0) {
            offending = r;
            break;
          }
      if (offending) {
        row_add(t, *offending, 1);
        continue;
      }
      if (S_(t, t) < 0) row_negate(t);
      return;
    }
  }

  BigMatrix S_, U_, V_, Uinv_;
};

}  // namespace

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  const std::size_t n = std::min(S.rows(), S.cols());
  while (r < n && S(r, r) != 0) ++r;
  return r;
}

Vector SmithForm::diagonal() const {
  const std::size_t n = std::min(S.rows(), S.cols());
  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = S(i, i);
  return d;
}

SmithForm smith_normal_form(const IntMatrix& M) { return Reducer(M).run(); }

IntMatrix integer_kernel(const IntMatrix& M) {
  SmithForm f = smith_normal_form(M);
  const std::size_t r = f.rank();
  const std::size_t n = M.cols();
  return f.V.submatrix(0, r, n, n - r);
}

}  // namespace modbrauer

// H^2(A, C^*) by brute-force cochain linear algebra, kept independent of the
// exterior-square formula so the two can be compared.

#include <map>

#include "modbrauer/finab.hpp"

namespace modbrauer {

namespace {

// Linear algebra over the local ring Z/p^e.
class LocalRing {
 public:
  LocalRing(Int p, int e) : p_(p), e_(e), mod_(1) {
    for (int i = 0; i < e; ++i) mod_ *= p;
  }
  Int mod() const { return mod_; }
  int exponent() const { return e_; }
  Int reduce(Int a) const { return mod_floor(a, mod_); }
  int valuation(Int a) const {
    a = reduce(a);
    if (a == 0) return e_;
    int v = 0;
    while (a % p_ == 0) {
      a /= p_;
      ++v;
    }
    return v;
  }
  Int power(int v) const {
    Int r = 1;
    for (int i = 0; i < v; ++i) r *= p_;
    return r;
  }
  Int unit_inverse(Int u) const {
    u = reduce(u);
    for (Int x = 1; x < mod_; ++x)
      if ((u * x) % mod_ == 1) return x;
    throw std::logic_error("not a unit");
  }

 private:
  Int p_;
  int e_;
  Int mod_;
};

// Diagonalizes A over Z/p^e and returns the valuation of each diagonal position
// (min(rows, cols) entries, e for zero). Column operations are mirrored in V and V^-1
// when provided. Rows are dropped as soon as they reduce to zero, which keeps the tall
// coboundary matrices cheap.
std::vector<int> local_smith(const IntMatrix& input, const LocalRing& R, IntMatrix* V, IntMatrix* Vinv) {
  const std::size_t cols = input.cols();
  const std::size_t n = std::min(input.rows(), cols);
  const Int mod = R.mod();
  std::vector<int> vals(n, R.exponent());
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < input.rows(); ++r) {
    Vector row(cols);
    bool nonzero = false;
    for (std::size_t c = 0; c < cols; ++c) nonzero |= (row[c] = R.reduce(input(r, c))) != 0;
    if (nonzero) rows.push_back(std::move(row));
  }

  for (std::size_t t = 0; t < n && t < rows.size(); ++t) {
    int best = R.exponent();
    std::size_t br = 0, bc = 0;
    for (std::size_t r = t; r < rows.size() && best > 0; ++r)
      for (std::size_t c = t; c < cols; ++c) {
        if (rows[r][c] == 0) continue;
        const int v = R.valuation(rows[r][c]);
        if (v < best) {
          best = v;
          br = r;
          bc = c;
          if (v == 0) break;
        }
      }
    if (best == R.exponent()) break;
    std::swap(rows[t], rows[br]);
    if (bc != t) {
      for (Vector& row : rows) std::swap(row[t], row[bc]);
      if (V) V->swap_cols(t, bc);
      if (Vinv) Vinv->swap_rows(t, bc);
    }
    vals[t] = best;
    const Int pv = R.power(best);
    const Int uinv = R.unit_inverse(rows[t][t] / pv);
    const Vector& pivot_row = rows[t];

    for (std::size_t r = t + 1; r < rows.size();) {
      Vector& row = rows[r];
      if (row[t] != 0) {
        const Int f = mod - ((row[t] / pv) * uinv) % mod;
        bool nonzero = false;
        for (std::size_t c = t; c < cols; ++c) nonzero |= (row[c] = (row[c] + f * pivot_row[c]) % mod) != 0;
        if (!nonzero) {
          std::swap(rows[r], rows.back());
          rows.pop_back();
          continue;
        }
      }
      ++r;
    }
    for (std::size_t c = t + 1; c < cols; ++c) {
      if (rows[t][c] == 0) continue;
      const Int f = ((rows[t][c] / pv) * uinv) % mod;
      // col_c -= f col_t; only row t of column t is nonzero at this point.
      rows[t][c] = 0;
      if (V) {
        V->add_col_multiple(c, t, mod - f);
        for (std::size_t i = 0; i < V->rows(); ++i) (*V)(i, c) = R.reduce((*V)(i, c));
      }
      if (Vinv) {
        for (std::size_t i = 0; i < Vinv->cols(); ++i) (*Vinv)(t, i) = ((*Vinv)(t, i) + f * (*Vinv)(c, i)) % mod;
      }
    }
  }
  return vals;
}

// p-primary part of H^2(A, C^*) where p^e exactly divides N = |A|.
Vector schur_primary_part(const FinAbGroup& a, const std::vector<Element>& elems, const std::vector<std::vector<std::size_t>>& sum,
                          Int p, int e) {
  const LocalRing R(p, e);
  const std::size_t N = elems.size();
  const std::size_t m = N - 1;  // nonzero elements, indexed 1..N-1
  auto var = [m](std::size_t x, std::size_t y) { return (x - 1) * m + (y - 1); };
  const std::size_t n2 = m * m;

  // Normalized 3-coboundary operator on normalized 2-cochains.
  IntMatrix D2(m * m * m, n2);
  std::size_t row = 0;
  for (std::size_t x = 1; x < N; ++x)
    for (std::size_t y = 1; y < N; ++y)
      for (std::size_t z = 1; z < N; ++z, ++row) {
        // (df)(x,y,z) = f(y,z) - f(x+y,z) + f(x,y+z) - f(x,y)
        D2(row, var(y, z)) += 1;
        if (sum[x][y] != 0) D2(row, var(sum[x][y], z)) -= 1;
        if (sum[y][z] != 0) D2(row, var(x, sum[y][z])) += 1;
        D2(row, var(x, y)) -= 1;
      }

  IntMatrix Vinv = IntMatrix::identity(n2);
  std::vector<int> vals = local_smith(D2, R, nullptr, &Vinv);
  vals.resize(n2, e);  // columns beyond the row count are unconstrained

  // Kernel generator i is p^(e - w_i) e_i in y = V^-1 x coordinates, of order p^w_i.
  std::vector<int> w(n2);
  for (std::size_t i = 0; i < n2; ++i) w[i] = vals[i];

  std::vector<Vector> relations;
  for (std::size_t g = 1; g < N; ++g) {  // coboundaries of delta functions
    Vector r(n2, 0);
    for (std::size_t x = 1; x < N; ++x)
      for (std::size_t y = 1; y < N; ++y) {
        Int v = (x == g ? 1 : 0) + (y == g ? 1 : 0) - (sum[x][y] == g ? 1 : 0);
        r[var(x, y)] = v;
      }
    relations.push_back(std::move(r));
  }
  const Vector& d = a.invariant_factors();
  for (std::size_t j = 0; j < d.size(); ++j) {  // Bockstein (carry) cocycles of characters
    Vector r(n2, 0);
    for (std::size_t x = 1; x < N; ++x)
      for (std::size_t y = 1; y < N; ++y) r[var(x, y)] = (elems[x][j] + elems[y][j] >= d[j]) ? 1 : 0;
    relations.push_back(std::move(r));
  }

  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < n2; ++i)
    if (w[i] > 0) live.push_back(i);
  if (live.empty()) return {};

  IntMatrix Q(live.size(), live.size() + relations.size());
  for (std::size_t i = 0; i < live.size(); ++i) Q(i, i) = R.power(w[live[i]]);
  for (std::size_t c = 0; c < relations.size(); ++c) {
    Vector y = Vinv * relations[c];
    for (std::size_t i = 0; i < n2; ++i) {
      Int yi = R.reduce(y[i]);
      Int step = R.power(e - w[i]);
      if (yi % step != 0) throw std::logic_error("relation is not a cocycle");
      if (w[i] > 0) {
        auto it = std::lower_bound(live.begin(), live.end(), i);
        Q(static_cast<std::size_t>(it - live.begin()), live.size() + c) = yi / step;
      }
    }
  }
  std::vector<int> qv = local_smith(Q, R, nullptr, nullptr);
  Vector out;
  for (std::size_t i = 0; i < live.size(); ++i) {
    int v = i < qv.size() ? qv[i] : e;
    if (v > 0) out.push_back(R.power(v));
  }
  return out;
}

}  // namespace

FinAbGroup schur_multiplier_oracle(const FinAbGroup& a) {
  if (a.order() > 16) throw std::length_error("schur_multiplier_oracle is limited to groups of order <= 16");
  const std::vector<Element> elems = a.elements();
  const std::size_t N = elems.size();
  if (N == 1) return FinAbGroup::trivial();

  std::map<Element, std::size_t> index;
  for (std::size_t i = 0; i < N; ++i) index.emplace(elems[i], i);
  std::vector<std::vector<std::size_t>> sum(N, std::vector<std::size_t>(N));
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) sum[x][y] = index.at(a.add(elems[x], elems[y]));

  Vector factors;
  Int n = static_cast<Int>(N);
  for (Int p = 2; p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    Vector part = schur_primary_part(a, elems, sum, p, e);
    factors.insert(factors.end(), part.begin(), part.end());
  }
  return FinAbGroup::from_cyclic_orders(factors);
}

}  // namespace modbrauer

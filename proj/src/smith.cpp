#include "plumbhf/smith.hpp"

#include <algorithm>
#include <utility>

namespace plumbhf {

BigMatrix to_big(const IntMatrix& m) {
  BigMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (long long v : m[i]) out[i].emplace_back(static_cast<long>(v));
  }
  return out;
}

namespace {

BigMatrix identity(std::size_t n) {
  BigMatrix id(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

struct Reducer {
  BigMatrix a, u, v;
  std::size_t rows, cols;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  }
  // row i -= q * row j
  void row_sub(std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t c = 0; c < cols; ++c) a[i][c] -= q * a[j][c];
    for (std::size_t c = 0; c < rows; ++c) u[i][c] -= q * u[j][c];
  }
  // col i -= q * col j
  void col_sub(std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t r = 0; r < rows; ++r) a[r][i] -= q * a[r][j];
    for (std::size_t r = 0; r < cols; ++r) v[r][i] -= q * v[r][j];
  }
  void negate_row(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  }

  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    BigInt best;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        BigInt m = abs(a[i][j]);
        if (!found || m < best) {
          best = m;
          pi = i;
          pj = j;
          found = true;
        }
      }
    }
    return found;
  }

  void run() {
    std::size_t t = 0;
    while (t < std::min(rows, cols)) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool dirty = true;
      while (dirty) {
        dirty = false;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (a[i][t] == 0) continue;
          BigInt q;
          mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
          row_sub(i, t, q);
          if (a[i][t] != 0) {
            swap_rows(t, i);
            dirty = true;
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[t][j] == 0) continue;
          BigInt q;
          mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
          col_sub(j, t, q);
          if (a[t][j] != 0) {
            swap_cols(t, j);
            dirty = true;
          }
        }
        if (dirty) continue;
        // the pivot must divide every remaining entry
        for (std::size_t i = t + 1; i < rows && !dirty; ++i) {
          for (std::size_t j = t + 1; j < cols; ++j) {
            if (a[i][j] % a[t][t] != 0) {
              // row t += row i brings the offending entry into the pivot row
              row_sub(t, i, BigInt(-1));
              dirty = true;
              break;
            }
          }
        }
      }
      if (a[t][t] < 0) negate_row(t);
      ++t;
    }
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  Reducer r;
  r.rows = m.size();
  r.cols = m.empty() ? 0 : m[0].size();
  r.a = to_big(m);
  r.u = identity(r.rows);
  r.v = identity(r.cols);
  r.run();
  SmithForm out;
  std::size_t n = std::min(r.rows, r.cols);
  out.diag.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.diag[i] = r.a[i][i];
    if (out.diag[i] != 0) ++out.rank;
  }
  out.U = std::move(r.u);
  out.V = std::move(r.v);
  return out;
}

bool solve_rational(const IntMatrix& a, const IntVector& b, std::vector<Rational>& x) {
  std::size_t n = a.size();
  std::size_t cols = n == 0 ? 0 : a[0].size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(cols + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = static_cast<long>(a[i][j]);
    m[i][cols] = static_cast<long>(b[i]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < n; ++c) {
    std::size_t p = row;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(m[row], m[p]);
    Rational inv = 1 / m[row][c];
    for (std::size_t j = c; j <= cols; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j <= cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i < n; ++i) {
    if (m[i][cols] != 0) return false;
  }
  x.assign(cols, Rational(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = m[i][cols];
  return true;
}

}  // namespace plumbhf

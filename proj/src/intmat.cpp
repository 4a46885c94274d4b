#include "corder/intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "corder/error.hpp"

namespace corder {

IntMat identity_mat(int n) {
  IntMat m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  IntMat out(n, IntVec(p, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (size_t c = 0; c < p; ++c) out[i][c] += a[i][j] * b[j][c];
    }
  return out;
}

IntVec mat_vec(const IntMat& a, const IntVec& v) {
  IntVec out(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

long long mat_det(IntMat a) {
  // Bareiss fraction-free elimination.
  int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  long long prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int swap = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[r][k] != 0) {
          swap = r;
          break;
        }
      if (swap < 0) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

IntMat unimodular_inverse(const IntMat& a) {
  int n = static_cast<int>(a.size());
  long long det = mat_det(a);
  if (det != 1 && det != -1)
    fail(ErrorKind::BadInput, "matrix is not unimodular (det not +-1)");
  // Gauss-Jordan over the rationals would do; with det +-1 integer row
  // reduction via the adjugate is exact and small.
  IntMat adj(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMat minor;
      minor.reserve(n - 1);
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        IntVec row;
        row.reserve(n - 1);
        for (int c = 0; c < n; ++c)
          if (c != j) row.push_back(a[r][c]);
        minor.push_back(std::move(row));
      }
      long long cof = mat_det(std::move(minor));
      adj[j][i] = ((i + j) % 2 == 0 ? cof : -cof) * det;
    }
  return adj;
}

SmithResult smith_normal_form(const IntMat& a) {
  int rows = static_cast<int>(a.size());
  int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  SmithResult res{identity_mat(rows), a, identity_mat(cols)};
  IntMat& s = res.s;
  auto swap_rows = [&](int i, int j) {
    std::swap(s[i], s[j]);
    std::swap(res.u[i], res.u[j]);
  };
  auto swap_cols = [&](int i, int j) {
    for (auto& row : s) std::swap(row[i], row[j]);
    for (auto& row : res.v) std::swap(row[i], row[j]);
  };
  auto add_row = [&](int dst, int src, long long f) {
    for (int c = 0; c < cols; ++c) s[dst][c] += f * s[src][c];
    for (int c = 0; c < rows; ++c) res.u[dst][c] += f * res.u[src][c];
  };
  auto add_col = [&](int dst, int src, long long f) {
    for (int r = 0; r < rows; ++r) s[r][dst] += f * s[r][src];
    for (int r = 0; r < cols; ++r) res.v[r][dst] += f * res.v[r][src];
  };
  auto negate_row = [&](int i) {
    for (auto& x : s[i]) x = -x;
    for (auto& x : res.u[i]) x = -x;
  };

  int t = 0;
  while (t < rows && t < cols) {
    // Deterministic pivot: smallest nonzero |entry| in the remaining
    // block, ties by (row, col).
    int pr = -1, pc = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (s[i][j] != 0 &&
            (pr < 0 || std::abs(s[i][j]) < std::abs(s[pr][pc])))
          pr = i, pc = j;
    if (pr < 0) break;
    swap_rows(t, pr);
    swap_cols(t, pc);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = t + 1; i < rows; ++i) {
        if (s[i][t] == 0) continue;
        long long q = s[i][t] / s[t][t];
        add_row(i, t, -q);
        if (s[i][t] != 0) {
          swap_rows(t, i);
          dirty = true;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (s[t][j] == 0) continue;
        long long q = s[t][j] / s[t][t];
        add_col(j, t, -q);
        if (s[t][j] != 0) {
          swap_cols(t, j);
          dirty = true;
        }
      }
    }
    if (s[t][t] < 0) negate_row(t);
    ++t;
  }
  // Enforce the divisibility chain.
  for (int i = 0; i + 1 < t; ++i) {
    for (int j = i + 1; j < t; ++j) {
      if (s[i][i] == 0 || s[j][j] % s[i][i] == 0) continue;
      // Fold s[j][j] into column i and redo the local elimination.
      add_col(i, j, 1);
      bool dirty = true;
      while (dirty) {
        dirty = false;
        long long g = std::gcd(s[i][i], s[j][i]);
        if (s[j][i] != 0) {
          // Euclidean steps between rows i and j in column i.
          while (s[j][i] != 0) {
            long long q = s[i][i] / s[j][i];
            add_row(i, j, -q);
            swap_rows(i, j);
          }
          (void)g;
          dirty = true;
        }
        if (s[i][j] != 0) {
          long long q = s[i][j] / s[i][i];
          add_col(j, i, -q);
          if (s[i][j] != 0) dirty = true;
        }
      }
      if (s[i][i] < 0) negate_row(i);
      if (s[j][j] < 0) negate_row(j);
    }
  }
  return res;
}

IntMat hermite_column_form(const IntMat& a) {
  int rows = static_cast<int>(a.size());
  int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  IntMat h = a;
  auto col_nonzero = [&](int c, int from_row) {
    for (int r = from_row; r < rows; ++r)
      if (h[r][c] != 0) return true;
    return false;
  };
  int pivot_col = 0;
  for (int r = 0; r < rows && pivot_col < cols; ++r) {
    // Eliminate within row r across columns >= pivot_col via the
    // Euclidean algorithm on column operations.
    bool any = false;
    for (int c = pivot_col; c < cols; ++c)
      if (h[r][c] != 0) any = true;
    if (!any) continue;
    bool dirty = true;
    while (dirty) {
      dirty = false;
      int best = -1;
      for (int c = pivot_col; c < cols; ++c)
        if (h[r][c] != 0 &&
            (best < 0 || std::abs(h[r][c]) < std::abs(h[r][best])))
          best = c;
      for (int c = pivot_col; c < cols; ++c) {
        if (c == best || h[r][c] == 0) continue;
        long long q = h[r][c] / h[r][best];
        for (int rr = 0; rr < rows; ++rr) h[rr][c] -= q * h[rr][best];
        if (h[r][c] != 0) dirty = true;
      }
      if (!dirty) {
        for (int rr = 0; rr < rows; ++rr)
          std::swap(h[rr][pivot_col], h[rr][best]);
      }
    }
    if (h[r][pivot_col] < 0)
      for (int rr = 0; rr < rows; ++rr) h[rr][pivot_col] = -h[rr][pivot_col];
    // Reduce earlier columns against the new pivot.
    for (int c = 0; c < pivot_col; ++c) {
      long long q = h[r][c] / h[r][pivot_col];
      long long rem = h[r][c] - q * h[r][pivot_col];
      if (rem < 0) ++q;
      if (q != 0)
        for (int rr = 0; rr < rows; ++rr) h[rr][c] -= q * h[rr][pivot_col];
    }
    ++pivot_col;
  }
  // Drop zero columns (right of the pivots, if the input was not full
  // column rank) for a canonical shape.
  IntMat out(rows);
  for (int c = 0; c < cols; ++c) {
    bool zero = true;
    for (int r = 0; r < rows; ++r)
      if (h[r][c] != 0) zero = false;
    if (!zero)
      for (int r = 0; r < rows; ++r) out[r].push_back(h[r][c]);
  }
  (void)col_nonzero;
  return out;
}

}  // namespace corder

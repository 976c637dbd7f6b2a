#include "rqf/snf.hpp"

#include <algorithm>

namespace rqf {

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix multiply(const Matrix& A, const Matrix& B) {
  if (A.empty()) return {};
  const std::size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
  Matrix C(n, std::vector<Int>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (A[i][j] == 0) continue;
      for (std::size_t l = 0; l < m; ++l) C[i][l] += A[i][j] * B[j][l];
    }
  return C;
}

namespace {

struct Work {
  Matrix a;
  Matrix v;
  Matrix vi;
  std::size_t rows;
  std::size_t cols;

  void swap_rows(std::size_t i, std::size_t j) { std::swap(a[i], a[j]); }
  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < cols; ++c) a[i][c] += q * a[j][c];
  }
  void negate_row(std::size_t i) {
    for (auto& x : a[i]) x = -x;
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& r : a) std::swap(r[i], r[j]);
    for (auto& r : v) std::swap(r[i], r[j]);
    std::swap(vi[i], vi[j]);
  }
  // col_i += q * col_j; V_inv gets the inverse row operation row_j -= q * row_i.
  void add_col(std::size_t i, std::size_t j, const Int& q) {
    for (auto& r : a) r[i] += q * r[j];
    for (auto& r : v) r[i] += q * r[j];
    for (std::size_t c = 0; c < cols; ++c) vi[j][c] -= q * vi[i][c];
  }
  void negate_col(std::size_t i) {
    for (auto& r : a) r[i] = -r[i];
    for (auto& r : v) r[i] = -r[i];
    for (auto& x : vi[i]) x = -x;
  }
};

}  // namespace

SmithForm smith_normal_form(const Matrix& A) {
  Work w;
  w.rows = A.size();
  w.cols = A.empty() ? 0 : A[0].size();
  w.a = A;
  w.v = identity_matrix(w.cols);
  w.vi = identity_matrix(w.cols);
  const std::size_t n = std::min(w.rows, w.cols);

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Pivot: smallest nonzero |entry| in the trailing block.
      std::size_t pi = w.rows, pj = w.cols;
      for (std::size_t i = t; i < w.rows; ++i)
        for (std::size_t j = t; j < w.cols; ++j)
          if (w.a[i][j] != 0 && (pi == w.rows || abs(w.a[i][j]) < abs(w.a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == w.rows) break;
      if (pi != t) w.swap_rows(pi, t);
      if (pj != t) w.swap_cols(pj, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < w.rows; ++i) {
        if (w.a[i][t] == 0) continue;
        Int q = floor_div(w.a[i][t], w.a[t][t]);
        w.add_row(i, t, -q);
        if (w.a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < w.cols; ++j) {
        if (w.a[t][j] == 0) continue;
        Int q = floor_div(w.a[t][j], w.a[t][t]);
        w.add_col(j, t, -q);
        if (w.a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility of the trailing block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < w.rows && divides; ++i)
        for (std::size_t j = t + 1; j < w.cols; ++j)
          if (w.a[i][j] % w.a[t][t] != 0) {
            w.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (t < w.rows && t < w.cols && w.a[t][t] < 0) w.negate_col(t);
  }

  SmithForm out;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = w.a[i][i];
  out.V = std::move(w.v);
  out.V_inv = std::move(w.vi);
  return out;
}

std::vector<Int> elementary_divisors(const Matrix& A) {
  const std::size_t cols = A.empty() ? 0 : A[0].size();
  SmithForm s = smith_normal_form(A);
  std::vector<Int> out;
  for (const auto& d : s.diagonal)
    if (d != 1) out.push_back(d);
  for (std::size_t i = s.diagonal.size(); i < cols; ++i) out.push_back(0);
  return out;
}

}  // namespace rqf

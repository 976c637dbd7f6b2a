#pragma once

// Smith normal form of integer matrices with the column transform and its
// inverse, enough to read off abelian group structure and change generators.

#include <vector>

#include "rqf/arith.hpp"

namespace rqf {

using Matrix = std::vector<std::vector<Int>>;

struct SmithForm {
  /// Diagonal entries d_1 | d_2 | ... (nonnegative, length min(rows, cols)).
  std::vector<Int> diagonal;
  /// Unimodular V with U * A * V = diag for some unimodular U.
  Matrix V;
  Matrix V_inv;
};

/// Rows are relations, columns are generators.
SmithForm smith_normal_form(const Matrix& A);

/// Elementary divisors of Z^cols / rowspace(A), including zeros for free
/// factors and dropping ones, ascending by divisibility.
std::vector<Int> elementary_divisors(const Matrix& A);

Matrix identity_matrix(std::size_t n);
Matrix multiply(const Matrix& A, const Matrix& B);

}  // namespace rqf

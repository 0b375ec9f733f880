#pragma once

#include "plumbhf/types.hpp"

namespace plumbhf {

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... (all >= 0).
struct SmithForm {
  std::vector<BigInt> diag;  // length min(rows, cols)
  BigMatrix U;               // rows x rows
  BigMatrix V;               // cols x cols
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& a);

// Rational solution of A x = b for square A, or nullopt-like flag when inconsistent.
bool solve_rational(const IntMatrix& a, const IntVector& b, std::vector<Rational>& x);

BigMatrix to_big(const IntMatrix& m);

}  // namespace plumbhf

#pragma once

#include "abc/matrix.hpp"

#include <vector>

namespace abc {

// U * A * V = diag(d_1, ..., d_r, 0, ...) with d_i >= 0, d_i | d_(i+1), and
// U, V unimodular.
struct SmithForm {
  BigMatrix U;
  BigMatrix V;
  std::vector<BigInt> diagonal;  // min(rows, cols) entries

  bool finite_quotient() const;  // square input with every d_i != 0
  BigInt quotient_order() const;  // product of the d_i; 0 when infinite
};

SmithForm smith_normal_form(const BigMatrix& a);

// Z-basis (as columns) of the integer kernel of a.
std::vector<std::vector<BigInt>> integer_kernel(const BigMatrix& a);
// Z-basis of a complement-free spanning set of the rational column space of a.
std::vector<std::vector<BigInt>> rational_image_basis(const BigMatrix& a);

}  // namespace abc

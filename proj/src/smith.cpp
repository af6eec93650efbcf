#include "abc/smith.hpp"

#include <algorithm>

namespace abc {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void row_axpy(BigMatrix& m, std::size_t dst, std::size_t src, const BigInt& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= f * m(src, j);
}

void col_axpy(BigMatrix& m, std::size_t dst, std::size_t src, const BigInt& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= f * m(i, src);
}

}  // namespace

bool SmithForm::finite_quotient() const {
  if (U.rows() != V.rows()) return false;
  return std::none_of(diagonal.begin(), diagonal.end(), [](const BigInt& d) { return d == 0; });
}

BigInt SmithForm::quotient_order() const {
  if (!finite_quotient()) return 0;
  BigInt prod = 1;
  for (const auto& d : diagonal) prod *= d;
  return prod;
}

SmithForm smith_normal_form(const BigMatrix& input) {
  const std::size_t n = input.rows(), m = input.cols();
  BigMatrix a = input;
  SmithForm out{BigMatrix::identity(n), BigMatrix::identity(m), {}};
  BigMatrix& U = out.U;
  BigMatrix& V = out.V;

  for (std::size_t t = 0; t < std::min(n, m); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    auto place_min_pivot = [&]() -> bool {
      std::size_t bi = n, bj = m;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < m; ++j)
          if (a(i, j) != 0 && (bi == n || abs(a(i, j)) < abs(a(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == n) return false;
      if (bi != t) {
        a.swap_rows(t, bi);
        U.swap_rows(t, bi);
      }
      if (bj != t) {
        a.swap_cols(t, bj);
        V.swap_cols(t, bj);
      }
      return true;
    };
    if (!place_min_pivot()) break;

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        const BigInt q = floor_div(a(i, t), a(t, t));
        row_axpy(a, i, t, q);
        row_axpy(U, i, t, q);
        dirty = dirty || a(i, t) != 0;
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        if (a(t, j) == 0) continue;
        const BigInt q = floor_div(a(t, j), a(t, t));
        col_axpy(a, j, t, q);
        col_axpy(V, j, t, q);
        dirty = dirty || a(t, j) != 0;
      }
      if (dirty) {
        place_min_pivot();
        continue;
      }
      // Enforce the divisibility chain: fold an offending row into row t.
      bool folded = false;
      for (std::size_t i = t + 1; i < n && !folded; ++i)
        for (std::size_t j = t + 1; j < m && !folded; ++j)
          if (a(i, j) % a(t, t) != 0) {
            row_axpy(a, t, i, BigInt(-1));
            row_axpy(U, t, i, BigInt(-1));
            folded = true;
          }
      if (!folded) break;
      place_min_pivot();
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < m; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < n; ++j) U(t, j) = -U(t, j);
    }
  }
  for (std::size_t t = 0; t < std::min(n, m); ++t) out.diagonal.push_back(a(t, t));
  return out;
}

std::vector<std::vector<BigInt>> integer_kernel(const BigMatrix& a) {
  // A x = 0  <=>  D (V^-1 x) = 0, so the columns of V beyond the rank span it.
  const SmithForm s = smith_normal_form(a);
  std::vector<std::vector<BigInt>> basis;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (j >= s.diagonal.size() || s.diagonal[j] == 0) basis.push_back(s.V.column(j));
  return basis;
}

std::vector<std::vector<BigInt>> rational_image_basis(const BigMatrix& a) {
  // A = U^-1 D V^-1; the image is spanned by the columns of U^-1 with d_i != 0.
  const SmithForm s = smith_normal_form(a);
  const RatMatrix uinv = rational_inverse(matrix_cast<Rational>(s.U));
  std::vector<std::vector<BigInt>> basis;
  for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
    if (s.diagonal[i] == 0) continue;
    std::vector<BigInt> col(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) col[r] = BigInt(numerator(uinv(r, i)));
    basis.push_back(std::move(col));
  }
  return basis;
}

}  // namespace abc

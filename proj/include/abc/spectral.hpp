#pragma once

#include "abc/ball.hpp"
#include "abc/matrix.hpp"

#include <cstdint>
#include <vector>

namespace abc {

using Polynomial = std::vector<BigInt>;  // coefficients, constant term first

std::uint64_t euler_phi(std::uint64_t d);
Polynomial cyclotomic_polynomial(std::uint64_t d);
BigMatrix evaluate_polynomial(const Polynomial& p, const BigMatrix& m);

// Every d with phi(d) <= n; these are the only possible orders of
// root-of-unity eigenvalues of an n x n rational matrix.
std::vector<std::uint64_t> cyclotomic_candidates(std::size_t n);

// All d such that Phi_d(M) is singular, i.e. M has a primitive d-th root of
// unity as an eigenvalue. Exact integer arithmetic throughout.
std::vector<std::uint64_t> cyclotomic_orders(const IntMatrix& m);
// lcm of cyclotomic_orders(m); 1 when there are none.
std::uint64_t periodic_exponent(const IntMatrix& m);

// Z-basis of the periodic points P = ker_Z(M^N - I).
std::vector<IntVec> periodic_subgroup_basis(const IntMatrix& m);

// Tests membership in the Z-span of a set of integer vectors.
class SublatticeTest {
 public:
  SublatticeTest(const std::vector<IntVec>& basis, std::size_t dim);
  bool contains(const IntVec& v) const;

 private:
  std::size_t dim_;
  BigMatrix U_;
  std::vector<BigInt> diagonal_;
};

// Q^n = ker (M^N - I)^n  (+)  im (M^N - I)^n with the projection onto the first
// summand along the second.
struct ProjectionSetup {
  std::uint64_t exponent = 1;     // N
  std::size_t periodic_rank = 0;  // n'
  std::vector<IntVec> basis;      // v_1..v_n; the first n' span the kernel
  BigInt denominator;             // L with (1/L)<v_1..v_n> containing Z^n
  RatMatrix epsilon;              // projection matrix
};

ProjectionSetup ru_projection_setup(const IntMatrix& m);
std::vector<Rational> epsilon(const ProjectionSetup& setup, const std::vector<Rational>& v);
std::vector<Rational> to_rational(const IntVec& v);

struct SpectralRow {
  std::size_t r = 0;
  std::size_t ball = 0;
  std::size_t p_count = 0;  // |P cap S^r|
  Rational eps_max = 0;     // max ||eps(w)||_inf over K cap S^r
};

std::vector<std::size_t> relative_growth_table(const BallIndex& index, const std::vector<IntVec>& p_basis);
std::vector<Rational> epsilon_norm_table(const BallIndex& index, const ProjectionSetup& setup);
std::vector<SpectralRow> spectral_table(const BallIndex& index);

// Least-squares slope of log(y) against log(x) (or against x when log_x is false).
double fit_slope(const std::vector<double>& x, const std::vector<double>& y, bool log_x);

}  // namespace abc

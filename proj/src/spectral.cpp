#include "abc/spectral.hpp"

#include "abc/smith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace abc {

std::uint64_t euler_phi(std::uint64_t d) {
  std::uint64_t result = d;
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    while (d % p == 0) d /= p;
    result -= result / p;
  }
  if (d > 1) result -= result / d;
  return result;
}

namespace {

// Exact division of polynomials with integer coefficients, monic divisor.
Polynomial divide_exact(Polynomial num, const Polynomial& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) throw Error("polynomial division degree mismatch");
  Polynomial q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const BigInt c = num[i] / den[dn];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (const auto& c : num)
    if (c != 0) throw Error("polynomial division is not exact");
  return q;
}

}  // namespace

Polynomial cyclotomic_polynomial(std::uint64_t d) {
  if (d == 0) throw Error("cyclotomic polynomial of order 0");
  Polynomial p(d + 1, 0);
  p[0] = -1;
  p[d] = 1;
  for (std::uint64_t e = 1; e < d; ++e)
    if (d % e == 0) p = divide_exact(std::move(p), cyclotomic_polynomial(e));
  return p;
}

BigMatrix evaluate_polynomial(const Polynomial& p, const BigMatrix& m) {
  const std::size_t n = m.rows();
  BigMatrix acc(n, n);
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * m;
    for (std::size_t k = 0; k < n; ++k) acc(k, k) += p[i];
  }
  return acc;
}

std::vector<std::uint64_t> cyclotomic_candidates(std::size_t n) {
  // phi(d) >= sqrt(d/2), so phi(d) <= n forces d <= 2n^2.
  std::vector<std::uint64_t> out;
  const std::uint64_t bound = 2 * static_cast<std::uint64_t>(n) * n + 2;
  for (std::uint64_t d = 1; d <= bound; ++d)
    if (euler_phi(d) <= n) out.push_back(d);
  return out;
}

std::vector<std::uint64_t> cyclotomic_orders(const IntMatrix& m) {
  if (!m.square()) throw Error("cyclotomic test needs a square matrix");
  const BigMatrix big = matrix_cast<BigInt>(m);
  std::vector<std::uint64_t> out;
  for (std::uint64_t d : cyclotomic_candidates(m.rows()))
    if (determinant(evaluate_polynomial(cyclotomic_polynomial(d), big)) == 0) out.push_back(d);
  return out;
}

std::uint64_t periodic_exponent(const IntMatrix& m) {
  std::uint64_t n = 1;
  for (auto d : cyclotomic_orders(m)) n = std::lcm(n, d);
  return n;
}

namespace {

IntVec to_int_vec(const std::vector<BigInt>& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
      throw Error("basis vector does not fit in 64 bits");
    out.push_back(static_cast<std::int64_t>(x));
  }
  return out;
}

// Divides out the content so each vector is primitive with a positive leading entry.
std::vector<BigInt> primitive(std::vector<BigInt> v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) return v;
  for (auto& x : v) x /= g;
  auto lead = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
  if (lead != v.end() && *lead < 0)
    for (auto& x : v) x = -x;
  return v;
}

BigMatrix shifted_power(const IntMatrix& m, std::uint64_t n) {
  return matrix_power(matrix_cast<BigInt>(m), n) - BigMatrix::identity(m.rows());
}

}  // namespace

std::vector<IntVec> periodic_subgroup_basis(const IntMatrix& m) {
  std::vector<IntVec> out;
  for (auto& v : integer_kernel(shifted_power(m, periodic_exponent(m)))) out.push_back(to_int_vec(v));
  return out;
}

SublatticeTest::SublatticeTest(const std::vector<IntVec>& basis, std::size_t dim) : dim_(dim) {
  BigMatrix b(dim, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != dim) throw Error("basis vector has the wrong dimension");
    for (std::size_t i = 0; i < dim; ++i) b(i, j) = basis[j][i];
  }
  if (basis.empty()) {
    U_ = BigMatrix::identity(dim);
    return;
  }
  SmithForm s = smith_normal_form(b);
  U_ = std::move(s.U);
  diagonal_ = std::move(s.diagonal);
}

bool SublatticeTest::contains(const IntVec& v) const {
  // B c = v  <=>  D (V^-1 c) = U v.
  for (std::size_t i = 0; i < dim_; ++i) {
    BigInt x = 0;
    for (std::size_t j = 0; j < dim_; ++j)
      if (v[j] != 0) x += U_(i, j) * v[j];
    const BigInt d = i < diagonal_.size() ? diagonal_[i] : BigInt(0);
    if (d == 0 ? x != 0 : x % d != 0) return false;
  }
  return true;
}

ProjectionSetup ru_projection_setup(const IntMatrix& m) {
  const std::size_t n = m.rows();
  ProjectionSetup s;
  s.exponent = periodic_exponent(m);
  const BigMatrix a = matrix_power(shifted_power(m, s.exponent), n);
  auto ker = integer_kernel(a);
  auto img = rational_image_basis(a);
  if (ker.size() + img.size() != n) throw Error("kernel and image of (M^N - I)^n are not complementary");
  s.periodic_rank = ker.size();
  RatMatrix b(n, n);
  std::size_t col = 0;
  for (auto* part : {&ker, &img})
    for (auto& v : *part) {
      auto p = primitive(std::move(v));
      for (std::size_t i = 0; i < n; ++i) b(i, col) = Rational(p[i]);
      s.basis.push_back(to_int_vec(p));
      ++col;
    }
  const RatMatrix binv = rational_inverse(b);
  s.denominator = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const BigInt den(denominator(binv(i, j)));
      s.denominator = s.denominator / gcd(s.denominator, den) * den;
    }
  RatMatrix keep(n, n);
  for (std::size_t i = 0; i < s.periodic_rank; ++i) keep(i, i) = 1;
  s.epsilon = b * keep * binv;
  return s;
}

std::vector<Rational> to_rational(const IntVec& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(x);
  return out;
}

std::vector<Rational> epsilon(const ProjectionSetup& setup, const std::vector<Rational>& v) {
  return setup.epsilon.apply(v);
}

std::vector<std::size_t> relative_growth_table(const BallIndex& index, const std::vector<IntVec>& p_basis) {
  const GroupContext& ctx = index.context();
  if (ctx.family() != Family::matrix) throw Error("relative growth table needs a matrix-family ball");
  const SublatticeTest test(p_basis, ctx.dim());
  std::vector<std::size_t> counts;
  std::size_t running = 0;
  for (std::size_t r = 0; r <= index.radius(); ++r) {
    for (const auto& e : index.sphere(r))
      if (e.element.texp == 0 && test.contains(std::get<IntVec>(e.element.kpart))) ++running;
    counts.push_back(running);
  }
  return counts;
}

std::vector<Rational> epsilon_norm_table(const BallIndex& index, const ProjectionSetup& setup) {
  const GroupContext& ctx = index.context();
  if (ctx.family() != Family::matrix) throw Error("epsilon table needs a matrix-family ball");
  const std::size_t n = ctx.dim();
  // Integer numerator matrix over a common denominator.
  BigInt den = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const BigInt d(denominator(setup.epsilon(i, j)));
      den = den / gcd(den, d) * d;
    }
  BigMatrix num(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) num(i, j) = BigInt(numerator(setup.epsilon(i, j) * Rational(den)));

  std::vector<Rational> out;
  BigInt best = 0;
  for (std::size_t r = 0; r <= index.radius(); ++r) {
    for (const auto& e : index.sphere(r)) {
      if (e.element.texp != 0) continue;
      const auto& v = std::get<IntVec>(e.element.kpart);
      for (std::size_t i = 0; i < n; ++i) {
        BigInt x = 0;
        for (std::size_t j = 0; j < n; ++j)
          if (v[j] != 0) x += num(i, j) * v[j];
        best = std::max(best, BigInt(abs(x)));
      }
    }
    out.emplace_back(Rational(best) / Rational(den));
  }
  return out;
}

std::vector<SpectralRow> spectral_table(const BallIndex& index) {
  const IntMatrix& m = index.context().matrix();
  const auto counts = relative_growth_table(index, periodic_subgroup_basis(m));
  const auto norms = epsilon_norm_table(index, ru_projection_setup(m));
  std::vector<SpectralRow> rows;
  for (std::size_t r = 0; r <= index.radius(); ++r) rows.push_back({r, index.ball_size(r), counts[r], norms[r]});
  return rows;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y, bool log_x) {
  if (x.size() != y.size() || x.size() < 2) throw Error("slope fit needs at least two points");
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = log_x ? std::log(x[i]) : x[i];
    const double yi = std::log(y[i]);
    sx += xi;
    sy += yi;
    sxx += xi * xi;
    sxy += xi * yi;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace abc

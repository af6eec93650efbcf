#include "abc/ball.hpp"
#include "abc/conjugacy.hpp"
#include "abc/smith.hpp"

#include "doctest.h"

#include <map>
#include <random>
#include <set>

using namespace abc;

namespace {

bool unimodular(const BigMatrix& m) {
  const BigInt d = determinant(m);
  return d == 1 || d == -1;
}

void check_smith(const BigMatrix& a) {
  const SmithForm s = smith_normal_form(a);
  CHECK(unimodular(s.U));
  CHECK(unimodular(s.V));
  const BigMatrix d = s.U * a * s.V;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (i != j) CHECK(d(i, j) == 0);
      else CHECK(d(i, i) == s.diagonal[i]);
    }
  for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
    CHECK(s.diagonal[i] >= 0);
    if (i + 1 < s.diagonal.size() && s.diagonal[i] != 0) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
    if (i + 1 < s.diagonal.size() && s.diagonal[i] == 0) CHECK(s.diagonal[i + 1] == 0);
  }
}

void check_generator_invariance(const GroupContext& ctx, std::size_t r) {
  const ConjugacyKeyer keyer(ctx);
  const auto ball = enumerate_ball(ctx, r);
  for (const auto& e : ball.entries()) {
    const ConjugacyKey k = keyer.key(e.element);
    for (const auto& s : ctx.generators()) CHECK(keyer.key(ctx.conjugate(s, e.element)) == k);
  }
}

}  // namespace

TEST_CASE("Smith normal form examples") {
  const auto id = smith_normal_form(BigMatrix::identity(3));
  CHECK(id.diagonal == std::vector<BigInt>{1, 1, 1});
  const BigMatrix a{{-4, -3}, {-3, -1}};
  const auto s = smith_normal_form(a);
  CHECK(s.diagonal == std::vector<BigInt>{1, 5});
  CHECK(s.finite_quotient());
  CHECK(s.quotient_order() == 5);
  check_smith(a);
  const auto z = smith_normal_form(BigMatrix(1, 1));
  CHECK(z.diagonal == std::vector<BigInt>{0});
  CHECK(!z.finite_quotient());
}

TEST_CASE("Smith normal form on random matrices") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(-6, 6), dim(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    BigMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = entry(rng);
    if (r == c) {
      check_smith(a);
      CHECK(smith_normal_form(a).quotient_order() == abs(determinant(a)));
    }
    const auto ker = integer_kernel(a);
    for (const auto& v : ker) {
      CHECK(a.apply(v) == std::vector<BigInt>(r, 0));
    }
  }
}

TEST_CASE("lattice quotient for the cat map") {
  const IntMatrix m{{2, 1}, {1, 1}};
  CHECK(lattice_quotient(m, 2).smith.diagonal == std::vector<BigInt>{1, 5});
  CHECK(lattice_quotient(m, 1).smith.quotient_order() == 1);
}

TEST_CASE("bs key examples") {
  const auto ctx = bs_context(2);
  const ConjugacyKeyer keyer(ctx);
  CHECK(bs_residue(KFraction{3, 0}, 2, 2) == 0);
  CHECK(bs_residue(KFraction{6, 0}, 2, 2) == 0);
  CHECK(keyer.are_conjugate(bs_element(ctx, 3, 2), bs_element(ctx, 6, 2)));
  CHECK(keyer.are_conjugate(bs_element(ctx, 1, 1), bs_element(ctx, 5, 1)));
  CHECK(keyer.are_conjugate(bs_element(ctx, 1, 2), bs_element(ctx, 2, 2)));
  CHECK(!keyer.are_conjugate(bs_element(ctx, 1, 3), bs_element(ctx, 3, 3)));
  CHECK(!keyer.are_conjugate(bs_element(ctx, 1, 1), bs_element(ctx, 1, 2)));
  CHECK(keyer.are_conjugate(bs_element(ctx, 1, 0), bs_element(ctx, 4, 0)));
  CHECK(keyer.are_conjugate(bs_element(ctx, 3, 5, 0), bs_element(ctx, 6, 0)));
  CHECK(!keyer.are_conjugate(bs_element(ctx, 1, 0), bs_element(ctx, -1, 0)));
  CHECK(!keyer.are_conjugate(bs_element(ctx, 1, 0), bs_element(ctx, 3, 0)));
  // Negative t-exponents use modulus k^|p| - 1.
  CHECK(keyer.are_conjugate(bs_element(ctx, 1, -2), bs_element(ctx, 2, -2)));
  CHECK(!keyer.are_conjugate(bs_element(ctx, 1, -3), bs_element(ctx, 3, -3)));
  const Element g = bs_element(ctx, 7, 3, 2);
  CHECK(keyer.are_conjugate(g, g));
}

TEST_CASE("lamplighter key examples") {
  const auto ctx = lamplighter_context(2);
  const ConjugacyKeyer keyer(ctx);
  CHECK(keyer.are_conjugate(lamp_element(ctx, {{0, 1}, {3, 1}}, 2), lamp_element(ctx, {{1, 1}, {2, 1}}, 2)));
  CHECK(!keyer.are_conjugate(lamp_element(ctx, {{0, 1}, {2, 1}}, 2), lamp_element(ctx, {{0, 1}, {1, 1}}, 2)));
  CHECK(keyer.are_conjugate(lamp_element(ctx, {{0, 1}, {2, 1}}, 0), lamp_element(ctx, {{5, 1}, {7, 1}}, 0)));
  CHECK(!keyer.are_conjugate(lamp_element(ctx, {{0, 1}, {2, 1}}, 0), lamp_element(ctx, {{0, 1}, {3, 1}}, 0)));
  const auto z3 = lamplighter_context(3);
  const ConjugacyKeyer k3(z3);
  // Block sums (1,2) and (2,1) are rotations of each other.
  CHECK(k3.are_conjugate(lamp_element(z3, {{0, 1}, {1, 2}}, 2), lamp_element(z3, {{0, 2}, {1, 1}}, 2)));
  CHECK(!k3.are_conjugate(lamp_element(z3, {{0, 1}}, 1), lamp_element(z3, {{0, 2}}, 1)));
}

TEST_CASE("lamplighter kernel fact: zero block sums iff in (1 - phi^n)K") {
  std::mt19937_64 rng(11);
  for (std::int64_t m : {2, 3, 0}) {
    const auto ctx = lamplighter_context(m);
    const ConjugacyKeyer keyer(ctx);
    std::uniform_int_distribution<std::int64_t> pos(-6, 6), val(-3, 3), per(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
      const std::int64_t n = per(rng);
      std::vector<std::pair<std::int64_t, std::int64_t>> raw;
      for (int i = 0; i < 5; ++i) raw.emplace_back(pos(rng), val(rng));
      KPart f = ctx.canonicalize(Lamps{raw});

      // Explicit preimage: h(j + n i) = sum over i' <= i of f(j + n i').
      std::map<std::int64_t, std::int64_t> h;
      const auto& entries = std::get<Lamps>(f).entries;
      const std::int64_t hi = entries.empty() ? 0 : entries.back().first;
      for (auto [i, v] : entries)
        for (std::int64_t x = i; x <= hi + n; x += n) h[x] += v;
      std::vector<std::pair<std::int64_t, std::int64_t>> hv(h.begin(), h.end());
      // Drop the tail beyond the support; it is constant per class and is zero
      // exactly when that class's block sum vanishes.
      std::vector<std::int64_t> sums(static_cast<std::size_t>(n), 0);
      for (auto [i, v] : entries) sums[static_cast<std::size_t>(((i % n) + n) % n)] += v;
      bool zero_sums = true;
      for (auto s : sums) zero_sums = zero_sums && (m == 0 ? s == 0 : s % m == 0);

      std::vector<std::pair<std::int64_t, std::int64_t>> finite;
      for (auto [x, v] : hv)
        if (x <= hi) finite.emplace_back(x, v);
      const KPart hk = ctx.canonicalize(Lamps{finite});
      const KPart image = ctx.add(hk, ctx.negate(ctx.phi_power(hk, n)));
      if (zero_sums) CHECK(image == f);
      CHECK(zero_sums == (keyer.key(Element{f, n}) == keyer.key(Element{ctx.zero(), n})));
    }
  }
}

TEST_CASE("matrix keys") {
  const auto ctx = matrix_context(IntMatrix{{2, 1}, {1, 1}});
  const ConjugacyKeyer keyer(ctx);
  // det(I - M) = -1: every (v, t) is conjugate to (0, t).
  for (std::int64_t a = -3; a <= 3; ++a)
    for (std::int64_t b = -3; b <= 3; ++b)
      CHECK(keyer.are_conjugate(vec_element(ctx, {a, b}, 1), vec_element(ctx, {0, 0}, 1)));
  // Z/5 for p = 2, with orbits of M acting on it.
  std::set<std::string> classes;
  for (std::int64_t a = 0; a < 5; ++a)
    for (std::int64_t b = 0; b < 5; ++b) classes.insert(keyer.key(vec_element(ctx, {a, b}, 2)).encode());
  CHECK(classes.size() >= 2);
  CHECK(classes.size() <= 5);
  CHECK(keyer.are_conjugate(vec_element(ctx, {1, 0}, 0), vec_element(ctx, {2, 1}, 0)));
  CHECK(!keyer.are_conjugate(vec_element(ctx, {1, 0}, 0), vec_element(ctx, {2, 0}, 0)));

  const auto periodic = matrix_context(IntMatrix{{1, 0, 0}, {0, 2, 1}, {0, 1, 1}});
  const ConjugacyKeyer refused(periodic);
  CHECK_THROWS_AS(refused.key(periodic.identity()), Error);
}

TEST_CASE("keys are invariant under conjugation by generators") {
  check_generator_invariance(bs_context(2), 8);
  check_generator_invariance(bs_context(3), 8);
  check_generator_invariance(lamplighter_context(2), 10);
  check_generator_invariance(lamplighter_context(3), 6);
  check_generator_invariance(matrix_context(IntMatrix{{2, 1}, {1, 1}}), 6);
}

TEST_CASE("inverse compatibility") {
  for (const auto& ctx : {bs_context(2), lamplighter_context(2), matrix_context(IntMatrix{{2, 1}, {1, 1}})}) {
    const ConjugacyKeyer keyer(ctx);
    const auto ball = enumerate_ball(ctx, 4);
    std::vector<ConjugacyKey> keys, inv_keys;
    for (const auto& e : ball.entries()) {
      keys.push_back(keyer.key(e.element));
      inv_keys.push_back(keyer.key(ctx.invert(e.element)));
    }
    for (std::size_t i = 0; i < keys.size(); ++i)
      for (std::size_t j = i + 1; j < keys.size(); ++j) CHECK((keys[i] == keys[j]) == (inv_keys[i] == inv_keys[j]));
  }
}

TEST_CASE("brute-force oracle") {
  const auto ctx = bs_context(2);
  const auto ball = enumerate_ball(ctx, 12);
  const ConjugacyKeyer keyer(ctx);

  const Partition discrete = brute_force_partition(ball, 4, 0);
  CHECK(discrete.block_count() == ball.ball_size(4));

  const Partition keys = key_partition(ball, 4, keyer);
  Partition prev = discrete;
  for (std::size_t rc : {2, 4, 8, 12}) {
    const Partition p = brute_force_partition(ball, 4, rc);
    // Monotone coarsening: blocks of the smaller radius stay together.
    for (std::size_t i = 0; i < p.block.size(); ++i) CHECK(p.block[prev.block[i]] == p.block[i]);
    CHECK(compare_partitions(keys, p).split_count == 0);
    prev = p;
  }
  const auto cmp = compare_partitions(keys, prev);
  CHECK(cmp.agree());
  CHECK(cmp.key_classes == 19);

  CHECK_THROWS_AS(brute_force_partition(ball, 4, 13), Error);
  CHECK(brute_force_partition(ball, 4, 12, 1) == brute_force_partition(ball, 4, 12, 3));
}

TEST_CASE("keys agree with the oracle at RC = r + 8") {
  struct Case {
    GroupContext ctx;
    std::size_t r;
  };
  for (auto& [ctx, r] : std::vector<Case>{{lamplighter_context(2), 4}, {lamplighter_context(3), 3},
                                          {bs_context(3), 3}, {lamplighter_context(0), 3}}) {
    const auto ball = enumerate_ball(ctx, r + 8);
    const ConjugacyKeyer keyer(ctx);
    const auto cmp = compare_partitions(key_partition(ball, r, keyer), brute_force_partition(ball, r, r + 8));
    CHECK(cmp.agree());
  }
}

TEST_CASE("matrix keys are sound against the oracle") {
  const auto ctx = matrix_context(IntMatrix{{2, 1}, {1, 1}});
  const auto ball = enumerate_ball(ctx, 7);
  const ConjugacyKeyer keyer(ctx);
  const auto cmp = compare_partitions(key_partition(ball, 3, keyer), brute_force_partition(ball, 3, 7));
  CHECK(cmp.split_count == 0);
  MESSAGE("matrix r=3 RC=7: key classes " << cmp.key_classes << ", oracle classes " << cmp.oracle_classes);
}

TEST_CASE("union-find") {
  UnionFind uf(6);
  CHECK(uf.unite(0, 1));
  CHECK(uf.unite(2, 3));
  CHECK(!uf.unite(1, 0));
  CHECK(uf.unite(1, 3));
  CHECK(uf.find(0) == uf.find(2));
  CHECK(uf.find(4) != uf.find(5));
}

#include "abc/folner.hpp"

#include "doctest.h"

using namespace abc;

TEST_CASE("Folner boxes") {
  const auto bs2 = bs_context(2);
  const auto f1 = folner_box(bs2, 1);
  CHECK(f1.elements.size() == 8);
  for (const auto& g : f1.elements) CHECK(g.texp == 0);
  CHECK(folner_box(bs2, 2).elements.size() == 128);
  CHECK(folner_box(bs_context(3), 1).elements.size() == 27);
  for (const auto& g : folner_box(bs2, 2).elements) CHECK(std::get<KFraction>(g.kpart).exp <= 2);
  CHECK_THROWS_AS(folner_box(bs2, 0), Error);
  CHECK_THROWS_AS(folner_box(bs2, 4, 1000), CapExceeded);
  CHECK_THROWS_AS(folner_box(lamplighter_context(2), 1), Error);
}

TEST_CASE("defects") {
  const auto ctx = bs_context(2);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto f = folner_box(ctx, n);
    CHECK(right_defect(ctx, f.elements, ctx.identity()) == 0);
    CHECK(left_defect(ctx, f.elements, ctx.identity()) == 0);
    CHECK(right_defect(ctx, f.elements, ctx.generators()[ctx.t_generator()]) == Rational(2, n));
    CHECK(left_defect(ctx, f.elements, ctx.generators()[ctx.t_generator()]) >= Rational(2, 5));
  }
}

TEST_CASE("congruence witness examples") {
  const auto ctx = bs_context(2);
  CHECK(congruence_witness(ctx, 1, 3, 1) == std::optional<std::int64_t>(0));
  CHECK(congruence_witness(ctx, 1, 2, 2) == std::optional<std::int64_t>(1));
  CHECK(!congruence_witness(ctx, 1, 3, 3).has_value());
  CHECK(congruence_witness(ctx, -1, 6, 3) == std::optional<std::int64_t>(0));
  CHECK_THROWS_AS(congruence_witness(ctx, 1, 1, 0), Error);
}

TEST_CASE("congruence witness matches conjugacy keys") {
  for (std::int64_t k : {2, 3}) {
    const auto ctx = bs_context(k);
    const ConjugacyKeyer keyer(ctx);
    for (std::int64_t n = 1; n <= 6; ++n)
      for (std::int64_t a = -20; a <= 20; ++a)
        for (std::int64_t b = -20; b <= 20; ++b)
          CHECK(congruence_witness(ctx, a, b, n).has_value() ==
                keyer.are_conjugate(bs_element(ctx, a, n), bs_element(ctx, b, n)));
  }
}

TEST_CASE("finitely many n") {
  const auto ctx = bs_context(2);
  const auto rep = finite_n_solutions(ctx, 1, 3, 30);
  CHECK(rep.solutions == std::vector<std::int64_t>{1});
  CHECK(rep.window_nonempty.empty());
  CHECK(!rep.largest_window_n.has_value());
  CHECK_THROWS_AS(finite_n_solutions(ctx, 1, 4, 10), Error);
  CHECK_THROWS_AS(finite_n_solutions(ctx, 3, 6, 10), Error);
  CHECK_THROWS_AS(finite_n_solutions(ctx, 0, 3, 10), Error);
  // Every witness with k^n - 1 > max(a, b) lies inside the window.
  for (std::int64_t a = 1; a <= 12; ++a)
    for (std::int64_t b = 1; b <= 12; ++b) {
      BigInt g = gcd(BigInt(a), BigInt(b));
      BigInt x = a / g, y = b / g;
      auto pow2 = [](BigInt v) {
        while (v % 2 == 0) v /= 2;
        return v == 1;
      };
      if ((x == 1 && pow2(y)) || (y == 1 && pow2(x))) continue;
      const auto r = finite_n_solutions(ctx, a, b, 12);
      for (auto n : r.solutions)
        if ((std::int64_t(1) << n) - 1 > std::max(a, b))
          CHECK(std::find(r.window_nonempty.begin(), r.window_nonempty.end(), n) != r.window_nonempty.end());
    }
}

TEST_CASE("separating translate") {
  const auto ctx = bs_context(2);
  const ConjugacyKeyer keyer(ctx);
  const std::vector<Element> a{bs_element(ctx, 1, 1), bs_element(ctx, 3, 1)};
  const auto s = separating_translate(keyer, a);
  CHECK(s.n2 == 0);
  CHECK(s.l == 7);
  CHECK(s.classes == 2);
  CHECK(s.g == ctx.multiply(bs_element(ctx, 0, s.n1),
                            ctx.multiply(bs_element(ctx, s.l, 0), bs_element(ctx, 0, s.n2))));
  // Minimality: the previous N1 fails to separate.
  if (s.n1 > 0) {
    const Element prev = ctx.multiply(bs_element(ctx, 0, s.n1 - 1), bs_element(ctx, s.l, 0));
    CHECK(count_classes(keyer, {ctx.multiply(prev, a[0]), ctx.multiply(prev, a[1])}) == 1);
  }

  const auto single = separating_translate(keyer, {bs_element(ctx, 5, 3, 2)});
  CHECK(single.classes == 1);
  const auto mixed = separating_translate(keyer, {bs_element(ctx, 1, 1), bs_element(ctx, 1, 2)});
  CHECK(mixed.classes == 2);
  CHECK(mixed.n1 == 0);

  // Mixed strata with fractions and negative exponents.
  const std::vector<Element> b{bs_element(ctx, 1, 3, -2), bs_element(ctx, 5, 1, -2), bs_element(ctx, -3, 0),
                               bs_element(ctx, 3, 0), bs_element(ctx, 0, 4)};
  const auto sb = separating_translate(keyer, b);
  CHECK(sb.classes == b.size());
  CHECK(sb.n2 == 3);
  CHECK(sb.n1 >= 3);

  CHECK_THROWS_AS(separating_translate(keyer, a, 1), CapExceeded);
}

TEST_CASE("separating translate experiment") {
  const auto ctx = bs_context(2);
  const ConjugacyKeyer keyer(ctx);
  std::vector<SeparationReport> reps;
  for (std::size_t n = 1; n <= 3; ++n) {
    reps.push_back(separation_experiment(keyer, n));
    const auto& r = reps.back();
    CHECK(r.f_size == n * (std::size_t(1) << (3 * n)));
    CHECK(r.translated_size == r.f_size);
    CHECK(r.classes == r.f_size);
    CHECK(r.ratio == 1);
    CHECK(r.right_defects.size() == 4);
    CHECK(r.left_defect_t >= Rational(2, 5));
  }
  for (std::size_t n = 1; n < reps.size(); ++n)
    for (std::size_t s = 0; s < reps[n].right_defects.size(); ++s)
      CHECK(reps[n].right_defects[s].right < reps[n - 1].right_defects[s].right);

  const auto ctx3 = bs_context(3);
  const auto r3 = separation_experiment(ConjugacyKeyer(ctx3), 1);
  CHECK(r3.classes == 27);
}

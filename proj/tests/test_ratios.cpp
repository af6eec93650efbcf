#include "abc/ratios.hpp"

#include "doctest.h"

#include <cmath>

using namespace abc;

TEST_CASE("growth functions") {
  const GrowthFunction s = GrowthFunction::parse("sqrt");
  CHECK(s(0) == 0);
  CHECK(s(1) == 1);
  CHECK(s(4) == 2);
  CHECK(s(5) == 3);
  CHECK(s(9) == 3);
  CHECK(s(10) == 4);
  const GrowthFunction l = GrowthFunction::parse("log2");
  CHECK(l(1) == 0);
  CHECK(l(3) == 2);   // (ln 3)^2 = 1.21
  CHECK(l(10) == 6);  // (ln 10)^2 = 5.30
  const GrowthFunction c = GrowthFunction::parse("const:3");
  CHECK(c(100) == 3);
  for (const char* text : {"sqrt", "log2", "const:0", "const:17"})
    CHECK(GrowthFunction::parse(GrowthFunction::parse(text).str()) == GrowthFunction::parse(text));
  CHECK_THROWS_AS(GrowthFunction::parse("cube"), Error);
  CHECK_THROWS_AS(GrowthFunction::parse("const:"), Error);
  CHECK_THROWS_AS(GrowthFunction::parse("const:-1"), Error);
}

TEST_CASE("ratio table small cases") {
  for (const auto& ctx : {bs_context(2), lamplighter_context(2), matrix_context(IntMatrix{{2, 1}, {1, 1}})}) {
    const auto ball = enumerate_ball(ctx, 0);
    const auto t = ratio_table(ball, ConjugacyKeyer(ctx));
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].ball == 1);
    CHECK(t.rows[0].classes_cum == 1);
    CHECK(t.rows[0].cr == 1.0);
  }
  const auto ctx = bs_context(2);
  const auto t = ratio_table(enumerate_ball(ctx, 2), ConjugacyKeyer(ctx));
  CHECK(t.rows[1].ball == 5);
  CHECK(t.rows[1].classes_cum == 5);
  CHECK(t.rows[1].cr == 1.0);
  CHECK(t.rows[2].cr < 1.0);
}

TEST_CASE("ratio table invariants") {
  for (const auto& ctx : {bs_context(2), lamplighter_context(2), lamplighter_context(3)}) {
    const auto ball = enumerate_ball(ctx, 9);
    const ConjugacyKeyer keyer(ctx);
    const auto t = ratio_table(ball, keyer);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const auto& row = t.rows[r];
      CHECK(row.ball == ball.ball_size(r));
      CHECK(row.sphere == ball.sphere_size(r));
      CHECK(row.cr > 0);
      CHECK(row.cr <= 1);
      CHECK(row.f_classes <= row.classes_new);
      CHECK(row.f_size >= row.f_classes);
      if (r > 0) {
        CHECK(row.classes_new == row.classes_cum - t.rows[r - 1].classes_cum);
        CHECK(row.classes_cum >= t.rows[r - 1].classes_cum);
      }
      const auto hist = sphere_class_histogram(ball, keyer, r);
      std::size_t total = 0;
      for (const auto& [key, count] : hist) total += count;
      CHECK(total == row.sphere);
    }
  }
}

TEST_CASE("sphere histogram examples") {
  const auto ctx = bs_context(2);
  const auto ball = enumerate_ball(ctx, 2);
  const ConjugacyKeyer keyer(ctx);
  const auto h0 = sphere_class_histogram(ball, keyer, 0);
  REQUIRE(h0.size() == 1);
  CHECK(h0.begin()->first == keyer.key(ctx.identity()));
  CHECK(h0.begin()->second == 1);
  const auto h2 = sphere_class_histogram(ball, keyer, 2);
  CHECK(h2.at(keyer.key(bs_element(ctx, 1, 1))) >= 2);
}

TEST_CASE("decay fit") {
  RatioTable t;
  for (std::size_t r = 0; r <= 6; ++r) {
    RatioRow row;
    row.r = r;
    row.cr = row.scr = 1.0;
    t.rows.push_back(row);
  }
  const auto fit = decay_fit(t);
  CHECK(fit.cr_constant == doctest::Approx(6 / std::log(6.0)));
  CHECK(fit.scr_constant == doctest::Approx(6 / std::log(6.0)));
  CHECK(fit.rows_used == 4);
  t.rows.pop_back();
  CHECK_THROWS_AS(decay_fit(t), Error);
  CHECK_THROWS_AS(decay_fit(RatioTable{}), Error);
}

TEST_CASE("lamplighter decay shape") {
  const auto ctx = lamplighter_context(2);
  const auto t = ratio_table(enumerate_ball(ctx, 12), ConjugacyKeyer(ctx));
  const auto fit = decay_fit(t);
  CHECK(std::isfinite(fit.cr_constant));
  CHECK(std::isfinite(fit.scr_constant));
  for (std::size_t r = 9; r <= 12; ++r) {
    const double prev = t.rows[r - 1].cr * (r - 1) / std::log(double(r - 1));
    CHECK(t.rows[r].cr * r / std::log(double(r)) <= prev);
  }
  for (std::size_t r = 8; r <= 12; ++r) CHECK(2 * t.rows[r].f_classes <= t.rows[r].classes_new);
}

TEST_CASE("U_f share of the ball") {
  // Decreasing while f = ceil(sqrt r) is constant; it jumps up where f does (r = 10).
  for (const auto& ctx : {lamplighter_context(2), bs_context(2)}) {
    const auto t = ratio_table(enumerate_ball(ctx, 12), ConjugacyKeyer(ctx));
    auto share = [&](std::size_t r) { return double(t.rows[r].u_count) / double(t.rows[r].ball); };
    for (std::size_t r = 7; r <= 12; ++r) {
      if (t.f(r) == t.f(r - 1))
        CHECK(share(r) < share(r - 1));
      CHECK(t.rows[r].u_count >= t.rows[r - 1].u_count);
    }
    CHECK(share(10) > share(9));
    CHECK(share(12) < share(6));
  }
}

TEST_CASE("CSV and gnuplot output") {
  const auto ctx = bs_context(2);
  const auto t = ratio_table(enumerate_ball(ctx, 6), ConjugacyKeyer(ctx));
  const std::string csv = ratio_csv(t);
  CHECK(csv.rfind("r,ball,sphere,classes_cum,classes_new,cr,scr,F_size,F_classes,U_count\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
  CHECK(csv.find("\n1,5,4,5,4,1,1,") != std::string::npos);
  const std::string gp = gnuplot_script(t, decay_fit(t), "r.csv");
  CHECK(gp.find("'r.csv'") != std::string::npos);
  CHECK(gp.find("log(x)/x") != std::string::npos);
}

TEST_CASE("ratio table is independent of thread count") {
  const auto ctx = lamplighter_context(2);
  const auto ball = enumerate_ball(ctx, 8);
  const ConjugacyKeyer keyer(ctx);
  CHECK(ratio_csv(ratio_table(ball, keyer, {}, 1)) == ratio_csv(ratio_table(ball, keyer, {}, 3)));
}

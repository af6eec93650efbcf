#pragma once

#include "abc/ball.hpp"
#include "abc/conjugacy.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace abc {

// f(r) for the sphere-count threshold and the U_f bound.
//   sqrt      ceil(sqrt r)
//   log2      ceil((ln r)^2), 0 for r <= 1
//   const:c   c
struct GrowthFunction {
  enum class Kind : std::uint8_t { sqrt, log2, constant };
  Kind kind = Kind::sqrt;
  std::uint64_t c = 0;

  std::uint64_t operator()(std::size_t r) const;
  std::string str() const;
  static GrowthFunction parse(std::string_view text);
  friend bool operator==(const GrowthFunction&, const GrowthFunction&) = default;
};

struct RatioRow {
  std::size_t r = 0;
  std::size_t ball = 0;
  std::size_t sphere = 0;
  std::size_t classes_cum = 0;  // c(S^r)
  std::size_t classes_new = 0;  // c(S'(r)): keys first seen at radius r
  double cr = 0;
  double scr = 0;
  std::size_t f_size = 0;     // |F(r)|
  std::size_t f_classes = 0;  // c(F(r))
  std::size_t u_count = 0;    // |U_f(r)|
};

struct RatioTable {
  GrowthFunction f;
  std::vector<RatioRow> rows;
};

// Keys of every entry of the ball, in entry order.
std::vector<ConjugacyKey> ball_keys(const BallIndex& index, const ConjugacyKeyer& keyer, std::size_t threads = 0);

std::map<ConjugacyKey, std::size_t> sphere_class_histogram(const BallIndex& index, const ConjugacyKeyer& keyer,
                                                           std::size_t r);

// |{g in S^r : min_t_count(g) <= bound}|.
std::size_t u_f_count(const BallIndex& index, std::uint64_t bound, std::size_t r);

RatioTable ratio_table(const BallIndex& index, const ConjugacyKeyer& keyer, GrowthFunction f = {},
                       std::size_t threads = 0);

// max over rows with r >= 3 of cr(r) r / ln r, and likewise for scr.
struct DecayFit {
  double cr_constant = 0;
  double scr_constant = 0;
  std::size_t rows_used = 0;
};

DecayFit decay_fit(const RatioTable& table);

std::string ratio_csv(const RatioTable& table);
std::string gnuplot_script(const RatioTable& table, const DecayFit& fit, const std::string& csv_path);

}  // namespace abc

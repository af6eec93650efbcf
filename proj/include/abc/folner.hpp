#pragma once

#include "abc/bigint.hpp"
#include "abc/conjugacy.hpp"
#include "abc/group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace abc {

// F_n = {(b k^-n, t^p) : 0 <= b < k^3n, 0 <= p < n} in BS(1,k).
struct FolnerSet {
  std::int64_t k = 2;
  std::size_t n = 1;
  std::vector<Element> elements;
};

FolnerSet folner_box(const GroupContext& ctx, std::size_t n, std::size_t element_cap = 50'000'000);

// |F x (+) F| / |F| and |x F (+) F| / |F|.
Rational right_defect(const GroupContext& ctx, const std::vector<Element>& f, const Element& x);
Rational left_defect(const GroupContext& ctx, const std::vector<Element>& f, const Element& x);

// Some m in [0, n) with k^m a = b mod k^n - 1.
std::optional<std::int64_t> congruence_witness(const GroupContext& ctx, const BigInt& a, const BigInt& b,
                                               std::int64_t n);

struct FiniteNReport {
  std::vector<std::int64_t> solutions;  // n <= n_max admitting a witness
  // n <= n_max for which some integer j in [0, n) satisfies
  // (k^n - 1 + b)/a <= k^j <= k^n b/(k^n - 1 + a).
  std::vector<std::int64_t> window_nonempty;
  std::optional<std::int64_t> largest_window_n;
};

FiniteNReport finite_n_solutions(const GroupContext& ctx, const BigInt& a, const BigInt& b, std::int64_t n_max);

struct SeparatingTranslate {
  Element g;  // (k^N1 L, t^(N1 + N2)) = t^N1 L t^N2
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  BigInt l;
  std::size_t classes = 0;  // c(gA), equal to |A|
};

// Smallest N1 >= 1 - min texp for which the keys of gA are pairwise distinct.
SeparatingTranslate separating_translate(const ConjugacyKeyer& keyer, const std::vector<Element>& a,
                                         std::int64_t n1_cap = 512);

std::size_t count_classes(const ConjugacyKeyer& keyer, const std::vector<Element>& set);

struct GeneratorDefect {
  std::string generator;  // "g0", "t", ...
  Rational right;
};

struct SeparationReport {
  std::int64_t k = 2;
  std::size_t n = 1;
  SeparatingTranslate translate;
  std::size_t f_size = 0;
  std::size_t translated_size = 0;  // |g F|
  std::size_t classes = 0;          // c(g F)
  std::vector<GeneratorDefect> right_defects;
  Rational left_defect_t;
  Rational ratio;  // c(g F) / |g F|
};

SeparationReport separation_experiment(const ConjugacyKeyer& keyer, std::size_t n, std::size_t element_cap = 50'000'000,
                                     std::int64_t n1_cap = 512);

}  // namespace abc

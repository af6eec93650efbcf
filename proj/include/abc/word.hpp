#pragma once

#include "abc/group.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace abc {

// A letter is a non-identity generator: t, t^-1 or (r,1) for r = kgens()[index].
struct Letter {
  enum class Kind : std::uint8_t { t, t_inv, kgen };
  Kind kind = Kind::t;
  std::uint32_t index = 0;

  static Letter t() { return {Kind::t, 0}; }
  static Letter t_inv() { return {Kind::t_inv, 0}; }
  static Letter kgen(std::uint32_t i) { return {Kind::kgen, i}; }
  bool is_t() const { return kind != Kind::kgen; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

// Generator index in ctx.generators() for a letter, and back.
std::size_t generator_of(const GroupContext& ctx, Letter l);
Letter letter_of(const GroupContext& ctx, std::size_t generator);

Letter inverse_letter(const GroupContext& ctx, Letter l);
Word inverse_word(const GroupContext& ctx, const Word& w);

// Tokens `t`, `T`, `g<i>`, `G<i>` separated by whitespace; bare `g`/`G` mean index 0.
// `G<i>` is normalised to the g<j> with R[j] = -R[i].
Word parse_word(const GroupContext& ctx, std::string_view text);
std::string format_word(const Word& w);

std::int64_t t_exponent_sum(const Word& w);
std::size_t t_letter_count(const Word& w);

Element evaluate(const GroupContext& ctx, const Word& w);

// A word t^-p u_0 t u_1 t ... t u_d t^-(q-m) with d = p + q and q >= m >= 0,
// i.e. the level-sorted shape of a word whose t-exponent sum m is non-negative.
// blocks[i] holds the K-letters at t-level i - p.
struct WPrimeForm {
  std::int64_t p = 0;
  std::int64_t m = 0;
  std::vector<Word> blocks;  // d + 1 blocks

  std::int64_t d() const { return static_cast<std::int64_t>(blocks.size()) - 1; }
  std::int64_t q() const { return d() - p; }
  Word to_word() const;
};

// Gathers letters by t-level; never lengthens the word, and preserves the value.
// Throws when the t-exponent sum is negative.
WPrimeForm wprime_form(const Word& w);
Word rewrite_to_wprime(const Word& w);
// Handles negative t-exponent sums by rewriting the inverse and inverting back.
Word rewrite_to_wprime_any(const GroupContext& ctx, const Word& w);

// One cyclic-permute-and-merge step on a W' word with t-exponent sum m > 0.
// Returns false when the word is already u_0 t ... u_{m-1} t.
struct ConjugacyReduction {
  Word word;
  std::size_t steps = 0;  // length-reducing steps applied
};

bool in_cm_shape(const Word& w, std::int64_t m);

// Iterates the step to a word in C_m that is conjugate to w. Each step removes
// one t and one t^-1. Throws when the t-exponent sum is not positive.
ConjugacyReduction reduce_conjugacy_geodesic(const Word& w);

std::vector<Word> cyclic_permutations(const Word& w);
// Number of distinct group elements among the cyclic permutations of w (1 for
// the empty word).
std::size_t distinct_cyclic_values(const GroupContext& ctx, const Word& w);

}  // namespace abc

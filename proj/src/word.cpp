#include "abc/word.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace abc {

std::size_t generator_of(const GroupContext& ctx, Letter l) {
  switch (l.kind) {
    case Letter::Kind::t: return ctx.t_generator();
    case Letter::Kind::t_inv: return ctx.t_inv_generator();
    case Letter::Kind::kgen:
      if (l.index >= ctx.kgens().size()) throw Error("letter refers to an unknown generator");
      return 1 + l.index;
  }
  return 0;
}

Letter letter_of(const GroupContext& ctx, std::size_t s) {
  if (s == 0 || s >= ctx.generators().size()) throw Error("identity or unknown generator has no letter");
  if (s == ctx.t_generator()) return Letter::t();
  if (s == ctx.t_inv_generator()) return Letter::t_inv();
  return Letter::kgen(static_cast<std::uint32_t>(s - 1));
}

Letter inverse_letter(const GroupContext& ctx, Letter l) {
  switch (l.kind) {
    case Letter::Kind::t: return Letter::t_inv();
    case Letter::Kind::t_inv: return Letter::t();
    case Letter::Kind::kgen: return Letter::kgen(static_cast<std::uint32_t>(ctx.kgen_inverse(l.index)));
  }
  return l;
}

Word inverse_word(const GroupContext& ctx, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_letter(ctx, *it));
  return out;
}

Word parse_word(const GroupContext& ctx, std::string_view text) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "t") {
      w.push_back(Letter::t());
    } else if (tok == "T") {
      w.push_back(Letter::t_inv());
    } else if (tok[0] == 'g' || tok[0] == 'G') {
      std::uint32_t idx = 0;
      if (tok.size() > 1) {
        auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), idx);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) throw Error("bad word token '" + tok + "'");
      }
      if (idx >= ctx.kgens().size()) throw Error("word token '" + tok + "' refers to an unknown generator");
      Letter l = Letter::kgen(idx);
      w.push_back(tok[0] == 'G' ? inverse_letter(ctx, l) : l);
    } else {
      throw Error("bad word token '" + tok + "'");
    }
  }
  return w;
}

std::string format_word(const Word& w) {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    switch (l.kind) {
      case Letter::Kind::t: out += 't'; break;
      case Letter::Kind::t_inv: out += 'T'; break;
      case Letter::Kind::kgen: out += 'g' + std::to_string(l.index); break;
    }
  }
  return out;
}

std::int64_t t_exponent_sum(const Word& w) {
  std::int64_t s = 0;
  for (const auto& l : w) {
    if (l.kind == Letter::Kind::t) ++s;
    if (l.kind == Letter::Kind::t_inv) --s;
  }
  return s;
}

std::size_t t_letter_count(const Word& w) {
  return static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](Letter l) { return l.is_t(); }));
}

Element evaluate(const GroupContext& ctx, const Word& w) {
  // Accumulate the K-part level by level instead of multiplying generator by
  // generator: a K-letter read at level h contributes phi^h(r).
  KPart acc = ctx.zero();
  std::int64_t level = 0;
  for (const auto& l : w) {
    switch (l.kind) {
      case Letter::Kind::t: ++level; break;
      case Letter::Kind::t_inv: --level; break;
      case Letter::Kind::kgen:
        if (l.index >= ctx.kgens().size()) throw Error("letter refers to an unknown generator");
        acc = ctx.add(acc, ctx.phi_power(ctx.kgens()[l.index], level));
        break;
    }
  }
  return Element{std::move(acc), level};
}

Word WPrimeForm::to_word() const {
  Word w(static_cast<std::size_t>(p), Letter::t_inv());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) w.push_back(Letter::t());
    w.insert(w.end(), blocks[i].begin(), blocks[i].end());
  }
  w.insert(w.end(), static_cast<std::size_t>(q() - m), Letter::t_inv());
  return w;
}

WPrimeForm wprime_form(const Word& w) {
  std::int64_t level = 0, lo = 0, hi = 0;
  for (const auto& l : w) {
    if (l.kind == Letter::Kind::t) ++level;
    if (l.kind == Letter::Kind::t_inv) --level;
    lo = std::min(lo, level);
    hi = std::max(hi, level);
  }
  if (level < 0) throw Error("W' rewriting needs a non-negative t-exponent sum");
  WPrimeForm f;
  f.p = -lo;
  f.m = level;
  f.blocks.resize(static_cast<std::size_t>(hi - lo + 1));
  level = 0;
  for (const auto& l : w) {
    if (l.kind == Letter::Kind::t) ++level;
    else if (l.kind == Letter::Kind::t_inv) --level;
    else f.blocks[static_cast<std::size_t>(level - lo)].push_back(l);
  }
  return f;
}

Word rewrite_to_wprime(const Word& w) { return wprime_form(w).to_word(); }

Word rewrite_to_wprime_any(const GroupContext& ctx, const Word& w) {
  if (t_exponent_sum(w) >= 0) return rewrite_to_wprime(w);
  return inverse_word(ctx, rewrite_to_wprime(inverse_word(ctx, w)));
}

bool in_cm_shape(const Word& w, std::int64_t m) {
  if (m <= 0 || w.empty() || w.back().kind != Letter::Kind::t) return false;
  std::int64_t ts = 0;
  for (const auto& l : w) {
    if (l.kind == Letter::Kind::t_inv) return false;
    if (l.kind == Letter::Kind::t) ++ts;
  }
  return ts == m;
}

ConjugacyReduction reduce_conjugacy_geodesic(const Word& w) {
  const WPrimeForm form = wprime_form(w);
  const std::int64_t m = form.m;
  if (m <= 0) throw Error("conjugacy reduction needs a positive t-exponent sum");

  // Cyclically moving t^-p to the back gives u_0 t u_1 ... t u_l t^(m-l), l = d.
  std::vector<Word> blocks = form.blocks;
  ConjugacyReduction out;
  while (static_cast<std::int64_t>(blocks.size()) - 1 > m) {
    const std::size_t l = blocks.size() - 1;
    const std::size_t mid = l - static_cast<std::size_t>(m);
    // t u_l t^(m-l) u_0 t ... = t^(m-l+1) u_0 t ... t (u_l u_(l-m)) t ... t u_(l-1)
    Word merged = blocks[l];
    merged.insert(merged.end(), blocks[mid].begin(), blocks[mid].end());
    blocks[mid] = std::move(merged);
    blocks.pop_back();
    ++out.steps;
  }
  // u_0 t ... t u_m  ~  (u_m u_0) t u_1 t ... u_(m-1) t
  Word head = blocks.back();
  blocks.pop_back();
  head.insert(head.end(), blocks[0].begin(), blocks[0].end());
  blocks[0] = std::move(head);
  for (auto& b : blocks) {
    out.word.insert(out.word.end(), b.begin(), b.end());
    out.word.push_back(Letter::t());
  }
  return out;
}

std::vector<Word> cyclic_permutations(const Word& w) {
  std::vector<Word> out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    Word r(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t distinct_cyclic_values(const GroupContext& ctx, const Word& w) {
  if (w.empty()) return 1;
  std::set<std::string> seen;
  for (const auto& r : cyclic_permutations(w)) seen.insert(ctx.encode(evaluate(ctx, r)));
  return seen.size();
}

}  // namespace abc

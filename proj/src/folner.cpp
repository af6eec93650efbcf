#include "abc/folner.hpp"

#include "abc/word.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_set>

namespace abc {

namespace {

void require_bs(const GroupContext& ctx) {
  if (ctx.family() != Family::bs) throw Error("Folner experiments need a bs context");
}

using ElementSet = std::unordered_set<Element, ElementHash>;

// |A (+) F| / |F| for |A| = |F|: twice the part of A outside F.
Rational defect(const ElementSet& f, const std::vector<Element>& moved) {
  if (f.empty()) return 0;
  std::size_t outside = 0;
  for (const auto& g : moved)
    if (!f.count(g)) ++outside;
  return Rational(2 * outside, f.size());
}

}  // namespace

FolnerSet folner_box(const GroupContext& ctx, std::size_t n, std::size_t element_cap) {
  require_bs(ctx);
  if (n < 1) throw Error("Folner box needs n >= 1");
  const std::int64_t k = ctx.bs_base();
  const BigInt width = ipow(k, 3 * static_cast<std::int64_t>(n));
  if (width * n > element_cap)
    throw CapExceeded("Folner box of size " + to_string(width * n) + " exceeds the element cap of " +
                      std::to_string(element_cap));
  FolnerSet f;
  f.k = k;
  f.n = n;
  const auto w = static_cast<std::int64_t>(width);
  f.elements.reserve(static_cast<std::size_t>(w) * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::int64_t b = 0; b < w; ++b)
      f.elements.push_back(bs_element(ctx, BigInt(b), static_cast<std::int64_t>(n), static_cast<std::int64_t>(p)));
  return f;
}

Rational right_defect(const GroupContext& ctx, const std::vector<Element>& f, const Element& x) {
  const ElementSet set(f.begin(), f.end());
  std::vector<Element> moved;
  moved.reserve(set.size());
  for (const auto& g : set) moved.push_back(ctx.multiply(g, x));
  return defect(set, moved);
}

Rational left_defect(const GroupContext& ctx, const std::vector<Element>& f, const Element& x) {
  const ElementSet set(f.begin(), f.end());
  std::vector<Element> moved;
  moved.reserve(set.size());
  for (const auto& g : set) moved.push_back(ctx.multiply(x, g));
  return defect(set, moved);
}

std::optional<std::int64_t> congruence_witness(const GroupContext& ctx, const BigInt& a, const BigInt& b,
                                               std::int64_t n) {
  require_bs(ctx);
  if (n < 1) throw Error("congruence witness needs n >= 1");
  const std::int64_t k = ctx.bs_base();
  const BigInt modulus = ipow(k, n) - 1;
  const BigInt target = mod_floor(b, modulus);
  BigInt x = mod_floor(a, modulus);
  // k has multiplicative order n modulo k^n - 1.
  for (std::int64_t m = 0; m < n; ++m) {
    if (x == target) return m;
    x = mod_floor(x * k, modulus);
  }
  return std::nullopt;
}

namespace {

bool is_power_ratio(const BigInt& a, const BigInt& b, std::int64_t k) {
  const BigInt g = gcd(a, b);
  BigInt x = a / g, y = b / g;
  if (x != 1) std::swap(x, y);
  if (x != 1) return false;
  while (y % k == 0) y /= k;
  return y == 1;
}

}  // namespace

FiniteNReport finite_n_solutions(const GroupContext& ctx, const BigInt& a, const BigInt& b, std::int64_t n_max) {
  require_bs(ctx);
  if (a <= 0 || b <= 0) throw Error("finite_n_solutions needs positive a and b");
  const std::int64_t k = ctx.bs_base();
  if (is_power_ratio(a, b, k)) throw Error("b/a is a power of k");
  FiniteNReport report;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    if (congruence_witness(ctx, a, b, n)) report.solutions.push_back(n);
    const BigInt kn = ipow(k, n);
    BigInt kj = 1;
    for (std::int64_t j = 0; j < n; ++j, kj *= k) {
      if (kn - 1 + b <= a * kj && kj * (kn - 1 + a) <= kn * b) {
        report.window_nonempty.push_back(n);
        report.largest_window_n = n;
        break;
      }
    }
  }
  return report;
}

std::size_t count_classes(const ConjugacyKeyer& keyer, const std::vector<Element>& set) {
  std::set<std::string> keys;
  for (const auto& g : set) keys.insert(keyer.key(g).encode());
  return keys.size();
}

SeparatingTranslate separating_translate(const ConjugacyKeyer& keyer, const std::vector<Element>& a,
                                         std::int64_t n1_cap) {
  const GroupContext& ctx = keyer.context();
  require_bs(ctx);
  const std::int64_t k = ctx.bs_base();
  SeparatingTranslate out;
  std::int64_t min_texp = 0;
  BigInt max_abs = 0;
  if (!a.empty()) {
    min_texp = std::numeric_limits<std::int64_t>::max();
    for (const auto& g : a) {
      min_texp = std::min(min_texp, g.texp);
      out.n2 = std::max(out.n2, std::get<KFraction>(g.kpart).exp);
    }
  }
  for (const auto& g : a) {
    const auto& f = std::get<KFraction>(g.kpart);
    max_abs = std::max(max_abs, BigInt(abs(f.num * ipow(k, out.n2 - f.exp))));
  }
  out.l = 2 * max_abs + 1;
  const ElementSet distinct(a.begin(), a.end());
  for (std::int64_t n1 = 1 - min_texp, tries = 0; tries < n1_cap; ++n1, ++tries) {
    // t^N1 L t^N2 = (k^N1 L, t^(N1 + N2)); N1 may be negative.
    const Element g = ctx.multiply(bs_element(ctx, 0, n1), ctx.multiply(bs_element(ctx, out.l, 0),
                                                                            bs_element(ctx, 0, out.n2)));
    std::vector<Element> translated;
    translated.reserve(distinct.size());
    for (const auto& x : distinct) translated.push_back(ctx.multiply(g, x));
    const std::size_t classes = count_classes(keyer, translated);
    if (classes == distinct.size()) {
      out.g = g;
      out.n1 = n1;
      out.classes = classes;
      return out;
    }
  }
  throw CapExceeded("no separating translate within " + std::to_string(n1_cap) + " values of N1");
}

SeparationReport separation_experiment(const ConjugacyKeyer& keyer, std::size_t n, std::size_t element_cap,
                                     std::int64_t n1_cap) {
  const GroupContext& ctx = keyer.context();
  require_bs(ctx);
  const FolnerSet f = folner_box(ctx, n, element_cap);
  SeparationReport rep;
  rep.k = f.k;
  rep.n = n;
  rep.f_size = f.elements.size();
  rep.translate = separating_translate(keyer, f.elements, n1_cap);

  std::vector<Element> translated;
  translated.reserve(f.elements.size());
  for (const auto& x : f.elements) translated.push_back(ctx.multiply(rep.translate.g, x));
  rep.translated_size = ElementSet(translated.begin(), translated.end()).size();
  rep.classes = count_classes(keyer, translated);
  rep.ratio = Rational(rep.classes, rep.translated_size);

  const auto& gens = ctx.generators();
  for (std::size_t s = 1; s < gens.size(); ++s)
    rep.right_defects.push_back({format_word({letter_of(ctx, s)}), right_defect(ctx, f.elements, gens[s])});
  rep.left_defect_t = left_defect(ctx, f.elements, gens[ctx.t_generator()]);
  return rep;
}

}  // namespace abc

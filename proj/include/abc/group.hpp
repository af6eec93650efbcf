#pragma once

// Abelian-by-cyclic groups G = K x|_phi <t> in three concrete families:
//
//   lamplighter  K = (Z/m)^(Z)  (m = 0 means Z lamps), phi shifts support by +1
//   bs           K = Z[1/k],    phi multiplies by k      (G = BS(1,k))
//   matrix       K = Z^n,       phi = M with det M = +-1
//
// Elements are pairs (a, t^p) multiplied by (a,t^p)(b,t^q) = (a + phi^p(b), t^(p+q)).
// The generating set is S = {(r,1) : r in R} u {(0,t), (0,t^-1)} with the
// identity included, so S^r is the ball of radius r.

#include "abc/bigint.hpp"
#include "abc/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace abc {

enum class Family : std::uint8_t { lamplighter = 0, bs = 1, matrix = 2 };

std::string_view family_name(Family f);

// Finitely supported lamp configuration. Entries are sorted by index and
// every stored value is nonzero (and reduced into [0, m) when m > 0).
struct Lamps {
  std::vector<std::pair<std::int64_t, std::int64_t>> entries;
  friend bool operator==(const Lamps&, const Lamps&) = default;
};

// num * k^(-exp), exp >= 0, with k not dividing num whenever exp > 0, and
// (0, 0) for zero.
struct KFraction {
  BigInt num;
  std::int64_t exp = 0;
  friend bool operator==(const KFraction& a, const KFraction& b) {
    return a.exp == b.exp && a.num == b.num;
  }
};

using IntVec = std::vector<std::int64_t>;

using KPart = std::variant<Lamps, KFraction, IntVec>;

struct Element {
  KPart kpart;
  std::int64_t texp = 0;
  friend bool operator==(const Element&, const Element&) = default;
};

// Construction parameters. Fields irrelevant to `family` are ignored.
struct GroupSpec {
  Family family = Family::bs;
  std::int64_t lamp_modulus = 2;
  std::int64_t bs_base = 2;
  IntMatrix matrix;
  // R; the zero K-part is added if absent. Empty means the default set.
  std::vector<KPart> kgens;
};

class GroupContext {
 public:
  explicit GroupContext(GroupSpec spec);

  Family family() const { return family_; }
  std::int64_t lamp_modulus() const { return lamp_modulus_; }
  std::int64_t bs_base() const { return bs_base_; }
  const IntMatrix& matrix() const { return matrix_; }
  const IntMatrix& matrix_inverse() const { return matrix_inv_; }
  std::size_t dim() const { return matrix_.rows(); }

  // Nonzero elements of R in a fixed order; letter g<i> refers to kgens()[i].
  const std::vector<KPart>& kgens() const { return kgens_; }
  // Index j with kgens()[j] == -kgens()[i].
  std::size_t kgen_inverse(std::size_t i) const { return kgen_inv_[i]; }

  // S in order: identity, (r,1) for r in kgens(), (0,t), (0,t^-1).
  const std::vector<Element>& generators() const { return generators_; }
  std::size_t t_generator() const { return generators_.size() - 2; }
  std::size_t t_inv_generator() const { return generators_.size() - 1; }
  bool is_t_generator(std::size_t s) const { return s + 2 >= generators_.size(); }
  std::size_t generator_inverse(std::size_t s) const;

  KPart zero() const;
  Element identity() const { return Element{zero(), 0}; }
  bool is_identity(const Element& g) const { return g.texp == 0 && is_zero(g.kpart); }

  KPart add(const KPart& a, const KPart& b) const;
  KPart negate(const KPart& a) const;
  bool is_zero(const KPart& a) const;
  KPart phi_power(const KPart& a, std::int64_t i) const;

  Element multiply(const Element& g, const Element& h) const;
  Element invert(const Element& g) const;
  Element conjugate(const Element& x, const Element& g) const;  // x g x^-1

  // Reduces an arbitrary K-part to canonical form.
  KPart canonicalize(KPart a) const;

  // Injective byte serialization; texp first, order-preserving.
  std::string encode(const Element& g) const;
  Element decode(std::string_view bytes) const;

  // Compact textual form used in reports, e.g. "(3/2^1, t^2)".
  std::string format(const Element& g) const;
  std::string format(const KPart& a) const;

  // "lamplighter:2", "bs:3" or "matrix:[[2,1],[1,1]]".
  std::string descriptor() const;

  // Serialized parameters (family, modulus/base, matrix, R) for cache files.
  std::string serialize() const;
  static GroupContext deserialize(std::string_view bytes);

 private:
  Family family_;
  std::int64_t lamp_modulus_ = 0;
  std::int64_t bs_base_ = 0;
  IntMatrix matrix_;
  IntMatrix matrix_inv_;
  std::vector<KPart> kgens_;
  std::vector<std::size_t> kgen_inv_;
  std::vector<Element> generators_;
};

// 64-bit hash of the canonical representation; equal elements hash equally.
std::uint64_t hash_element(const Element& g);

struct ElementHash {
  std::size_t operator()(const Element& g) const { return static_cast<std::size_t>(hash_element(g)); }
};

GroupContext make_context(const GroupSpec& spec);

// Convenience constructors with the default R.
GroupContext lamplighter_context(std::int64_t modulus);
GroupContext bs_context(std::int64_t base);
GroupContext matrix_context(const IntMatrix& m);

// Element helpers for the concrete families.
Element bs_element(const GroupContext& ctx, const BigInt& num, std::int64_t exp, std::int64_t texp);
Element bs_element(const GroupContext& ctx, const BigInt& integer, std::int64_t texp);
Element lamp_element(const GroupContext& ctx, std::vector<std::pair<std::int64_t, std::int64_t>> lamps,
                     std::int64_t texp);
Element vec_element(const GroupContext& ctx, IntVec v, std::int64_t texp);

// Reads the matrix-family JSON config {"n", "rows", "generators"?}.
GroupSpec matrix_spec_from_json(std::string_view json_text);
GroupSpec matrix_spec_from_file(const std::string& path);

}  // namespace abc

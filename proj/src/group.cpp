#include "abc/group.hpp"

#include "abc/bytes.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

namespace abc {

void ByteWriter::bigint(const BigInt& v) {
  if (v == 0) {
    u8(1);
    return;
  }
  u8(v < 0 ? 0 : 2);
  std::string mag;
  boost::multiprecision::export_bits(boost::multiprecision::abs(v), std::back_inserter(mag), 8);
  bytes(mag);
}

BigInt ByteReader::bigint() {
  const std::uint8_t sign = u8();
  if (sign == 1) return 0;
  if (sign > 2) throw Error("bad integer sign byte");
  const std::string_view mag = bytes();
  if (mag.empty() || mag.front() == '\0') throw Error("non-canonical integer magnitude");
  BigInt v;
  boost::multiprecision::import_bits(v, mag.begin(), mag.end(), 8);
  return sign == 0 ? BigInt(-v) : v;
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::lamplighter: return "lamplighter";
    case Family::bs: return "bs";
    case Family::matrix: return "matrix";
  }
  return "?";
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("64-bit overflow in matrix-family arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("64-bit overflow in matrix-family arithmetic");
  return r;
}

IntVec apply_checked(const IntMatrix& m, const IntVec& v) {
  IntVec out(v.size(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && v[j] != 0) acc = checked_add(acc, checked_mul(m(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

KFraction canonical_fraction(BigInt num, std::int64_t exp, std::int64_t k) {
  if (num == 0) return {BigInt(0), 0};
  if (exp < 0) {
    num *= ipow(k, -exp);
    exp = 0;
  }
  while (exp > 0 && num % k == 0) {
    num /= k;
    --exp;
  }
  return {std::move(num), exp};
}

}  // namespace

GroupContext::GroupContext(GroupSpec spec) : family_(spec.family) {
  switch (family_) {
    case Family::lamplighter:
      if (spec.lamp_modulus < 0 || spec.lamp_modulus == 1)
        throw Error("lamp modulus must be 0 (Z lamps) or at least 2");
      lamp_modulus_ = spec.lamp_modulus;
      break;
    case Family::bs:
      if (spec.bs_base < 2) throw Error("BS(1,k) requires k >= 2");
      bs_base_ = spec.bs_base;
      break;
    case Family::matrix: {
      if (!spec.matrix.square() || spec.matrix.rows() == 0) throw Error("matrix must be square and non-empty");
      const BigInt det = determinant(matrix_cast<BigInt>(spec.matrix));
      if (det != 1 && det != -1)
        throw Error("matrix is not unimodular (det = " + det.str() + ")");
      matrix_ = spec.matrix;
      matrix_inv_ = unimodular_inverse(matrix_);
      break;
    }
  }

  std::vector<KPart> given = std::move(spec.kgens);
  if (given.empty()) {
    switch (family_) {
      case Family::lamplighter:
        given.push_back(Lamps{{{0, 1}}});
        given.push_back(Lamps{{{0, -1}}});
        break;
      case Family::bs:
        given.push_back(KFraction{1, 0});
        given.push_back(KFraction{-1, 0});
        break;
      case Family::matrix:
        for (std::size_t i = 0; i < dim(); ++i) {
          IntVec e(dim(), 0);
          e[i] = 1;
          given.push_back(e);
          e[i] = -1;
          given.push_back(e);
        }
        break;
    }
  }

  for (auto& r : given) {
    const std::size_t want = static_cast<std::size_t>(family_);
    if (r.index() != want) throw Error("generator K-part has the wrong family");
    if (family_ == Family::matrix && std::get<IntVec>(r).size() != dim())
      throw Error("generator vector has the wrong dimension");
    KPart c = canonicalize(std::move(r));
    if (is_zero(c)) continue;
    if (std::find(kgens_.begin(), kgens_.end(), c) == kgens_.end()) kgens_.push_back(std::move(c));
  }
  for (const auto& r : kgens_) {
    auto it = std::find(kgens_.begin(), kgens_.end(), negate(r));
    if (it == kgens_.end()) throw Error("generating set R is not symmetric: missing -" + format(r));
    kgen_inv_.push_back(static_cast<std::size_t>(it - kgens_.begin()));
  }

  generators_.push_back(identity());
  for (const auto& r : kgens_) generators_.push_back(Element{r, 0});
  generators_.push_back(Element{zero(), 1});
  generators_.push_back(Element{zero(), -1});
}

std::size_t GroupContext::generator_inverse(std::size_t s) const {
  if (s == 0) return 0;
  if (s == t_generator()) return t_inv_generator();
  if (s == t_inv_generator()) return t_generator();
  return 1 + kgen_inv_.at(s - 1);
}

KPart GroupContext::zero() const {
  switch (family_) {
    case Family::lamplighter: return Lamps{};
    case Family::bs: return KFraction{0, 0};
    case Family::matrix: return IntVec(dim(), 0);
  }
  return {};
}

bool GroupContext::is_zero(const KPart& a) const {
  switch (family_) {
    case Family::lamplighter: return std::get<Lamps>(a).entries.empty();
    case Family::bs: return std::get<KFraction>(a).num == 0;
    case Family::matrix: {
      const auto& v = std::get<IntVec>(a);
      return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
    }
  }
  return false;
}

KPart GroupContext::canonicalize(KPart a) const {
  switch (family_) {
    case Family::lamplighter: {
      auto entries = std::move(std::get<Lamps>(a).entries);
      std::sort(entries.begin(), entries.end());
      Lamps out;
      for (auto [i, v] : entries) {
        if (!out.entries.empty() && out.entries.back().first == i)
          out.entries.back().second += v;
        else
          out.entries.emplace_back(i, v);
        if (lamp_modulus_ > 0) {
          auto& x = out.entries.back().second;
          x %= lamp_modulus_;
          if (x < 0) x += lamp_modulus_;
        }
      }
      std::erase_if(out.entries, [](const auto& e) { return e.second == 0; });
      return out;
    }
    case Family::bs: {
      auto& f = std::get<KFraction>(a);
      return canonical_fraction(std::move(f.num), f.exp, bs_base_);
    }
    case Family::matrix: return a;
  }
  return a;
}

KPart GroupContext::add(const KPart& a, const KPart& b) const {
  switch (family_) {
    case Family::lamplighter: {
      const auto& x = std::get<Lamps>(a).entries;
      const auto& y = std::get<Lamps>(b).entries;
      Lamps out;
      out.entries.reserve(x.size() + y.size());
      std::size_t i = 0, j = 0;
      auto push = [&](std::int64_t idx, std::int64_t v) {
        if (lamp_modulus_ > 0) {
          v %= lamp_modulus_;
          if (v < 0) v += lamp_modulus_;
        }
        if (v != 0) out.entries.emplace_back(idx, v);
      };
      while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
          out.entries.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
          out.entries.push_back(y[j++]);
        } else {
          push(x[i].first, x[i].second + y[j].second);
          ++i;
          ++j;
        }
      }
      return out;
    }
    case Family::bs: {
      const auto& x = std::get<KFraction>(a);
      const auto& y = std::get<KFraction>(b);
      if (x.num == 0) return y;
      if (y.num == 0) return x;
      const std::int64_t e = std::max(x.exp, y.exp);
      BigInt num = x.num;
      if (e > x.exp) num *= ipow(bs_base_, e - x.exp);
      if (e > y.exp)
        num += y.num * ipow(bs_base_, e - y.exp);
      else
        num += y.num;
      return canonical_fraction(std::move(num), e, bs_base_);
    }
    case Family::matrix: {
      const auto& x = std::get<IntVec>(a);
      const auto& y = std::get<IntVec>(b);
      IntVec out(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = checked_add(x[i], y[i]);
      return out;
    }
  }
  return a;
}

KPart GroupContext::negate(const KPart& a) const {
  switch (family_) {
    case Family::lamplighter: {
      Lamps out = std::get<Lamps>(a);
      for (auto& [i, v] : out.entries) v = lamp_modulus_ > 0 ? lamp_modulus_ - v : -v;
      return out;
    }
    case Family::bs: {
      const auto& f = std::get<KFraction>(a);
      return KFraction{-f.num, f.exp};
    }
    case Family::matrix: {
      IntVec out = std::get<IntVec>(a);
      for (auto& x : out) x = checked_mul(x, -1);
      return out;
    }
  }
  return a;
}

KPart GroupContext::phi_power(const KPart& a, std::int64_t i) const {
  if (i == 0) return a;
  switch (family_) {
    case Family::lamplighter: {
      Lamps out = std::get<Lamps>(a);
      for (auto& e : out.entries) e.first = checked_add(e.first, i);
      return out;
    }
    case Family::bs: {
      const auto& f = std::get<KFraction>(a);
      if (f.num == 0) return f;
      return canonical_fraction(f.num, f.exp - i, bs_base_);
    }
    case Family::matrix: {
      IntVec v = std::get<IntVec>(a);
      const IntMatrix& step = i > 0 ? matrix_ : matrix_inv_;
      for (std::int64_t n = i > 0 ? i : -i; n > 0; --n) v = apply_checked(step, v);
      return v;
    }
  }
  return a;
}

Element GroupContext::multiply(const Element& g, const Element& h) const {
  if (is_zero(h.kpart)) return Element{g.kpart, checked_add(g.texp, h.texp)};
  return Element{add(g.kpart, phi_power(h.kpart, g.texp)), checked_add(g.texp, h.texp)};
}

Element GroupContext::invert(const Element& g) const {
  // (a,t^p)^-1 = (-phi^-p(a), t^-p)
  return Element{negate(phi_power(g.kpart, -g.texp)), -g.texp};
}

Element GroupContext::conjugate(const Element& x, const Element& g) const {
  return multiply(multiply(x, g), invert(x));
}

std::string GroupContext::encode(const Element& g) const {
  ByteWriter w;
  w.i64(g.texp);
  switch (family_) {
    case Family::lamplighter:
      for (auto [i, v] : std::get<Lamps>(g.kpart).entries) {
        w.i64(i);
        w.i64(v);
      }
      break;
    case Family::bs: {
      const auto& f = std::get<KFraction>(g.kpart);
      w.i64(f.exp);
      w.bigint(f.num);
      break;
    }
    case Family::matrix:
      for (auto x : std::get<IntVec>(g.kpart)) w.i64(x);
      break;
  }
  return w.take();
}

Element GroupContext::decode(std::string_view bytes) const {
  ByteReader r(bytes);
  Element g;
  g.texp = r.i64();
  switch (family_) {
    case Family::lamplighter: {
      Lamps l;
      while (!r.done()) {
        const std::int64_t i = r.i64();
        const std::int64_t v = r.i64();
        l.entries.emplace_back(i, v);
      }
      g.kpart = std::move(l);
      break;
    }
    case Family::bs: {
      KFraction f;
      f.exp = r.i64();
      f.num = r.bigint();
      g.kpart = std::move(f);
      break;
    }
    case Family::matrix: {
      IntVec v(dim());
      for (auto& x : v) x = r.i64();
      g.kpart = std::move(v);
      break;
    }
  }
  if (!r.done()) throw Error("trailing bytes in element encoding");
  if (!(canonicalize(g.kpart) == g.kpart)) throw Error("non-canonical element encoding");
  return g;
}

std::string GroupContext::format(const KPart& a) const {
  std::ostringstream os;
  switch (family_) {
    case Family::lamplighter: {
      os << '{';
      bool first = true;
      for (auto [i, v] : std::get<Lamps>(a).entries) {
        os << (first ? "" : ",") << i << ':' << v;
        first = false;
      }
      os << '}';
      break;
    }
    case Family::bs: {
      const auto& f = std::get<KFraction>(a);
      os << f.num;
      if (f.exp > 0) os << '/' << bs_base_ << '^' << f.exp;
      break;
    }
    case Family::matrix: {
      os << '(';
      const auto& v = std::get<IntVec>(a);
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
      os << ')';
      break;
    }
  }
  return os.str();
}

std::string GroupContext::format(const Element& g) const {
  return "(" + format(g.kpart) + ", t^" + std::to_string(g.texp) + ")";
}

std::string GroupContext::descriptor() const {
  std::ostringstream os;
  os << family_name(family_) << ':';
  switch (family_) {
    case Family::lamplighter: os << lamp_modulus_; break;
    case Family::bs: os << bs_base_; break;
    case Family::matrix: os << matrix_; break;
  }
  return os.str();
}

std::string GroupContext::serialize() const {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(family_));
  w.i64(lamp_modulus_);
  w.i64(bs_base_);
  w.u32(static_cast<std::uint32_t>(matrix_.rows()));
  for (std::size_t i = 0; i < matrix_.rows(); ++i)
    for (std::size_t j = 0; j < matrix_.cols(); ++j) w.i64(matrix_(i, j));
  w.u32(static_cast<std::uint32_t>(kgens_.size()));
  for (const auto& r : kgens_) w.bytes(encode(Element{r, 0}));
  return w.take();
}

GroupContext GroupContext::deserialize(std::string_view bytes) {
  ByteReader r(bytes);
  GroupSpec spec;
  const std::uint8_t fam = r.u8();
  if (fam > 2) throw Error("unknown group family in descriptor");
  spec.family = static_cast<Family>(fam);
  spec.lamp_modulus = r.i64();
  spec.bs_base = r.i64();
  const std::uint32_t n = r.u32();
  spec.matrix = IntMatrix(n, n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) spec.matrix(i, j) = r.i64();
  if (spec.family != Family::matrix) spec.matrix = IntMatrix();
  // Decoding a K-part needs a context of the right family and dimension.
  GroupSpec shell = spec;
  GroupContext probe(std::move(shell));
  const std::uint32_t count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) spec.kgens.push_back(probe.decode(r.bytes()).kpart);
  if (!r.done()) throw Error("trailing bytes in context descriptor");
  return GroupContext(std::move(spec));
}

GroupContext make_context(const GroupSpec& spec) { return GroupContext(spec); }

GroupContext lamplighter_context(std::int64_t modulus) {
  GroupSpec s;
  s.family = Family::lamplighter;
  s.lamp_modulus = modulus;
  return GroupContext(std::move(s));
}

GroupContext bs_context(std::int64_t base) {
  GroupSpec s;
  s.family = Family::bs;
  s.bs_base = base;
  return GroupContext(std::move(s));
}

GroupContext matrix_context(const IntMatrix& m) {
  GroupSpec s;
  s.family = Family::matrix;
  s.matrix = m;
  return GroupContext(std::move(s));
}

Element bs_element(const GroupContext& ctx, const BigInt& num, std::int64_t exp, std::int64_t texp) {
  return Element{ctx.canonicalize(KFraction{num, exp}), texp};
}

Element bs_element(const GroupContext& ctx, const BigInt& integer, std::int64_t texp) {
  return bs_element(ctx, integer, 0, texp);
}

Element lamp_element(const GroupContext& ctx, std::vector<std::pair<std::int64_t, std::int64_t>> lamps,
                     std::int64_t texp) {
  return Element{ctx.canonicalize(Lamps{std::move(lamps)}), texp};
}

Element vec_element(const GroupContext& ctx, IntVec v, std::int64_t texp) {
  if (v.size() != ctx.dim()) throw Error("vector has the wrong dimension");
  return Element{std::move(v), texp};
}

GroupSpec matrix_spec_from_json(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("matrix config: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("rows")) throw Error("matrix config needs \"n\" and \"rows\"");
  const auto n = j.at("n").get<std::int64_t>();
  if (n <= 0) throw Error("matrix config: n must be positive");
  const auto rows = j.at("rows").get<std::vector<std::vector<std::int64_t>>>();
  if (rows.size() != static_cast<std::size_t>(n)) throw Error("matrix config: wrong number of rows");
  GroupSpec spec;
  spec.family = Family::matrix;
  spec.matrix = IntMatrix(n, n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != static_cast<std::size_t>(n)) throw Error("matrix config: ragged rows");
    for (std::size_t c = 0; c < rows[i].size(); ++c) spec.matrix(i, c) = rows[i][c];
  }
  if (j.contains("generators")) {
    // Listed generators are closed under negation to form R.
    for (auto v : j.at("generators").get<std::vector<IntVec>>()) {
      if (v.size() != static_cast<std::size_t>(n)) throw Error("matrix config: generator of wrong length");
      spec.kgens.emplace_back(v);
      for (auto& x : v) x = -x;
      spec.kgens.emplace_back(std::move(v));
    }
  }
  return spec;
}

GroupSpec matrix_spec_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open matrix config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return matrix_spec_from_json(buf.str());
}

namespace {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h *= 0xff51afd7ed558ccdULL;
  return h ^ (h >> 33);
}

}  // namespace

std::uint64_t hash_element(const Element& g) {
  std::uint64_t h = mix(0, static_cast<std::uint64_t>(g.texp));
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Lamps>) {
          for (auto [i, v] : a.entries) h = mix(mix(h, static_cast<std::uint64_t>(i)), static_cast<std::uint64_t>(v));
        } else if constexpr (std::is_same_v<T, KFraction>) {
          h = mix(h, static_cast<std::uint64_t>(a.exp));
          const auto& be = a.num.backend();
          h = mix(h, be.sign() ? 1 : 0);
          for (std::size_t i = 0; i < be.size(); ++i) h = mix(h, static_cast<std::uint64_t>(be.limbs()[i]));
        } else {
          for (auto x : a) h = mix(h, static_cast<std::uint64_t>(x));
        }
      },
      g.kpart);
  return h;
}

}  // namespace abc

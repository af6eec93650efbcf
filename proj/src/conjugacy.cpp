#include "abc/conjugacy.hpp"

#include "abc/bytes.hpp"
#include "abc/parallel.hpp"
#include "abc/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace abc {

std::string ConjugacyKey::encode() const {
  ByteWriter w;
  w.i64(texp);
  w.u32(static_cast<std::uint32_t>(payload.size()));
  for (const auto& x : payload) w.bigint(x);
  return w.take();
}

std::string ConjugacyKey::str() const {
  std::ostringstream os;
  os << texp << ":[";
  for (std::size_t i = 0; i < payload.size(); ++i) os << (i ? "," : "") << payload[i];
  os << ']';
  return os.str();
}

QuotientDescriptor lattice_quotient(const IntMatrix& m, std::int64_t p) {
  const std::size_t n = m.rows();
  const BigMatrix big = matrix_cast<BigInt>(m);
  const BigMatrix step = p >= 0 ? big : matrix_cast<BigInt>(unimodular_inverse(m));
  const BigMatrix mp = matrix_power(step, static_cast<std::size_t>(p >= 0 ? p : -p));
  QuotientDescriptor q;
  q.smith = smith_normal_form(BigMatrix::identity(n) - mp);
  const RatMatrix uinv = rational_inverse(matrix_cast<Rational>(q.smith.U));
  BigMatrix uinv_int(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) uinv_int(i, j) = BigInt(numerator(uinv(i, j)));
  q.action = q.smith.U * big * uinv_int;
  return q;
}

BigInt bs_residue(const KFraction& a, std::int64_t k, std::int64_t p) {
  const std::int64_t len = p >= 0 ? p : -p;
  if (len == 0) throw Error("bs residue needs a nonzero t-exponent");
  const BigInt modulus = ipow(k, len) - 1;
  if (modulus == 1) return 0;
  // k has multiplicative order |p| modulo k^|p| - 1, so k^-e = k^((-e) mod |p|).
  std::int64_t shift = (-a.exp) % len;
  if (shift < 0) shift += len;
  return mod_floor(a.num * ipow(k, shift), modulus);
}

ConjugacyKeyer::ConjugacyKeyer(const GroupContext& ctx, KeyOptions opts) : ctx_(ctx), opts_(opts) {
  if (ctx_.family() == Family::matrix) refuse_matrix_ = !cyclotomic_orders(ctx_.matrix()).empty();
}

ConjugacyKey ConjugacyKeyer::key(const Element& g) const {
  switch (ctx_.family()) {
    case Family::bs: return bs_key(std::get<KFraction>(g.kpart), g.texp);
    case Family::lamplighter: return lamp_key(std::get<Lamps>(g.kpart), g.texp);
    case Family::matrix:
      if (refuse_matrix_)
        throw Error("conjugacy keys are unavailable: the matrix has root-of-unity eigenvalues");
      return matrix_key(std::get<IntVec>(g.kpart), g.texp);
  }
  return {};
}

ConjugacyKey ConjugacyKeyer::bs_key(const KFraction& a, std::int64_t p) const {
  // Class of (a, t^p) is {k^m a + (1 - k^p) c}. For p < 0 the ideal
  // (1 - k^p) Z[1/k] = k^p (k^|p| - 1) Z[1/k] = (k^|p| - 1) Z[1/k].
  const std::int64_t k = ctx_.bs_base();
  if (p == 0) {
    // Orbit {k^m a}: the representative is the integer not divisible by k.
    BigInt num = a.num;
    while (num != 0 && num % k == 0) num /= k;
    return {0, {num}};
  }
  const std::int64_t len = p > 0 ? p : -p;
  const BigInt modulus = ipow(k, len) - 1;
  BigInt x = bs_residue(a, k, p);
  BigInt best = x;
  for (std::int64_t i = 1; i < len; ++i) {
    x = (x * k) % modulus;
    best = std::min(best, x);
  }
  return {p, {best}};
}

ConjugacyKey ConjugacyKeyer::lamp_key(const Lamps& f, std::int64_t p) const {
  const std::int64_t m = ctx_.lamp_modulus();
  ConjugacyKey key{p, {}};
  if (p == 0) {
    if (f.entries.empty()) return key;
    const std::int64_t base = f.entries.front().first;
    for (auto [i, v] : f.entries) {
      key.payload.emplace_back(i - base);
      key.payload.emplace_back(v);
    }
    return key;
  }
  // (1 - phi^|p|) K is exactly the kernel of the block-sum map, and phi
  // rotates the block sums.
  const std::int64_t len = p > 0 ? p : -p;
  std::vector<std::int64_t> sums(static_cast<std::size_t>(len), 0);
  for (auto [i, v] : f.entries) {
    std::int64_t j = i % len;
    if (j < 0) j += len;
    auto& s = sums[static_cast<std::size_t>(j)];
    s += v;
    if (m > 0) s %= m;
  }
  std::vector<std::int64_t> best = sums;
  std::vector<std::int64_t> rot(sums.size());
  for (std::size_t shift = 1; shift < sums.size(); ++shift) {
    for (std::size_t j = 0; j < sums.size(); ++j) rot[j] = sums[(j + shift) % sums.size()];
    if (rot < best) best = rot;
  }
  for (auto s : best) key.payload.emplace_back(s);
  return key;
}

const QuotientDescriptor& ConjugacyKeyer::quotient(std::int64_t p) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = quotients_.find(p);
  if (it == quotients_.end()) {
    auto q = std::make_unique<QuotientDescriptor>(lattice_quotient(ctx_.matrix(), p));
    if (!q->smith.finite_quotient()) throw Error("I - M^" + std::to_string(p) + " is singular");
    it = quotients_.emplace(p, std::move(q)).first;
  }
  return *it->second;
}

namespace {

std::int64_t sup_norm(const IntVec& v) {
  std::int64_t n = 0;
  for (auto x : v) n = std::max(n, x < 0 ? -x : x);
  return n;
}

// M v, or nullopt on 64-bit overflow.
std::optional<IntVec> apply_or_overflow(const IntMatrix& m, const IntVec& v) {
  IntVec out(v.size(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::int64_t prod;
      if (__builtin_mul_overflow(m(i, j), v[j], &prod) || __builtin_add_overflow(acc, prod, &acc))
        return std::nullopt;
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace

ConjugacyKey ConjugacyKeyer::matrix_key(const IntVec& v, std::int64_t p) const {
  ConjugacyKey key{p, {}};
  if (p != 0) {
    const QuotientDescriptor& q = quotient(p);
    const auto& d = q.smith.diagonal;
    const std::size_t n = v.size();
    std::vector<BigInt> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      BigInt acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += q.smith.U(i, j) * v[j];
      x[i] = mod_floor(acc, d[i]);
    }
    // M^p acts trivially on the quotient, so the orbit closes within |p| steps.
    std::vector<BigInt> best = x;
    const std::vector<BigInt> start = x;
    for (;;) {
      std::vector<BigInt> next(n);
      for (std::size_t i = 0; i < n; ++i) {
        BigInt acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += q.action(i, j) * x[j];
        next[i] = mod_floor(acc, d[i]);
      }
      if (next == start) break;
      if (next < best) best = next;
      x = std::move(next);
    }
    key.payload = std::move(best);
    return key;
  }

  // Bounded search over {M^i v : |i| <= I_max}; stop a direction once the
  // norm has clearly left the neighbourhood of the minimum.
  const std::int64_t start_norm = sup_norm(v);
  const std::int64_t ceiling = std::max<std::int64_t>(std::int64_t{1} << 40, start_norm << 8);
  IntVec best = v;
  std::int64_t best_norm = start_norm;
  std::int64_t best_at = 0;
  for (int dir : {1, -1}) {
    const IntMatrix& step = dir > 0 ? ctx_.matrix() : ctx_.matrix_inverse();
    IntVec cur = v;
    for (std::int64_t i = 1; i <= opts_.orbit_bound; ++i) {
      auto next = apply_or_overflow(step, cur);
      if (!next) break;
      cur = std::move(*next);
      const std::int64_t nrm = sup_norm(cur);
      if (nrm > ceiling) break;
      if (nrm < best_norm || (nrm == best_norm && cur < best)) {
        best = cur;
        best_norm = nrm;
        best_at = i * dir;
      }
    }
  }
  if (best_at == opts_.orbit_bound || best_at == -opts_.orbit_bound)
    throw CapExceeded("matrix orbit search hit its bound of " + std::to_string(opts_.orbit_bound));
  for (auto c : best) key.payload.emplace_back(c);
  return key;
}

ConjugacyKey conjugacy_key(const GroupContext& ctx, const Element& g, KeyOptions opts) {
  return ConjugacyKeyer(ctx, opts).key(g);
}

bool are_conjugate(const GroupContext& ctx, const Element& g, const Element& h, KeyOptions opts) {
  const ConjugacyKeyer keyer(ctx, opts);
  return keyer.key(g) == keyer.key(h);
}

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) x = std::exchange(parent_[x], root);
  return root;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

std::size_t Partition::block_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < block.size(); ++i)
    if (block[i] == i) ++n;
  return n;
}

namespace {

Partition partition_from(UnionFind& uf) {
  Partition p;
  p.block.resize(uf.size());
  std::vector<std::size_t> least(uf.size(), uf.size());
  for (std::size_t i = 0; i < uf.size(); ++i) {
    auto& l = least[uf.find(i)];
    if (l == uf.size()) l = i;
    p.block[i] = l;
  }
  return p;
}

}  // namespace

Partition brute_force_partition(const BallIndex& index, std::size_t r, std::size_t conjugator_radius,
                                std::size_t threads) {
  if (index.radius() < std::max(r, conjugator_radius))
    throw Error("oracle needs a ball of radius at least max(r, conjugator radius)");
  if (threads == 0) threads = default_threads();
  const GroupContext& ctx = index.context();
  const auto& gens = ctx.generators();
  const std::size_t targets = index.ball_size(r);
  const std::size_t conjugators = index.ball_size(conjugator_radius);

  // y = y' s along the BFS tree, so y^-1 g y = s^-1 (y'^-1 g y') s.
  std::vector<std::size_t> parent(conjugators, 0);
  for (std::size_t y = 1; y < conjugators; ++y) {
    const auto& e = index.entry(y);
    parent[y] = *index.find(ctx.multiply(e.element, gens[ctx.generator_inverse(e.pred)]));
  }

  // s^-1 (a, t^p) s for each generator s, without general multiplication.
  const std::size_t t_gen = ctx.t_generator(), t_inv = ctx.t_inv_generator();
  std::vector<KPart> neg_r(gens.size());
  for (std::size_t s = 1; s < t_gen; ++s) neg_r[s] = ctx.negate(gens[s].kpart);
  auto conjugate_by = [&](std::size_t s, const Element& v) -> Element {
    if (s == 0) return v;
    if (s == t_gen) return {ctx.phi_power(v.kpart, -1), v.texp};
    if (s == t_inv) return {ctx.phi_power(v.kpart, 1), v.texp};
    return {ctx.add(ctx.add(v.kpart, ctx.phi_power(gens[s].kpart, v.texp)), neg_r[s]), v.texp};
  };

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> merges(shard_count(targets, threads));
  parallel_shards(targets, threads, [&](std::size_t shard, std::size_t b, std::size_t e) {
    std::vector<Element> values(conjugators);
    auto& out = merges[shard];
    for (std::size_t g = b; g < e; ++g) {
      values[0] = index.entry(g).element;
      std::size_t last = g;
      for (std::size_t y = 1; y < conjugators; ++y) {
        const std::size_t s = index.entry(y).pred;
        values[y] = conjugate_by(s, values[parent[y]]);
        auto hit = index.find(values[y]);
        if (hit && *hit < targets && *hit != g && *hit != last) {
          out.emplace_back(g, *hit);
          last = *hit;
        }
      }
    }
  });

  UnionFind uf(targets);
  for (const auto& shard : merges)
    for (auto [a, b] : shard) uf.unite(a, b);
  return partition_from(uf);
}

Partition key_partition(const BallIndex& index, std::size_t r, const ConjugacyKeyer& keyer) {
  const std::size_t n = index.ball_size(r);
  Partition p;
  p.block.resize(n);
  std::unordered_map<std::string, std::size_t> first;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = first.emplace(keyer.key(index.entry(i).element).encode(), i);
    p.block[i] = it->second;
  }
  return p;
}

PartitionComparison compare_partitions(const Partition& keys, const Partition& oracle) {
  if (keys.block.size() != oracle.block.size()) throw Error("partitions cover different sets");
  PartitionComparison c;
  c.key_classes = keys.block_count();
  c.oracle_classes = oracle.block_count();
  for (std::size_t i = 0; i < keys.block.size(); ++i) {
    const std::size_t ob = oracle.block[i];
    if (keys.block[i] != keys.block[ob]) {
      ++c.split_count;
      if (c.split_samples.size() < PartitionComparison::kSampleLimit) c.split_samples.emplace_back(ob, i);
    }
    const std::size_t kb = keys.block[i];
    if (oracle.block[i] != oracle.block[kb]) {
      ++c.unmerged_count;
      if (c.unmerged_samples.size() < PartitionComparison::kSampleLimit) c.unmerged_samples.emplace_back(kb, i);
    }
  }
  return c;
}

}  // namespace abc

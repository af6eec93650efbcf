#pragma once

#include "abc/ball.hpp"
#include "abc/group.hpp"
#include "abc/smith.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace abc {

// Canonical conjugacy invariant: texp plus a family-specific payload.
//
//   bs          p != 0: min over i of k^i * a mod (k^|p| - 1);  p = 0: the k-free numerator
//   lamplighter p != 0: least rotation of the |p| block sums;   p = 0: support shifted to start at 0
//   matrix      p != 0: least orbit point of v in Z^n/(I - M^p)Z^n (SNF coordinates);
//               p = 0: least-norm, then least, point of {M^i v} in a bounded window
struct ConjugacyKey {
  std::int64_t texp = 0;
  std::vector<BigInt> payload;

  friend bool operator==(const ConjugacyKey& a, const ConjugacyKey& b) {
    return a.texp == b.texp && a.payload == b.payload;
  }
  friend bool operator<(const ConjugacyKey& a, const ConjugacyKey& b) {
    if (a.texp != b.texp) return a.texp < b.texp;
    return a.payload < b.payload;
  }
  std::string encode() const;
  std::string str() const;
};

// Z^n / (I - M^p) Z^n with the induced action of M in SNF coordinates.
struct QuotientDescriptor {
  SmithForm smith;
  BigMatrix action;  // U M U^-1, acting on coordinates mod d_i
};

QuotientDescriptor lattice_quotient(const IntMatrix& m, std::int64_t p);

struct KeyOptions {
  std::int64_t orbit_bound = 64;  // I_max for matrix texp-0 keys
};

// Computes keys for one context, caching per-p quotient data. Thread-safe.
class ConjugacyKeyer {
 public:
  explicit ConjugacyKeyer(const GroupContext& ctx, KeyOptions opts = {});

  ConjugacyKey key(const Element& g) const;
  bool are_conjugate(const Element& g, const Element& h) const { return key(g) == key(h); }
  const GroupContext& context() const { return ctx_; }

 private:
  ConjugacyKey bs_key(const KFraction& a, std::int64_t p) const;
  ConjugacyKey lamp_key(const Lamps& f, std::int64_t p) const;
  ConjugacyKey matrix_key(const IntVec& v, std::int64_t p) const;
  const QuotientDescriptor& quotient(std::int64_t p) const;

  GroupContext ctx_;
  KeyOptions opts_;
  bool refuse_matrix_ = false;
  mutable std::mutex mu_;
  mutable std::map<std::int64_t, std::unique_ptr<QuotientDescriptor>> quotients_;
};

ConjugacyKey conjugacy_key(const GroupContext& ctx, const Element& g, KeyOptions opts = {});
bool are_conjugate(const GroupContext& ctx, const Element& g, const Element& h, KeyOptions opts = {});

// Canonical bs residue of a = num k^-e modulo k^|p| - 1, before orbit minimisation.
BigInt bs_residue(const KFraction& a, std::int64_t k, std::int64_t p);

// Disjoint-set forest with path compression and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

// A partition of the ball entries with id < size: block[i] is the least id in
// the block of entry i.
struct Partition {
  std::vector<std::size_t> block;
  std::size_t block_count() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

// Merges g, h in S^r whenever h = x g x^-1 for some x in S^RC. Sound, and
// complete once RC is large enough. `index` must have radius >= max(r, RC).
Partition brute_force_partition(const BallIndex& index, std::size_t r, std::size_t conjugator_radius,
                                std::size_t threads = 0);

Partition key_partition(const BallIndex& index, std::size_t r, const ConjugacyKeyer& keyer);

struct PartitionComparison {
  std::size_t key_classes = 0;
  std::size_t oracle_classes = 0;
  // Elements merged by the oracle with their block representative but
  // carrying a different key (soundness violations).
  std::size_t split_count = 0;
  // Elements sharing a key with their key-block representative that the
  // oracle did not merge (completeness violations).
  std::size_t unmerged_count = 0;
  // Up to kSampleLimit (representative, element) id pairs of each kind.
  static constexpr std::size_t kSampleLimit = 32;
  std::vector<std::pair<std::size_t, std::size_t>> split_samples;
  std::vector<std::pair<std::size_t, std::size_t>> unmerged_samples;
  bool agree() const { return split_count == 0 && unmerged_count == 0; }
};

PartitionComparison compare_partitions(const Partition& keys, const Partition& oracle);

}  // namespace abc

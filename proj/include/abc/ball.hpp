#pragma once

#include "abc/group.hpp"
#include "abc/word.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace abc {

struct BallEntry {
  Element element;
  std::string encoding;
  std::uint32_t length = 0;
  // Last generator of a geodesic: element = (element * S[pred]^-1) * S[pred]. 0 for the identity.
  std::uint32_t pred = 0;
  // Fewest t^{+-1} letters over all geodesics.
  std::uint32_t min_t = 0;
};

struct EnumerateOptions {
  std::size_t element_cap = 50'000'000;
  std::size_t threads = 0;  // 0: default_threads()
};

// The ball S^R with geodesic witnesses. Entries are grouped by radius and
// sorted by encoding within each sphere.
class BallIndex {
 public:
  BallIndex(GroupContext ctx, std::vector<BallEntry> entries, std::vector<std::size_t> sphere_starts);

  const GroupContext& context() const { return ctx_; }
  std::size_t radius() const { return sphere_starts_.size() - 2; }
  std::size_t size() const { return entries_.size(); }

  const BallEntry& entry(std::size_t id) const { return entries_[id]; }
  const std::vector<BallEntry>& entries() const { return entries_; }

  std::optional<std::size_t> find(const Element& g) const;
  std::optional<std::size_t> find_encoding(const std::string& enc) const;
  bool contains(const Element& g) const { return find(g).has_value(); }

  // Throw for elements outside the ball.
  std::uint32_t word_length(const Element& g) const;
  std::uint32_t min_t_count(const Element& g) const;
  Word geodesic(const Element& g) const;
  Word geodesic_of(std::size_t id) const;

  std::span<const BallEntry> sphere(std::size_t r) const;
  std::pair<std::size_t, std::size_t> sphere_range(std::size_t r) const;
  std::size_t sphere_size(std::size_t r) const;
  std::size_t ball_size(std::size_t r) const;

 private:
  std::size_t require(const Element& g) const;

  GroupContext ctx_;
  std::vector<BallEntry> entries_;
  std::vector<std::size_t> sphere_starts_;  // radius + 2 offsets
  // Open addressing over hash_element: slot holds id + 1, 0 when empty.
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> slots_;
};

BallIndex enumerate_ball(const GroupContext& ctx, std::size_t radius, const EnumerateOptions& opts = {});

// The sub-ball of radius r <= index.radius().
BallIndex truncate_ball(const BallIndex& index, std::size_t r);

// Cache file: "ABCIDX1", context descriptor, per-radius blocks of
// (encoding, length, pred, min_t), trailing FNV-1a 64 checksum.
std::string serialize_ball(const BallIndex& index);
BallIndex deserialize_ball(std::string_view bytes);
void save_ball(const BallIndex& index, const std::string& path);
BallIndex load_ball(const std::string& path);

}  // namespace abc

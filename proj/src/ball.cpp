#include "abc/ball.hpp"

#include "abc/bytes.hpp"
#include "abc/parallel.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace abc {

namespace {

constexpr std::string_view kMagic = "ABCIDX1";
constexpr std::string_view kMagicPrefix = "ABCIDX";

}  // namespace

BallIndex::BallIndex(GroupContext ctx, std::vector<BallEntry> entries, std::vector<std::size_t> sphere_starts)
    : ctx_(std::move(ctx)), entries_(std::move(entries)), sphere_starts_(std::move(sphere_starts)) {
  if (sphere_starts_.size() < 2 || sphere_starts_.back() != entries_.size())
    throw Error("inconsistent ball index layout");
  if (entries_.size() >= std::numeric_limits<std::uint32_t>::max()) throw Error("ball index too large");
  std::size_t cap = 16;
  while (cap < 2 * entries_.size()) cap *= 2;
  slots_.assign(cap, 0);
  hashes_.resize(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const std::uint64_t h = hash_element(entries_[i].element);
    hashes_[i] = h;
    for (std::size_t slot = h & (cap - 1);; slot = (slot + 1) & (cap - 1)) {
      const std::uint32_t id = slots_[slot];
      if (id == 0) {
        slots_[slot] = static_cast<std::uint32_t>(i + 1);
        break;
      }
      if (hashes_[id - 1] == h && entries_[id - 1].element == entries_[i].element)
        throw Error("duplicate element in ball index");
    }
  }
}

std::optional<std::size_t> BallIndex::find(const Element& g) const {
  const std::uint64_t h = hash_element(g);
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t slot = h & mask;; slot = (slot + 1) & mask) {
    const std::uint32_t id = slots_[slot];
    if (id == 0) return std::nullopt;
    if (hashes_[id - 1] == h && entries_[id - 1].element == g) return id - 1;
  }
}

std::optional<std::size_t> BallIndex::find_encoding(const std::string& enc) const {
  return find(ctx_.decode(enc));
}

std::size_t BallIndex::require(const Element& g) const {
  auto id = find(g);
  if (!id) throw Error("element " + ctx_.format(g) + " lies outside the ball of radius " + std::to_string(radius()));
  return *id;
}

std::uint32_t BallIndex::word_length(const Element& g) const { return entries_[require(g)].length; }
std::uint32_t BallIndex::min_t_count(const Element& g) const { return entries_[require(g)].min_t; }
Word BallIndex::geodesic(const Element& g) const { return geodesic_of(require(g)); }

Word BallIndex::geodesic_of(std::size_t id) const {
  Word rev;
  while (entries_[id].length > 0) {
    const std::size_t s = entries_[id].pred;
    rev.push_back(letter_of(ctx_, s));
    const Element prev = ctx_.multiply(entries_[id].element, ctx_.generators()[ctx_.generator_inverse(s)]);
    id = require(prev);
  }
  return Word(rev.rbegin(), rev.rend());
}

std::pair<std::size_t, std::size_t> BallIndex::sphere_range(std::size_t r) const {
  if (r > radius()) throw Error("sphere radius " + std::to_string(r) + " exceeds the enumerated radius");
  return {sphere_starts_[r], sphere_starts_[r + 1]};
}

std::span<const BallEntry> BallIndex::sphere(std::size_t r) const {
  auto [b, e] = sphere_range(r);
  return std::span<const BallEntry>(entries_.data() + b, e - b);
}

std::size_t BallIndex::sphere_size(std::size_t r) const {
  auto [b, e] = sphere_range(r);
  return e - b;
}

std::size_t BallIndex::ball_size(std::size_t r) const { return sphere_range(r).second; }

BallIndex enumerate_ball(const GroupContext& ctx, std::size_t radius, const EnumerateOptions& opts) {
  const std::size_t threads = opts.threads == 0 ? default_threads() : opts.threads;
  const auto& gens = ctx.generators();

  std::vector<BallEntry> entries;
  std::unordered_map<std::string, std::size_t> lookup;
  std::vector<std::size_t> starts{0};

  BallEntry root{ctx.identity(), ctx.encode(ctx.identity()), 0, 0, 0};
  lookup.emplace(root.encoding, 0);
  entries.push_back(std::move(root));
  starts.push_back(1);

  struct Candidate {
    Element element;
    std::string encoding;
    std::uint32_t pred;
    std::uint32_t min_t;
  };

  for (std::size_t r = 1; r <= radius; ++r) {
    const std::size_t begin = starts[r - 1], end = starts[r];
    const std::size_t n = end - begin;
    std::vector<std::vector<Candidate>> shards(shard_count(n, threads));
    parallel_shards(n, threads, [&](std::size_t shard, std::size_t b, std::size_t e) {
      auto& out = shards[shard];
      for (std::size_t i = begin + b; i < begin + e; ++i) {
        const BallEntry& parent = entries[i];
        for (std::size_t s = 1; s < gens.size(); ++s) {
          Element h = ctx.multiply(parent.element, gens[s]);
          std::string enc = ctx.encode(h);
          const std::uint32_t t = parent.min_t + (ctx.is_t_generator(s) ? 1U : 0U);
          out.push_back({std::move(h), std::move(enc), static_cast<std::uint32_t>(s), t});
        }
      }
    });

    // Merge in shard order: the first proposal wins the predecessor slot and
    // min_t takes the minimum over all proposals from the previous sphere.
    std::vector<BallEntry> layer;
    std::unordered_map<std::string, std::size_t> layer_lookup;
    for (auto& shard : shards) {
      for (auto& c : shard) {
        if (lookup.count(c.encoding)) continue;
        auto [it, inserted] = layer_lookup.emplace(c.encoding, layer.size());
        if (inserted) {
          layer.push_back({std::move(c.element), std::move(c.encoding), static_cast<std::uint32_t>(r), c.pred, c.min_t});
          if (entries.size() + layer.size() > opts.element_cap)
            throw CapExceeded("ball enumeration exceeded the element cap of " + std::to_string(opts.element_cap) +
                              " at radius " + std::to_string(r));
        } else {
          auto& existing = layer[it->second];
          existing.min_t = std::min(existing.min_t, c.min_t);
        }
      }
      shard.clear();
      shard.shrink_to_fit();
    }
    std::sort(layer.begin(), layer.end(),
              [](const BallEntry& a, const BallEntry& b) { return a.encoding < b.encoding; });
    for (auto& e : layer) {
      lookup.emplace(e.encoding, entries.size());
      entries.push_back(std::move(e));
    }
    starts.push_back(entries.size());
  }
  return BallIndex(ctx, std::move(entries), std::move(starts));
}

BallIndex truncate_ball(const BallIndex& index, std::size_t r) {
  const std::size_t end = index.ball_size(r);
  std::vector<BallEntry> entries(index.entries().begin(), index.entries().begin() + static_cast<std::ptrdiff_t>(end));
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 0; i <= r; ++i) starts.push_back(index.ball_size(i));
  return BallIndex(index.context(), std::move(entries), std::move(starts));
}

std::string serialize_ball(const BallIndex& index) {
  ByteWriter w;
  w.raw(kMagic);
  w.bytes(index.context().serialize());
  w.u32(static_cast<std::uint32_t>(index.radius()));
  for (std::size_t r = 0; r <= index.radius(); ++r) {
    const auto sphere = index.sphere(r);
    w.u32(static_cast<std::uint32_t>(sphere.size()));
    for (const auto& e : sphere) {
      w.bytes(e.encoding);
      w.u32(e.length);
      w.u32(e.pred);
      w.u32(e.min_t);
    }
  }
  const std::uint64_t sum = fnv1a64(w.str());
  w.u64(sum);
  return w.take();
}

BallIndex deserialize_ball(std::string_view bytes) {
  if (bytes.size() < kMagic.size() || bytes.substr(0, kMagicPrefix.size()) != kMagicPrefix)
    throw Error("not a ball index cache file");
  if (bytes.substr(0, kMagic.size()) != kMagic)
    throw Error("unsupported ball index cache version '" + std::string(bytes.substr(0, kMagic.size())) + "'");
  if (bytes.size() < kMagic.size() + 8) throw Error("ball index cache checksum mismatch (truncated file)");
  const std::string_view body = bytes.substr(0, bytes.size() - 8);
  ByteReader tail(bytes.substr(bytes.size() - 8));
  if (tail.u64() != fnv1a64(body)) throw Error("ball index cache checksum mismatch");

  ByteReader r(body.substr(kMagic.size()));
  GroupContext ctx = GroupContext::deserialize(r.bytes());
  const std::uint32_t radius = r.u32();
  std::vector<BallEntry> entries;
  std::vector<std::size_t> starts{0};
  for (std::uint32_t rad = 0; rad <= radius; ++rad) {
    const std::uint32_t count = r.u32();
    std::string prev;
    for (std::uint32_t i = 0; i < count; ++i) {
      BallEntry e;
      e.encoding = std::string(r.bytes());
      e.length = r.u32();
      e.pred = r.u32();
      e.min_t = r.u32();
      if (e.length != rad) throw Error("ball index cache: entry length does not match its radius block");
      if (e.pred >= ctx.generators().size()) throw Error("ball index cache: bad predecessor");
      if (i > 0 && !(prev < e.encoding)) throw Error("ball index cache: radius block not sorted");
      prev = e.encoding;
      e.element = ctx.decode(e.encoding);
      entries.push_back(std::move(e));
    }
    starts.push_back(entries.size());
  }
  if (!r.done()) throw Error("ball index cache: trailing data");
  return BallIndex(std::move(ctx), std::move(entries), std::move(starts));
}

void save_ball(const BallIndex& index, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  const std::string data = serialize_ball(index);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("write failed for " + path);
}

BallIndex load_ball(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return deserialize_ball(buf.str());
}

}  // namespace abc

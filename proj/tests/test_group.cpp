#include "abc/group.hpp"
#include "abc/ball.hpp"

#include "doctest.h"

#include <random>
#include <set>

using namespace abc;

namespace {

Element lamp(const GroupContext& ctx, std::vector<std::pair<std::int64_t, std::int64_t>> l, std::int64_t p) {
  return lamp_element(ctx, std::move(l), p);
}

std::vector<GroupContext> sample_contexts() {
  return {lamplighter_context(2), lamplighter_context(3), lamplighter_context(0), bs_context(2), bs_context(3),
          matrix_context(IntMatrix{{2, 1}, {1, 1}})};
}

}  // namespace

TEST_CASE("context construction and validation") {
  const auto bs = bs_context(2);
  CHECK(bs.generators().size() == 5);
  CHECK(bs.is_identity(bs.generators()[0]));
  CHECK(lamplighter_context(2).generators().size() == 4);
  CHECK(lamplighter_context(0).generators().size() == 5);
  CHECK(matrix_context(IntMatrix{{2, 1}, {1, 1}}).generators().size() == 7);

  CHECK_NOTHROW(matrix_context(IntMatrix{{2, 1}, {1, 0}}));  // det -1
  CHECK_THROWS_AS(matrix_context(IntMatrix{{2, 0}, {0, 2}}), Error);
  CHECK_THROWS_AS(bs_context(1), Error);
  CHECK_THROWS_AS(lamplighter_context(1), Error);
  CHECK_THROWS_AS(lamplighter_context(-3), Error);

  GroupSpec spec;
  spec.family = Family::bs;
  spec.bs_base = 2;
  spec.kgens = {KFraction{1, 0}};
  CHECK_THROWS_AS(make_context(spec), Error);
  spec.kgens = {KFraction{1, 0}, KFraction{-1, 0}, KFraction{0, 0}, KFraction{3, 0}, KFraction{-3, 0}};
  const auto ctx = make_context(spec);
  CHECK(ctx.kgens().size() == 4);
  CHECK(ctx.generators().size() == 7);
}

TEST_CASE("generator inverses") {
  for (const auto& ctx : sample_contexts()) {
    const auto& gens = ctx.generators();
    for (std::size_t s = 0; s < gens.size(); ++s)
      CHECK(ctx.is_identity(ctx.multiply(gens[s], gens[ctx.generator_inverse(s)])));
  }
}

TEST_CASE("multiplication examples") {
  const auto bs = bs_context(2);
  const Element t = bs.generators()[bs.t_generator()];
  const Element ti = bs.generators()[bs.t_inv_generator()];
  CHECK(bs.multiply(bs.multiply(t, bs_element(bs, 1, 0)), ti) == bs_element(bs, 2, 0));
  CHECK(bs.multiply(bs_element(bs, 1, 0), bs_element(bs, 1, 1, 0)) == bs_element(bs, 3, 1, 0));
  CHECK(bs.invert(bs_element(bs, 1, 1)) == bs_element(bs, -1, 1, -1));
  CHECK(bs.invert(t) == ti);

  const auto ll = lamplighter_context(2);
  const Element d0 = lamp(ll, {{0, 1}}, 0);
  CHECK(ll.multiply(d0, ll.generators()[ll.t_generator()]) == lamp(ll, {{0, 1}}, 1));
  CHECK(ll.invert(d0) == d0);
}

TEST_CASE("phi_power examples") {
  const auto bs = bs_context(2);
  CHECK(bs.phi_power(KFraction{3, 0}, 2) == KPart(KFraction{12, 0}));
  CHECK(bs.phi_power(KFraction{3, 0}, -2) == KPart(KFraction{3, 2}));
  const auto ll = lamplighter_context(2);
  CHECK(ll.phi_power(Lamps{{{0, 1}}}, 5) == KPart(Lamps{{{5, 1}}}));
  const auto mx = matrix_context(IntMatrix{{2, 1}, {1, 1}});
  CHECK(mx.phi_power(IntVec{1, 0}, 1) == KPart(IntVec{2, 1}));
  CHECK(mx.phi_power(mx.phi_power(IntVec{1, 0}, 3), -3) == KPart(IntVec{1, 0}));
}

TEST_CASE("canonical forms") {
  const auto bs = bs_context(2);
  CHECK(bs_element(bs, 4, 2, 0) == bs_element(bs, 1, 0));
  CHECK(bs_element(bs, 0, 5, 0) == bs_element(bs, 0, 0));
  const auto ll = lamplighter_context(3);
  CHECK(lamp(ll, {{2, 4}, {0, 3}, {1, -1}}, 0) == lamp(ll, {{1, 2}, {2, 1}}, 0));
}

TEST_CASE("defining relation") {
  for (std::int64_t k : {2, 3, 5}) {
    const auto bs = bs_context(k);
    const Element t = bs.generators()[bs.t_generator()];
    CHECK(bs.conjugate(t, bs_element(bs, 1, 0)) == bs_element(bs, k, 0));
  }
}

TEST_CASE("encoding is injective, order-preserving on texp and round-trips") {
  for (const auto& ctx : sample_contexts()) {
    const auto ball = enumerate_ball(ctx, 4);
    std::set<std::string> seen;
    for (const auto& e : ball.entries()) {
      CHECK(ctx.decode(e.encoding) == e.element);
      CHECK(seen.insert(e.encoding).second);
    }
    const Element t = ctx.generators()[ctx.t_generator()];
    CHECK(ctx.encode(ctx.identity()) < ctx.encode(t));
    CHECK(ctx.encode(ctx.generators()[ctx.t_inv_generator()]) < ctx.encode(ctx.identity()));
  }
}

TEST_CASE("group axioms on random samples from S^5") {
  std::mt19937_64 rng(12345);
  for (const auto& ctx : sample_contexts()) {
    const auto ball = enumerate_ball(ctx, 5);
    std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
    for (int trial = 0; trial < 300; ++trial) {
      const Element& a = ball.entry(pick(rng)).element;
      const Element& b = ball.entry(pick(rng)).element;
      const Element& c = ball.entry(pick(rng)).element;
      const Element ab_c = ctx.multiply(ctx.multiply(a, b), c);
      CHECK(ab_c == ctx.multiply(a, ctx.multiply(b, c)));
      CHECK(ctx.canonicalize(ab_c.kpart) == ab_c.kpart);
      CHECK(ctx.is_identity(ctx.multiply(a, ctx.invert(a))));
      for (std::int64_t i : {-3, -1, 1, 2, 4})
        CHECK(ctx.phi_power(ctx.add(a.kpart, b.kpart), i) ==
              ctx.add(ctx.phi_power(a.kpart, i), ctx.phi_power(b.kpart, i)));
    }
  }
}

TEST_CASE("hash agrees with equality") {
  const auto ctx = bs_context(3);
  CHECK(hash_element(bs_element(ctx, 9, 2, 1)) == hash_element(bs_element(ctx, 1, 1)));
  CHECK(hash_element(bs_element(ctx, 1, 1)) != hash_element(bs_element(ctx, 1, 2)));
}

TEST_CASE("matrix config JSON") {
  const auto spec = matrix_spec_from_json(R"({"n": 2, "rows": [[2, 1], [1, 1]]})");
  CHECK(make_context(spec).generators().size() == 7);
  const auto with_gens = matrix_spec_from_json(R"({"n": 2, "rows": [[2, 1], [1, 1]], "generators": [[1, 1]]})");
  CHECK(make_context(with_gens).kgens().size() == 2);
  CHECK_THROWS_AS(matrix_spec_from_json(R"({"n": 2, "rows": [[2, 1]]})"), Error);
  CHECK_THROWS_AS(matrix_spec_from_json("not json"), Error);
  CHECK_THROWS_AS(make_context(matrix_spec_from_json(R"({"n": 1, "rows": [[3]]})")), Error);
}

TEST_CASE("context serialization round-trip") {
  for (const auto& ctx : sample_contexts()) {
    const auto back = GroupContext::deserialize(ctx.serialize());
    CHECK(back.serialize() == ctx.serialize());
    CHECK(back.descriptor() == ctx.descriptor());
  }
}

TEST_CASE("matrix arithmetic overflow is reported") {
  const auto ctx = matrix_context(IntMatrix{{2, 1}, {1, 1}});
  CHECK_THROWS_AS(ctx.phi_power(IntVec{1, 0}, 200), Error);
}

#include <doctest.h>

#include <random>

#include "boxprod/errors.hpp"
#include "boxprod/group_algorithms.hpp"
#include "boxprod/group_spec.hpp"
#include "boxprod/portrait.hpp"
#include "oracles.hpp"

using namespace boxprod;

namespace {

struct Setup {
  PermGroup M = parse_group_spec("3; (1 2); (1 2 3)");
  PermGroup N = parse_group_spec("2; (1 2)");
  std::shared_ptr<const TruncatedTree> tree;
  LegalColouring c;
  LocalGroups groups{M, N};

  explicit Setup(std::size_t depth, std::optional<std::uint64_t> seed = std::nullopt)
      : tree(std::make_shared<const TruncatedTree>(TreeParams{3, 2, depth})),
        c(seed ? LegalColouring::random(tree, *seed) : LegalColouring::canonical(tree)) {}
};

}  // namespace

TEST_CASE("rigid elements fix their centre with local action the inverse") {
  Setup s(4);
  const TruncatedTree& t = *s.tree;
  for (const oracle::Images& mu_images : oracle::elements(s.M)) {
    Perm mu(mu_images);
    for (VertexId v : {t.p(), *t.find("p.0.0"), *t.find("q.0")}) {
      Portrait g = rigid_element(mu, v, s.c);
      CHECK(g.evaluate(v) == v);
      CHECK(is_member(g, s.groups, s.c));
      CHECK(g.local_action(v, s.c) == mu.inverse());
      for (VertexId u : t.ball(v, 2)) {
        if (!g.has_local(u)) continue;
        CHECK(g.local_action(u, s.c) == (t.part(u) == Part::X ? mu.inverse() : Perm::identity(2)));
      }
    }
  }
  CHECK_THROWS_AS(rigid_element(Perm::identity(2), t.p(), s.c), PreconditionError);
}

TEST_CASE("colour-pair elements satisfy the colour relation and match a second construction") {
  Setup s(5, 11);
  const TruncatedTree& t = *s.tree;
  LegalColouring c2 = LegalColouring::random(s.tree, 12);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    VertexId v = static_cast<VertexId>(rng() % t.vertex_count());
    VertexId v2 = static_cast<VertexId>(rng() % t.vertex_count());
    if (t.part(v) != t.part(v2)) continue;
    Part own = t.part(v);
    ColourPerm sigma = ColourPerm::identity(t.m(), t.n());
    (own == Part::X ? sigma.on_x : sigma.on_y) =
        oracle::random_perm_sending(t.valency(own), 0,
                                    static_cast<Point>(rng() % t.valency(own)), rng);
    (own == Part::X ? sigma.on_y : sigma.on_x) =
        oracle::random_perm_sending(t.valency(other(own)), c2.in_colour(v2), s.c.in_colour(v), rng);
    Portrait g = from_colour_pair(v, v2, sigma, s.c, c2);
    for (const Arc& a : t.arcs()) {
      if (!g.defined(a.origin) || !g.defined(a.terminus)) continue;
      Colour mapped = c2.colour(g.evaluate(a.origin), g.evaluate(a.terminus));
      CHECK(s.c.colour(a) == sigma.on(t.part(a.origin)).image(mapped));
    }
    std::vector<VertexId> expected = oracle::colour_matching_images(v, v2, sigma, s.c, c2);
    for (VertexId u = 0; u < t.vertex_count(); ++u)
      if (g.defined(u)) CHECK(g.evaluate(u) == expected[u]);
    for (VertexId u : t.ball(v, g.radius())) CHECK(g.defined(u));
  }
  CHECK_THROWS_AS(from_colour_pair(t.p(), t.q(), ColourPerm::identity(3, 2), s.c, s.c),
                  PreconditionError);
}

TEST_CASE("composition and inverses") {
  Setup s(4);
  std::mt19937_64 rng(5);
  const TruncatedTree& t = *s.tree;
  Portrait g = random_member(s.c, s.groups, t.q(), *t.find("p.1"), rng);
  Portrait h = random_member(s.c, s.groups, t.q(), t.q(), rng);
  CHECK(compose(g, inverse(g)).is_identity());
  CHECK(compose(inverse(g), g).is_identity());
  Portrait gh = compose(g, h);
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (gh.defined(v)) CHECK(gh.evaluate(v) == g.evaluate(h.evaluate(v)));
  CHECK(is_member(gh, s.groups, s.c));
  Portrait k = conjugate(g, h);
  if (k.defined(g.evaluate(t.q()))) CHECK(k.evaluate(g.evaluate(t.q())) == g.evaluate(t.q()));
}

TEST_CASE("membership rejects local actions outside the local groups") {
  Setup s(4);
  LocalGroups cyclic(parse_group_spec("3; (1 2 3)"), s.N);
  Portrait flip = rigid_element(Perm::from_cycles(3, {{0, 1}}), s.tree->p(), s.c);
  CHECK(is_member(flip, s.groups, s.c));
  MembershipCheck check = check_membership(flip, cyclic, s.c);
  CHECK_FALSE(check.ok);
  CHECK(check.vertex != kNoVertex);
  CHECK(is_member(rigid_element(Perm::from_cycles(3, {{0, 1, 2}}), s.tree->p(), s.c), cyclic, s.c));
}

TEST_CASE("random members are members with the requested base image") {
  Setup s(5, 4);
  std::mt19937_64 rng(9);
  const TruncatedTree& t = *s.tree;
  for (VertexId target : t.inner_vertices(2)) {
    if (t.part(target) != Part::Y) continue;
    Portrait g = random_member(s.c, s.groups, t.q(), target, rng);
    CHECK(g.evaluate(t.q()) == target);
    CHECK(is_member(g, s.groups, s.c));
  }
}

TEST_CASE("half-tree surgery") {
  Setup s(4);
  const TruncatedTree& t = *s.tree;
  Portrait h = rigid_element(Perm::from_cycles(3, {{1, 2}}), t.p(), s.c);
  Arc a{t.p(), t.q()};
  Portrait cut = half_tree_surgery(h, a);
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    CHECK(cut.evaluate(v) == (t.in_half_tree(v, a) ? h.evaluate(v) : v));
  CHECK(is_member(cut, s.groups, s.c));
  Portrait moving = rigid_element(Perm::from_cycles(3, {{0, 1}}), t.p(), s.c);
  CHECK_THROWS_AS(half_tree_surgery(moving, a), PreconditionError);
}

TEST_CASE("path stabilisers factor along the path") {
  Setup s(6);
  const TruncatedTree& t = *s.tree;
  std::mt19937_64 rng(21);
  std::vector<VertexId> path = t.path(*t.find("p.0.0"), *t.find("q.0.1"));
  for (int trial = 0; trial < 10; ++trial) {
    Portrait g = random_path_stabiliser(s.c, s.groups, path, rng);
    for (VertexId v : path) CHECK(g.evaluate(v) == v);
    std::vector<Portrait> factors = path_decompose(g, path);
    REQUIRE(factors.size() == path.size());
    Portrait product = Portrait::identity(s.tree);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      CHECK(is_member(factors[i], s.groups, s.c));
      for (VertexId v = 0; v < t.vertex_count(); ++v)
        if (path_projection(t, path, v) != path[i]) CHECK(factors[i].evaluate(v) == v);
      for (std::size_t j = i + 1; j < factors.size(); ++j)
        CHECK(compose(factors[i], factors[j]) == compose(factors[j], factors[i]));
      product = compose(product, factors[i]);
    }
    CHECK(product == g);
  }
  Portrait moving = random_member(s.c, s.groups, t.q(), *t.find("p.1"), rng);
  CHECK_THROWS_AS(path_decompose(moving, path), PreconditionError);
}

TEST_CASE("exhaustive enumeration counts the stabiliser tower") {
  Setup s(4);
  const TruncatedTree& t = *s.tree;
  std::vector<Portrait> members = enumerate_members(s.c, s.groups, t.q(), t.q(), 2);
  // |N| at q times a point stabiliser of M at each of its two neighbours
  CHECK(members.size() == 2 * 2 * 2);
  for (const Portrait& g : members) {
    CHECK(g.evaluate(t.q()) == t.q());
    CHECK(is_member(g, s.groups, s.c));
  }
  std::set<std::vector<VertexId>> distinct;
  for (const Portrait& g : members) {
    std::vector<VertexId> images;
    for (VertexId v : t.ball(t.q(), 2)) images.push_back(g.evaluate(v));
    distinct.insert(images);
  }
  CHECK(distinct.size() == members.size());
  CHECK_THROWS_AS(enumerate_members(s.c, s.groups, t.q(), t.q(), 4, 10), ResourceError);
}

TEST_CASE("random automorphisms preserve adjacency") {
  Setup s(4);
  const TruncatedTree& t = *s.tree;
  std::mt19937_64 rng(2);
  Portrait a = random_automorphism(s.tree, rng);
  for (const Arc& arc : t.arcs())
    CHECK(t.adjacent(a.evaluate(arc.origin), a.evaluate(arc.terminus)));
  CHECK(a.evaluate(t.p()) == t.p());
  CHECK(a.evaluate(t.q()) == t.q());
}

TEST_CASE("conjugating element carries one colouring to another") {
  Setup s(5, 1);
  const TruncatedTree& t = *s.tree;
  LegalColouring c2 = LegalColouring::random(s.tree, 2);
  Portrait g = conjugating_element(s.c, c2);
  for (const Arc& a : t.arcs())
    if (g.defined(a.origin) && g.defined(a.terminus))
      CHECK(s.c.colour(a) == c2.colour(g.evaluate(a.origin), g.evaluate(a.terminus)));
}

TEST_CASE("recovered colourings make conjugated generators members") {
  Setup s(5);
  const TruncatedTree& t = *s.tree;
  std::mt19937_64 rng(8);
  std::vector<Portrait> gens;
  for (VertexId v : {t.p(), t.q()})
    for (const Perm& mu : s.groups.group(t.part(v)).generators())
      gens.push_back(rigid_element(mu, v, s.c));
  Portrait a = random_automorphism(s.tree, rng);
  std::vector<Portrait> conjugated;
  for (const Portrait& g : gens) conjugated.push_back(conjugate(a, g));
  LegalColouring recovered = recover_colouring(conjugated, s.M, s.N);
  CHECK(recovered.validate().ok);
  for (const Portrait& g : conjugated) CHECK(is_member(g, s.groups, recovered));
}

TEST_CASE("portraits round-trip through JSON") {
  Setup s(4);
  std::mt19937_64 rng(1);
  Portrait g = random_member(s.c, s.groups, s.tree->q(), s.tree->q(), rng);
  CHECK(Portrait::from_json(s.tree, g.to_json()) == g);
  nlohmann::json with_locals = g.to_json(&s.c);
  CHECK(with_locals.contains("local"));
  CHECK(with_locals.dump() == g.to_json(&s.c).dump());
}

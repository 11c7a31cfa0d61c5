#include <doctest.h>

#include <random>

#include "boxprod/errors.hpp"
#include "boxprod/group_algorithms.hpp"
#include "boxprod/group_spec.hpp"
#include "oracles.hpp"

using namespace boxprod;

namespace {

struct Named {
  const char* name;
  PermGroup group;
};

std::vector<Named> battery() {
  return {{"trivial on 3", PermGroup::trivial(3)},
          {"Sym(2)", parse_group_spec("2; (1 2)")},
          {"Sym(3)", parse_group_spec("3; (1 2); (1 2 3)")},
          {"C3", parse_group_spec("3; (1 2 3)")},
          {"<(1 2)> on 3", parse_group_spec("3; (1 2)")},
          {"A4", parse_group_spec("4; (1 2 3); (2 3 4)")},
          {"C4", parse_group_spec("4; (1 2 3 4)")},
          {"D4", parse_group_spec("4; (1 2 3 4); (1 3)")},
          {"V4", parse_group_spec("4; (1 2)(3 4); (1 3)(2 4)")},
          {"Sym(4)", PermGroup::symmetric(4)},
          {"D5", parse_group_spec("5; (1 2 3 4 5); (2 5)(3 4)")},
          {"intransitive on 5", parse_group_spec("5; (1 2); (3 4 5)")},
          {"Sym(5)", PermGroup::symmetric(5)}};
}

}  // namespace

TEST_CASE("permutations compose from the left") {
  Perm a = Perm::from_cycles(3, {{0, 1}});
  Perm b = Perm::from_cycles(3, {{1, 2}});
  CHECK((a * b)(1) == a(b(1)));
  CHECK((a * b)(1) == 2);
  CHECK((a * a.inverse()).is_identity());
  CHECK(to_cycle_string(Perm::from_cycles(5, {{0, 2, 1}, {3, 4}})) == "(1 3 2)(4 5)");
  CHECK(to_cycle_string(Perm::identity(4)) == "()");
  CHECK(Perm::from_cycles(4, {{2, 3}}).first_moved_point() == 2);
  CHECK_THROWS_AS(Perm::from_cycles(3, {{0, 3}}), InputError);
  CHECK_THROWS_AS(Perm::from_cycles(3, {{0, 1, 0}}), InputError);
}

TEST_CASE("orders match the closure of the generators") {
  for (const auto& [name, G] : battery()) {
    CAPTURE(name);
    CHECK(G.order() == oracle::elements(G).size());
  }
}

TEST_CASE("membership matches the closure") {
  PermGroup S4 = PermGroup::symmetric(4);
  for (const auto& [name, G] : battery()) {
    if (G.degree() != 4) continue;
    CAPTURE(name);
    std::set<oracle::Images> all = oracle::elements(G);
    for (const oracle::Images& g : oracle::elements(S4))
      CHECK(G.contains(Perm(g)) == (all.count(g) == 1));
  }
}

TEST_CASE("elements lists each element once") {
  PermGroup D4 = parse_group_spec("4; (1 2 3 4); (1 3)");
  std::set<oracle::Images> listed;
  for (const Perm& g : D4.elements()) listed.insert(oracle::images_of(g));
  CHECK(listed == oracle::elements(D4));
  CHECK_THROWS_AS(PermGroup::symmetric(5).elements(10), ResourceError);
}

TEST_CASE("orbits, stabilisers and transporters") {
  for (const auto& [name, G] : battery()) {
    CAPTURE(name);
    auto expected = oracle::orbits(G);
    Partition orb = orbits(G);
    for (Point x = 0; x < G.degree(); ++x) {
      std::vector<Point> o = orbit(G, x);
      CHECK(std::set<Point>(o.begin(), o.end()) == expected[x]);
      for (Point y = 0; y < G.degree(); ++y) {
        CHECK((orb.block_of(x) == orb.block_of(y)) == (expected[x].count(y) == 1));
        std::optional<Perm> t = transporter(G, x, y);
        CHECK(t.has_value() == (expected[x].count(y) == 1));
        if (t) CHECK((*t)(x) == y);
      }
      PermGroup stab = stabiliser(G, x);
      CHECK(stab.order() * expected[x].size() == G.order());
      for (const Perm& s : stab.generators()) CHECK(s(x) == x);
    }
  }
}

TEST_CASE("pointwise stabiliser") {
  PermGroup S4 = PermGroup::symmetric(4);
  CHECK(pointwise_stabiliser(S4, {0, 1}).order() == 2);
  CHECK(pointwise_stabiliser(S4, {0, 1, 2}).is_trivial());
}

TEST_CASE("classification agrees with the brute-force definitions") {
  for (const auto& [name, G] : battery()) {
    CAPTURE(name);
    GroupProperties p = classify(G);
    auto orb = oracle::orbits(G);
    const std::size_t order = oracle::elements(G).size();
    CHECK(p.transitive == (orb[0].size() == G.degree()));
    CHECK(p.primitive == oracle::primitive(G));
    CHECK(p.regular == (p.transitive && order == G.degree()));
    bool semiregular = true;
    for (const auto& o : orb) semiregular = semiregular && o.size() == order;
    CHECK(p.semiregular == semiregular);
    CHECK(p.generated_by_point_stabilisers == (oracle::point_stabiliser_span(G) == order));
  }
}

TEST_CASE("minimal block is the finest invariant partition joining the points") {
  for (const auto& [name, G] : battery()) {
    if (!classify(G).transitive || G.degree() > 5) continue;
    CAPTURE(name);
    std::set<oracle::Images> all = oracle::elements(G);
    for (Point b = 1; b < G.degree(); ++b) {
      Partition block = minimal_block(G, 0, b);
      CHECK(block.block_of(0) == block.block_of(b));
      for (const Perm& g : G.generators()) CHECK(block.invariant_under(g));
      // every invariant partition joining 0 and b is coarser
      oracle::for_each_partition(G.degree(), [&](const oracle::Images& ids) {
        if (ids[0] != ids[b]) return;
        Partition candidate{std::vector<std::size_t>(ids.begin(), ids.end())};
        for (const auto& g : all)
          if (!candidate.invariant_under(Perm(g))) return;
        for (Point x = 0; x < G.degree(); ++x)
          for (Point y = 0; y < G.degree(); ++y)
            if (block.block_of(x) == block.block_of(y)) CHECK(ids[x] == ids[y]);
      });
    }
  }
}

TEST_CASE("suborbits of Sym(3)") {
  auto sub = suborbits(parse_group_spec("3; (1 2); (1 2 3)"), 0);
  REQUIRE(sub.size() == 2);
  CHECK(sub[0] == std::vector<Point>{0});
  CHECK(sub[1] == std::vector<Point>{1, 2});
}

TEST_CASE("random elements are members and reach the whole group") {
  std::mt19937_64 rng(7);
  PermGroup S3 = parse_group_spec("3; (1 2); (1 2 3)");
  std::set<oracle::Images> seen;
  for (int i = 0; i < 300; ++i) {
    Perm g = random_element(S3, rng);
    CHECK(S3.contains(g));
    seen.insert(oracle::images_of(g));
  }
  CHECK(seen.size() == 6);
}

TEST_CASE("wreath product in product action") {
  PermGroup S3 = parse_group_spec("3; (1 2); (1 2 3)");
  PermGroup S2 = parse_group_spec("2; (1 2)");
  PermGroup W = wreath_product_action(S3, S2);
  CHECK(W.degree() == 9);
  CHECK(W.order() == 72);
  CHECK(oracle::elements(W) == oracle::wreath_elements(S3, S2));
  GroupProperties p = classify(W);
  CHECK(p.transitive);
  CHECK(p.primitive);

  PermGroup C3 = parse_group_spec("3; (1 2 3)");
  CHECK(oracle::elements(wreath_product_action(C3, S2)) == oracle::wreath_elements(C3, S2));
  CHECK_FALSE(classify(wreath_product_action(C3, S2)).primitive);
  CHECK_THROWS_AS(wreath_product_action(S3, S2, 8), ResourceError);
}

TEST_CASE("orbital graph of Sym(3) Wr Sym(2) is the 3 by 3 rook graph") {
  PermGroup W = wreath_product_action(parse_group_spec("3; (1 2); (1 2 3)"),
                                      parse_group_spec("2; (1 2)"));
  FiniteGraph g = orbital_graph(W, 0, 1);
  CHECK(g.vertex_count() == 9);
  CHECK(g.edge_count() == 18);
  for (std::size_t d : g.degrees()) CHECK(d == 4);
  for (std::size_t t : g.triangles_per_vertex()) CHECK(t == 2);
  for (const Perm& s : W.generators()) CHECK(g.invariant_under(s));
  for (std::size_t u = 0; u < 9; ++u)
    for (std::size_t v = u + 1; v < 9; ++v)
      CHECK(g.has_edge(u, v) == (u % 3 == v % 3 || u / 3 == v / 3));
}

TEST_CASE("finite graphs") {
  FiniteGraph k4(4);
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = u + 1; v < 4; ++v) k4.add_edge(u, v);
  CHECK_FALSE(k4.add_edge(1, 0));
  CHECK_THROWS_AS(k4.add_edge(2, 2), InputError);
  CHECK(k4.triangle_count() == 4);
  CHECK(k4.cycle_rank() == 3);
  CHECK(k4.is_connected());
  FiniteGraph two(4);
  two.add_edge(0, 1);
  two.add_edge(2, 3);
  CHECK(two.components().block_count() == 2);
  CHECK(two.cycle_rank() == 0);
  CHECK(two.to_dot("g") == two.to_dot("g"));
}

TEST_CASE("partitions are normalised") {
  Partition p(std::vector<std::size_t>{5, 2, 5, 9});
  CHECK(p.block_ids() == std::vector<std::size_t>{0, 1, 0, 2});
  CHECK(p.block_count() == 3);
  CHECK(Partition::discrete(3).is_discrete());
  CHECK(Partition::universal(3).is_universal());
}

TEST_CASE("group spec parsing") {
  CHECK(parse_group_spec("3; (1 2); (1 2 3)").order() == 6);
  CHECK(parse_group_spec("2; (1 2)").order() == 2);
  CHECK(parse_group_spec("4; ()").is_trivial());
  CHECK(parse_group_spec(" 4 ;(1 2)(3 4)").order() == 2);
  try {
    parse_group_spec("3; (1 4)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
  CHECK_THROWS_AS(parse_group_spec("3; (1 2"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("3; (1 1)"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("0"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("3; (1 2) x"), ParseError);
}

TEST_CASE("group specs round-trip through text and JSON") {
  for (const auto& [name, G] : battery()) {
    CAPTURE(name);
    std::set<oracle::Images> all = oracle::elements(G);
    CHECK(oracle::elements(parse_group_spec(to_group_spec(G))) == all);
    CHECK(oracle::elements(group_from_json(group_to_json(G))) == all);
    CHECK(oracle::elements(parse_group_any(group_to_json(G).dump())) == all);
  }
  auto j = nlohmann::json::parse(R"({"degree":3,"generators":[[[1,2]],[[1,2,3]]]})");
  CHECK(group_from_json(j).order() == 6);
  CHECK_THROWS_AS(group_from_json(nlohmann::json::parse(R"({"generators":[]})")), ParseError);
}

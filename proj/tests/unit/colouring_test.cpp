#include <doctest.h>

#include <memory>
#include <set>

#include "boxprod/colouring.hpp"
#include "boxprod/errors.hpp"

using namespace boxprod;

namespace {

std::shared_ptr<const TruncatedTree> make_tree(std::size_t m, std::size_t n, std::size_t depth) {
  return std::make_shared<const TruncatedTree>(TreeParams{m, n, depth});
}

/// Both legality conditions, checked directly on the arcs.
bool legal(const LegalColouring& c) {
  const TruncatedTree& t = c.tree();
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    std::set<Colour> out;
    for (VertexId w : t.neighbours(v)) {
      Colour x = c.colour(v, w);
      if (x >= t.valency(t.part(v))) return false;
      out.insert(x);
      if (c.colour(w, v) != c.colour(t.up(v), v)) return false;
    }
    if (out.size() != t.neighbours(v).size()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("canonical colouring") {
  auto t = make_tree(3, 2, 4);
  LegalColouring c = LegalColouring::canonical(t);
  CHECK(c.validate().ok);
  CHECK(legal(c));
  CHECK(c.colour(t->p(), t->q()) == 0);
  CHECK(c.colour(t->q(), t->p()) == 0);
  for (VertexId v = 0; v < t->vertex_count(); ++v) {
    CHECK(c.in_colour(v) == c.colour(t->up(v), v));
    for (VertexId w : t->neighbours(v)) CHECK(c.neighbour_by_colour(v, c.colour(v, w)) == w);
  }
}

TEST_CASE("random colourings are legal and reproducible") {
  auto t = make_tree(4, 3, 4);
  std::set<std::vector<Colour>> distinct;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    LegalColouring c = LegalColouring::random(t, seed);
    CHECK(c.validate().ok);
    CHECK(legal(c));
    CHECK(c == LegalColouring::random(t, seed));
    std::vector<Colour> arcs;
    for (const Arc& a : t->arcs()) arcs.push_back(c.colour(a));
    distinct.insert(arcs);
  }
  CHECK(distinct.size() > 1);
}

TEST_CASE("validation names the broken condition") {
  auto t = make_tree(3, 2, 3);
  LegalColouring c = LegalColouring::canonical(t);
  VertexId x = *t->find("p.0.0");
  VertexId y = *t->find("p.0");

  LegalColouring repeated_x =
      c.with_colour(t->p(), t->q(), c.colour(t->p(), t->neighbour(t->p(), 1)));
  CHECK(repeated_x.validate().condition == 1);

  LegalColouring repeated_y = c.with_colour(y, x, c.colour(y, t->p()));
  CHECK(repeated_y.validate().condition == 2);

  // swapping two out-colours keeps the bijection but breaks agreement below
  auto t3 = make_tree(3, 3, 3);
  LegalColouring c3 = LegalColouring::canonical(t3);
  VertexId z = *t3->find("p.0");
  VertexId a = t3->neighbour(z, 1), b = t3->neighbour(z, 2);
  Colour ca = c3.colour(z, a), cb = c3.colour(z, b);
  LegalColouring swapped = c3.with_colour(z, a, cb).with_colour(z, b, ca);
  ColouringCheck check = swapped.validate();
  CHECK_FALSE(check.ok);
  CHECK(check.condition == 3);
  CHECK_FALSE(legal(swapped));

  CHECK_THROWS_AS(c.with_colour(t->p(), x, 0), InputError);
}

TEST_CASE("colourings round-trip through JSON") {
  auto t = make_tree(3, 3, 3);
  LegalColouring c = LegalColouring::random(t, 5);
  CHECK(LegalColouring::from_json(t, c.to_json()) == c);
  nlohmann::json partial = c.to_json();
  partial["arcs"].erase(partial["arcs"].begin());
  CHECK_THROWS_AS(LegalColouring::from_json(t, partial), InputError);
}

TEST_CASE("colourings from slot rules") {
  auto t = make_tree(2, 2, 3);
  LegalColouring c = LegalColouring::from_slots(
      t, [&](VertexId v, std::size_t s) { return static_cast<Colour>((s + t->depth(v)) % 2); });
  CHECK(c.colour(t->p(), std::size_t{0}) == 0);
  CHECK(c.colour(t->q(), std::size_t{0}) == 0);
}

#include "doctest.h"
#include "latkit/errors.hpp"
#include "latkit/finite_quadratic.hpp"
#include "latkit/isometry.hpp"
#include "reference/reference.hpp"
#include "support.hpp"

using namespace latkit;

TEST_CASE("short vectors match the box oracle") {
  struct Row {
    const char* name;
    long bound;
    std::size_t pairs;
  };
  const Row rows[] = {{"A2", 2, 3}, {"E7", 2, 63}, {"Z1", 1, 1}, {"D4", 2, 12}, {"E6", 2, 36}, {"A3", 4, 0}};
  for (const auto& r : rows) {
    CAPTURE(r.name);
    const Lattice l = make_standard(r.name);
    const auto got = short_vectors(l, r.bound);
    CHECK(got == reference::box_short_vectors(l, r.bound));
    if (r.pairs) CHECK(got.size() == r.pairs);
  }
  const auto neg = short_vectors(twist(make_standard("A2"), -1), 2);
  REQUIRE(neg.size() == 3);
  CHECK(neg.front().norm == -2);
  CHECK_THROWS_AS(short_vectors(make_standard("U"), 2), InputError);
}

TEST_CASE("automorphism orders match exhaustive counts") {
  for (const char* name : {"A1", "A2", "A3", "A4", "D4", "D5", "Z3", "E6"}) {
    CAPTURE(name);
    const Lattice l = make_standard(name);
    CHECK(automorphism_group(l).order() == reference::automorphism_count(l));
  }
}

TEST_CASE("automorphism orders of the corpus") {
  CHECK(automorphism_group(make_standard("A2")).order() == 12);
  CHECK(automorphism_group(make_standard("D4")).order() == 1152);
  CHECK(automorphism_group(make_standard("E6")).order() == 103680);
  CHECK(automorphism_group(twist(make_standard("E6"), -1)).order() == 103680);
  CHECK(automorphism_group(make_standard("E7")).order() == Integer(2903040));
  CHECK(automorphism_group(make_standard("E8")).order() == Integer(696729600));
  CHECK_THROWS_AS(automorphism_group(make_standard("I_{1,6}")), InputError);
}

TEST_CASE("serial and parallel searches agree") {
  for (const char* name : {"D4", "E6"}) {
    const Lattice l = make_standard(name);
    const auto a = automorphism_group(l, {.parallel = false});
    const auto b = automorphism_group(l, {.parallel = true});
    CHECK(a.order() == b.order());
    CHECK(a.generators() == b.generators());
  }
}

TEST_CASE("generators preserve the Gram matrix") {
  const Lattice l = twist(make_standard("E6"), -1);
  const auto g = automorphism_group(l);
  for (const auto& m : g.generators()) CHECK(preserves_gram(m, l.gram()));
}

TEST_CASE("search budget raises ResourceLimit") {
  CHECK_THROWS_AS(automorphism_group(make_standard("E7"), {.max_nodes = 10}), ResourceLimit);
}

TEST_CASE("isometry test") {
  const Lattice e6 = make_standard("E6");
  const IntMatrix t{{1, 1, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0},
                    {0, 0, 0, 1, 0, 0}, {0, 0, 0, 1, 1, 0}, {0, 0, 0, 0, 0, -1}};
  const Lattice moved(t * e6.gram() * t.transpose(), "moved");
  const auto iso = isometry_test(moved, e6);
  REQUIRE(iso);
  CHECK((*iso) * e6.gram() * iso->transpose() == moved.gram());
  CHECK_FALSE(isometry_test(make_standard("D4"), make_standard("Z4")).has_value());
  CHECK_FALSE(isometry_test(make_standard("A2"), make_standard("A1")).has_value());
}

TEST_CASE("hyperbolic plane") {
  const auto g = hyperbolic_automorphisms();
  CHECK(g.order() == 4);
  ElementTable t(g.gram(), g.generators(), 100);
  CHECK(t.size() == 4);
  CHECK(t.contains(IntMatrix{{0, -1}, {-1, 0}}));
  CHECK_FALSE(t.contains(IntMatrix{{1, 1}, {0, 1}}));
}

TEST_CASE("element table and centralizer") {
  const Lattice a2 = make_standard("A2");
  const auto g = automorphism_group(a2);
  ElementTable t(a2.gram(), g.generators(), 100);
  CHECK(t.size() == 12);
  const IntMatrix minus = -IntMatrix::identity(2);
  CHECK(t.contains(minus));
  CHECK(centralizer(g, minus).order() == 12);
  CHECK_THROWS_AS(ElementTable(a2.gram(), g.generators(), 5), ResourceLimit);
}

TEST_CASE("orbit-stabilizer on roots") {
  for (const char* name : {"A3", "D4", "E6"}) {
    CAPTURE(name);
    const Lattice l = make_standard(name);
    const auto g = automorphism_group(l);
    const auto sv = short_vectors(l, 2);
    const IntVector v = test_support::to_int_vector(sv.front().coords);
    const auto orb = orbit(g, v);
    const auto stab = vector_stabilizer(g, v);
    CHECK(Integer(static_cast<unsigned long>(orb.size())) * stab.order() == g.order());
    CHECK(orb.size() == 2 * sv.size());
  }
}

TEST_CASE("stabilizer of (3,-1,...,-1) in I_{1,6}") {
  const Lattice l = make_standard("I_{1,6}");
  const IntVector v{3, -1, -1, -1, -1, -1, -1};
  const Integer order = stabilizer_of_vector_in_unimodular(l, v);
  CHECK(order == 51840);

  // oracle: elements of Aut(v-perp) acting trivially on its discriminant group
  IntMatrix row(0, 7);
  row.append_row(v);
  const Lattice perp = orthogonal_complement(l, row).induced();
  const auto g = automorphism_group(perp);
  const auto disc = FiniteQuadraticModule::discriminant(perp);
  ElementTable t(perp.gram(), g.generators(), 200000);
  std::size_t trivial = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (induced_map(disc, t.element(i)) == identity_map(disc)) ++trivial;
  CHECK(Integer(static_cast<unsigned long>(trivial)) == order);
}

TEST_CASE("vector stabilizer preconditions") {
  const Lattice l = make_standard("I_{1,6}");
  CHECK_THROWS_AS(stabilizer_of_vector_in_unimodular(l, IntVector{1, 1, 0, 0, 0, 0, 0}), InputError);
  CHECK_THROWS_AS(stabilizer_of_vector_in_unimodular(l, IntVector{6, -2, -2, -2, -2, -2, -2}), InputError);
  CHECK_THROWS_AS(stabilizer_of_vector_in_unimodular(make_standard("A2"), IntVector{1, 0}), InputError);
}

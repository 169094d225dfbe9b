#include "doctest.h"
#include "latkit/errors.hpp"
#include "latkit/gluing.hpp"

using namespace latkit;

namespace {

GlueData diagonal_split_of_u() {
  const Lattice u = make_standard("U");
  return glue_data(u, Sublattice{u, IntMatrix{{1, 1}}});
}

}  // namespace

TEST_CASE("glue data of <2> in U") {
  const auto g = diagonal_split_of_u();
  CHECK(g.m_lattice.gram() == IntMatrix{{2}});
  CHECK(g.n_lattice.gram() == IntMatrix{{-2}});
  CHECK(g.glue_order == 2);
  CHECK(g.anti.am.order() == 2);
  const auto x = g.anti.am.generator(0);
  CHECK(g.anti.an.q(g.anti.phi.apply(g.anti.an, x)) == Rational(3, 2));
  CHECK(g.anti.am.q(x) == Rational(1, 2));
}

TEST_CASE("extensions on U") {
  const auto g = diagonal_split_of_u();
  const IntMatrix one{{1}}, minus{{-1}};
  CHECK(extend_isometry(g, minus, minus) == -IntMatrix::identity(2));
  CHECK(extend_isometry(g, one, one) == IntMatrix::identity(2));
  // A_M is 2-torsion so the mixed sign pair is compatible; it swaps e and f
  CHECK(extend_isometry(g, one, minus) == IntMatrix{{0, 1}, {1, 0}});
  CHECK(extend_isometry(g, minus, one) == IntMatrix{{0, -1}, {-1, 0}});
}

TEST_CASE("mixed signs fail on a 3-torsion glue") {
  const Lattice uu = direct_sum(make_standard("U"), make_standard("U"));
  const auto g = glue_data(uu, Sublattice{uu, IntMatrix{{1, 0, 1, 0}, {0, 1, 0, 2}}});
  CHECK(g.glue_order == 9);
  CHECK(g.anti.am.orders() == std::vector<Integer>{3, 3});
  const IntMatrix id = IntMatrix::identity(2);
  CHECK(glue_compatible(g, id, id));
  CHECK(glue_compatible(g, -id, -id));
  CHECK_FALSE(glue_compatible(g, id, -id));
  CHECK_THROWS_AS(extend_isometry(g, id, -id), GlueMismatch);
  const IntMatrix e = extend_isometry(g, -id, -id);
  CHECK(e == -IntMatrix::identity(4));
  CHECK_THROWS_AS(extend_isometry(g, IntMatrix{{1, 1}, {0, 1}}, id), InputError);
}

TEST_CASE("glue data preconditions") {
  const Lattice a2 = make_standard("A2");
  CHECK_THROWS_AS(glue_data(a2, Sublattice{a2, IntMatrix{{1, 0}}}), InputError);
  const Lattice z2 = make_standard("Z2");
  CHECK_THROWS_AS(glue_data(z2, Sublattice{z2, IntMatrix{{2, 0}}}), InputError);
}

TEST_CASE("overlattices from glue") {
  const Lattice a(IntMatrix{{2}}), b(IntMatrix{{-2}});
  const auto o = overlattice_from_glue(a, b, {{FqmElement{1}, FqmElement{1}}});
  CHECK(abs(o.lattice.det()) == 1);
  CHECK(is_even(o.lattice));
  CHECK(signature(o.lattice) == std::make_pair(std::size_t{1}, std::size_t{1}));

  const Lattice a1 = make_standard("A1");
  CHECK_THROWS_AS(overlattice_from_glue(a1, a1, {{FqmElement{1}, FqmElement{1}}}), InputError);

  // D4 is the overlattice of A1^4 glued by (1,1,1,1)
  const Lattice a1x2 = direct_sum(a1, a1);
  const auto d4 = overlattice_from_glue(a1x2, a1x2, {{FqmElement{1, 1}, FqmElement{1, 1}}});
  CHECK(d4.lattice.det() == 4);
  CHECK(is_even(d4.lattice));
}

TEST_CASE("extensions fixing the integral subgroup") {
  const auto f = FiniteQuadraticModule::discriminant(twist(make_standard("I_{1,7}"), 2));
  const auto s = integral_value_subgroup(f);
  CHECK(extension_count_fixing_subgroup(f, s) == 2);
  const auto a2 = FiniteQuadraticModule::discriminant(make_standard("A2"));
  CHECK(extension_count_fixing_subgroup(a2, generated_subgroup(a2, {})) == 2);
}

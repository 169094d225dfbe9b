#include "doctest.h"
#include "latkit/errors.hpp"
#include "latkit/lattice.hpp"

using namespace latkit;

TEST_CASE("standard lattices: determinants and signatures") {
  struct Row {
    const char* name;
    long det;
    std::size_t plus, minus;
    bool even;
  };
  const Row rows[] = {{"A1", 2, 1, 0, true},  {"A2", 3, 2, 0, true},     {"A_3", 4, 3, 0, true},
                      {"D4", 4, 4, 0, true},  {"D5", 4, 5, 0, true},     {"E6", 3, 6, 0, true},
                      {"E7", 2, 7, 0, true},  {"E8", 1, 8, 0, true},     {"U", -1, 1, 1, true},
                      {"Z3", 1, 3, 0, false}, {"I_{1,7}", -1, 1, 7, false}, {"I1,6", 1, 1, 6, false}};
  for (const auto& r : rows) {
    CAPTURE(r.name);
    const Lattice l = make_standard(r.name);
    CHECK(l.det() == r.det);
    CHECK(signature(l) == std::make_pair(r.plus, r.minus));
    CHECK(is_even(l) == r.even);
  }
  CHECK_THROWS_AS(make_standard("Q7"), InputError);
}

TEST_CASE("lattice construction validates the Gram matrix") {
  CHECK_THROWS_AS(Lattice(IntMatrix{{1, 2}, {3, 4}}), InputError);
  CHECK_THROWS_AS(Lattice(IntMatrix{{1, 1}, {1, 1}}), InputError);
  CHECK_THROWS_AS(Lattice(IntMatrix(2, 3)), InputError);
  CHECK_NOTHROW(Lattice(IntMatrix{{0, 1}, {1, 0}}));
}

TEST_CASE("parity and unimodularity") {
  CHECK(classify_parity_unimodular(make_standard("E8")) == ParityClass{true, true});
  CHECK(classify_parity_unimodular(make_standard("U")) == ParityClass{true, true});
  CHECK(classify_parity_unimodular(make_standard("I_{1,7}")) == ParityClass{false, true});
  CHECK(classify_parity_unimodular(make_standard("A2")) == ParityClass{true, false});
  CHECK(is_even(twist(make_standard("I_{1,7}"), 2)));
}

TEST_CASE("twist and direct sum") {
  const Lattice u3 = twist(make_standard("U"), 3);
  CHECK(u3.gram() == IntMatrix{{0, 3}, {3, 0}});
  const Lattice s = direct_sum(make_standard("A1"), make_standard("U"));
  CHECK(s.rank() == 3);
  CHECK(s.det() == -2);
  CHECK(is_definite(make_standard("E6")));
  CHECK(is_definite(twist(make_standard("E6"), -1)));
  CHECK_FALSE(is_positive_definite(twist(make_standard("E6"), -1)));
  CHECK_FALSE(is_definite(make_standard("U")));
}

TEST_CASE("orthogonal complement of (3,-1,...,-1) in I_{1,6}") {
  const Lattice l = make_standard("I_{1,6}");
  IntMatrix v(0, 7);
  v.append_row(IntVector{3, -1, -1, -1, -1, -1, -1});
  const Sublattice perp = orthogonal_complement(l, v);
  CHECK(perp.rank() == 6);
  const Lattice e = perp.induced();
  CHECK(abs(e.det()) == 3);
  CHECK(signature(e) == std::make_pair(std::size_t{0}, std::size_t{6}));
  CHECK(is_even(e));
  CHECK(sublattice_index_and_primitivity(l, perp).primitive);
}

TEST_CASE("index and primitivity") {
  const Lattice z2 = make_standard("Z2");
  const Sublattice s{z2, IntMatrix{{2, 0}, {0, 1}}};
  const auto idx = sublattice_index_and_primitivity(z2, s);
  REQUIRE(idx.index);
  CHECK(*idx.index == 2);
  CHECK_FALSE(idx.primitive);
  const Sublattice line{z2, IntMatrix{{2, 4}}};
  CHECK_FALSE(sublattice_index_and_primitivity(z2, line).primitive);
  CHECK(saturate(line).basis.rows() == 1);
  CHECK(sublattice_index_and_primitivity(z2, saturate(line)).primitive);
}

TEST_CASE("restriction of an isometry") {
  const Lattice z3 = make_standard("Z3");
  const IntMatrix swap12{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
  CHECK(preserves_gram(swap12, z3.gram()));
  const Sublattice s{z3, IntMatrix{{1, 1, 0}, {0, 0, 1}}};
  CHECK(restrict_to(s, swap12) == IntMatrix::identity(2));
  const Sublattice t{z3, IntMatrix{{1, 0, 0}}};
  CHECK_THROWS_AS(restrict_to(t, swap12), InputError);
}

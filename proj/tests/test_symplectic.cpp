#include "doctest.h"
#include "latkit/errors.hpp"
#include "latkit/symplectic_f2.hpp"
#include "reference/reference.hpp"

using namespace latkit;

TEST_CASE("symplectic pairing") {
  CHECK(symplectic_pairing_f2(1, 0b01, 0b10) == 1);
  CHECK(symplectic_pairing_f2(1, 0b01, 0b01) == 0);
  CHECK(symplectic_pairing_f2(2, 0b0001, 0b0100) == 1);
  CHECK(symplectic_pairing_f2(2, 0b0001, 0b1000) == 0);
  CHECK(symplectic_pairing_f2(2, 0b0011, 0b1100) == 0);
}

TEST_CASE("refinements from basis values") {
  const int zeros[] = {0, 0};
  const auto q = QuadraticRefinementMod2::from_basis(1, zeros);
  CHECK(q(0) == 0);
  CHECK(q(0b01) == 0);
  CHECK(q(0b10) == 0);
  CHECK(q(0b11) == 1);
  CHECK(arf_and_orbit(q).arf == 0);
  const int ones[] = {1, 1};
  CHECK(arf_and_orbit(QuadraticRefinementMod2::from_basis(1, ones)).arf == 1);
  const int too_many[] = {0, 0, 0, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(QuadraticRefinementMod2::from_basis(4, too_many), InputError);
}

TEST_CASE("from_table rejects tables violating the refinement identity") {
  // q = 0 everywhere fails at e + f
  CHECK_THROWS_AS(QuadraticRefinementMod2::from_table(1, 0), InputError);
  CHECK_NOTHROW(QuadraticRefinementMod2::from_table(1, 0b1000));
  CHECK_THROWS_AS(QuadraticRefinementMod2::from_table(1, 0b1001), InputError);
}

TEST_CASE("refinement counts and orbits") {
  const std::uint64_t sizes[][2] = {{3, 1}, {10, 6}, {36, 28}};
  for (int g = 1; g <= kMaxRefinementGenus; ++g) {
    CAPTURE(g);
    const auto all = all_refinements(g);
    CHECK(all.size() == (std::size_t{1} << (2 * g)));
    const auto orbits = refinement_orbits(g);
    REQUIRE(orbits.size() == 2);
    CHECK(orbits[0].size() + orbits[1].size() == all.size());
    std::uint64_t even = 0, odd = 0;
    for (const auto& orb : orbits) {
      const auto info = arf_and_orbit(orb.front());
      CHECK(info.orbit_size == orb.size());
      for (const auto& q : orb) CHECK(arf_and_orbit(q).arf == info.arf);
      (info.arf == 0 ? even : odd) = orb.size();
    }
    CHECK(even == sizes[g - 1][0]);
    CHECK(odd == sizes[g - 1][1]);
  }
}

TEST_CASE("symplectic group orders") {
  const std::uint64_t expected[] = {6, 720, 1451520};
  for (int g = 1; g <= kMaxRefinementGenus; ++g) {
    CAPTURE(g);
    CHECK(symplectic_group_order(g) == expected[g - 1]);
    CHECK(symplectic_group_order(g) == reference::symplectic_order_by_transvections(g));
  }
}

TEST_CASE("orbit-stabilizer for refinements") {
  for (int g = 1; g <= 2; ++g)
    for (const auto& q : all_refinements(g))
      CHECK(arf_and_orbit(q).orbit_size * refinement_stabilizer_order(q) == symplectic_group_order(g));
}

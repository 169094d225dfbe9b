#include "doctest.h"
#include "latkit/errors.hpp"
#include "latkit/finite_quadratic.hpp"
#include "reference/reference.hpp"

using namespace latkit;

namespace {

// The class of a dual vector given in lattice coordinates.
FqmElement cls(const FiniteQuadraticModule& f, std::initializer_list<Rational> v) {
  return f.coordinates_of(RatVector(v));
}

}  // namespace

TEST_CASE("discriminant of A2") {
  const Lattice a2 = make_standard("A2");
  const auto f = FiniteQuadraticModule::discriminant(a2);
  CHECK(f.orders() == std::vector<Integer>{3});
  CHECK(f.q_modulus() == 2);
  // dual vector (2/3, 1/3) in the root basis has norm 2/3
  const auto x = cls(f, {Rational(2, 3), Rational(1, 3)});
  CHECK(f.q(x) == Rational(2, 3));
  CHECK(f.element_order(x) == 3);
  CHECK(f.q(f.scale(x, 2)) == Rational(2, 3));
  CHECK(f.b(x, x) == Rational(2, 3));
}

TEST_CASE("discriminant of U(3)") {
  const auto f = FiniteQuadraticModule::discriminant(twist(make_standard("U"), 3));
  CHECK(f.orders() == std::vector<Integer>{3, 3});
  const auto x1 = cls(f, {Rational(1, 3), Rational(0)});
  const auto x2 = cls(f, {Rational(0), Rational(1, 3)});
  CHECK(f.q(x1) == 0);
  CHECK(f.q(x2) == 0);
  CHECK(f.b(x1, x2) == Rational(1, 3));
  CHECK(f.q(f.add(x1, x2)) == Rational(2, 3));
  // not every q value is integral, and those that are do not form a subgroup
  CHECK_THROWS_AS(integral_value_subgroup(f), Error);

  const IntMatrix swap{{0, 1}, {1, 0}};
  const auto m = induced_map(f, swap);
  CHECK(m.apply(f, x1) == x2);
  CHECK(m.apply(f, x2) == x1);
  CHECK(is_isometry(f, m));
}

TEST_CASE("discriminant of I_{1,7}(2)") {
  const Lattice m = twist(make_standard("I_{1,7}"), 2);
  const auto f = FiniteQuadraticModule::discriminant(m);
  CHECK(f.order() == 256);
  const auto [elementary, rk] = is_p_elementary(f, 2);
  CHECK(elementary);
  CHECK(rk == 8);
  CHECK(f.q_modulus() == 2);
  const Rational half(1, 2);
  CHECK(f.q(cls(f, {half, 0, 0, 0, 0, 0, 0, 0})) == half);
  CHECK(f.q(cls(f, {0, half, 0, 0, 0, 0, 0, 0})) == Rational(3, 2));
  const auto s = integral_value_subgroup(f);
  CHECK(s.order() == 128);
}

TEST_CASE("modules of odd lattices carry q mod 1") {
  const auto f = FiniteQuadraticModule::discriminant(Lattice(IntMatrix{{3}}));
  CHECK(f.q_modulus() == 1);
  CHECK(f.q(f.generator(0)) == Rational(1, 3));
  CHECK(FiniteQuadraticModule::half_quotient(make_standard("Z2")).q_modulus() == 1);
}

TEST_CASE("trivial module") {
  const auto f = FiniteQuadraticModule::discriminant(make_standard("E8"));
  CHECK(f.order() == 1);
  CHECK(f.num_generators() == 0);
  CHECK(integral_value_subgroup(f).order() == 1);
  CHECK(fqm_automorphism_group(f).order == 1);
}

TEST_CASE("half quotient of E7") {
  const auto h = FiniteQuadraticModule::half_quotient(make_standard("E7"));
  CHECK(h.order() == 128);
  CHECK(h.q_modulus() == 2);
  for (std::size_t i = 0; i < h.num_generators(); ++i) CHECK(h.q(h.generator(i)).get_den() == 1);
}

TEST_CASE("from_values validation") {
  CHECK_NOTHROW(FiniteQuadraticModule::from_values({3}, RatMatrix::from_rows({{Rational(2, 3)}}), {Rational(2, 3)}, 2));
  CHECK_THROWS_AS(FiniteQuadraticModule::from_values({3}, RatMatrix::from_rows({{Rational(1, 2)}}), {Rational(2, 3)}, 2),
                  InputError);
  CHECK_THROWS_AS(FiniteQuadraticModule::from_values({3}, RatMatrix::from_rows({{Rational(1, 3)}}), {Rational(1, 3)}, 2),
                  InputError);
  CHECK_THROWS_AS(FiniteQuadraticModule::from_values({1}, RatMatrix::from_rows({{Rational(0)}}), {Rational(0)}, 2),
                  InputError);
}

TEST_CASE("element indexing round trip") {
  const auto f = FiniteQuadraticModule::discriminant(make_standard("D4"));
  const auto elems = f.elements(100);
  CHECK(elems.size() == 4);
  for (std::size_t i = 0; i < elems.size(); ++i) CHECK(f.index(elems[i]) == i);
  CHECK_THROWS_AS(f.elements(2), ResourceLimit);
}

TEST_CASE("automorphism groups of modules match brute force") {
  const std::vector<FiniteQuadraticModule> modules{
      FiniteQuadraticModule::discriminant(make_standard("A2")),
      FiniteQuadraticModule::discriminant(make_standard("D4")),
      FiniteQuadraticModule::discriminant(make_standard("A3")),
      FiniteQuadraticModule::discriminant(twist(make_standard("U"), 3)),
      FiniteQuadraticModule::discriminant(twist(make_standard("A2"), 2)),
      FiniteQuadraticModule::half_quotient(make_standard("D4")),
      FiniteQuadraticModule::half_quotient(make_standard("E6")),
  };
  for (const auto& f : modules) {
    const auto g = fqm_automorphism_group(f);
    CHECK(g.order == Integer(static_cast<unsigned long>(reference::fqm_automorphism_count(f))));
    CHECK(closure_order(f, g.generators) == g.order);
    for (const auto& m : g.generators) CHECK(is_isometry(f, m));
  }
  CHECK(fqm_automorphism_group(FiniteQuadraticModule::discriminant(make_standard("A2"))).order == 2);
  CHECK(fqm_automorphism_group(FiniteQuadraticModule::discriminant(twist(make_standard("U"), 3))).order == 4);
}

TEST_CASE("half quotient of E7 gives the image of Aut(E7)") {
  const Lattice e7 = make_standard("E7");
  const auto h = FiniteQuadraticModule::half_quotient(e7);
  const auto target = fqm_automorphism_group(h);
  CHECK(target.order == Integer(1451520));
  const auto serial = fqm_automorphism_group(h, 1 << 16, false);
  CHECK(serial.order == target.order);
  CHECK(serial.generators == target.generators);
}

TEST_CASE("isometries fixing a subgroup") {
  const auto f = FiniteQuadraticModule::discriminant(twist(make_standard("I_{1,7}"), 2));
  const auto s = integral_value_subgroup(f);
  const auto fixing = fqm_automorphisms_fixing(f, s.generators);
  CHECK(fixing.size() == 2);
  CHECK(std::find(fixing.begin(), fixing.end(), identity_map(f)) != fixing.end());
  for (const auto& m : fixing)
    for (const auto& x : s.elements) CHECK(m.apply(f, x) == x);
}

TEST_CASE("induced maps compose") {
  const Lattice a3 = make_standard("A3");
  const auto f = FiniteQuadraticModule::discriminant(a3);
  const auto g = automorphism_group(a3);
  REQUIRE(g.generators().size() >= 2);
  const auto& a = g.generators()[0];
  const auto& b = g.generators()[1];
  CHECK(induced_map(f, a * b) == compose(f, induced_map(f, a), induced_map(f, b)));
  CHECK_THROWS_AS(induced_map(f, IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), InputError);
}

TEST_CASE("generated subgroup") {
  const auto f = FiniteQuadraticModule::discriminant(twist(make_standard("U"), 3));
  const auto s = generated_subgroup(f, {f.generator(0)});
  CHECK(s.order() == 3);
  CHECK(s.contains(f, f.scale(f.generator(0), 2)));
  CHECK_FALSE(s.contains(f, f.generator(1)));
}

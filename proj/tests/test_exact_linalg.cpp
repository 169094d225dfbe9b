#include "doctest.h"
#include "latkit/errors.hpp"
#include "latkit/exact_linalg.hpp"
#include "latkit/lattice.hpp"
#include "reference/reference.hpp"

using namespace latkit;

namespace {

bool is_diagonal_chain(const IntMatrix& d) {
  Integer prev = 1;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (i != j && d(i, j) != 0) return false;
    }
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
    if (d(i, i) < 0) return false;
    if (d(i, i) != 0 && prev == 0) return false;
    if (prev != 0 && d(i, i) % prev != 0) return false;
    prev = d(i, i);
  }
  return true;
}

}  // namespace

TEST_CASE("smith normal form of a fixed matrix") {
  const IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  const auto s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(abs(det_exact(s.U)) == 1);
  CHECK(abs(det_exact(s.V)) == 1);
  CHECK(is_diagonal_chain(s.D));
  CHECK(s.diagonal() == std::vector<Integer>{2, 6, 12});
  CHECK(reference::elementary_divisors_by_minors(a) == std::vector<Integer>{2, 6, 12});
}

TEST_CASE("smith normal form of rectangular and singular matrices") {
  const IntMatrix a{{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 0, 1}};
  const auto s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(s.rank() == 2);
  CHECK(elementary_divisors(a) == reference::elementary_divisors_by_minors(a));
  CHECK(rank(a) == 2);
}

TEST_CASE("determinant and inverse") {
  const IntMatrix a{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  CHECK(det_exact(a) == 4);
  const RatMatrix inv = inverse(to_rational(a));
  CHECK(inv * to_rational(a) == RatMatrix::identity(3));
  CHECK(inv(0, 0) == Rational(3, 4));
  CHECK_THROWS_AS(inverse(to_rational(IntMatrix{{1, 2}, {2, 4}})), InputError);
  const IntMatrix u{{1, 1}, {0, 1}};
  CHECK(unimodular_inverse(u) * u == IntMatrix::identity(2));
}

TEST_CASE("inertia agrees with the characteristic polynomial oracle") {
  const std::vector<IntMatrix> cases{
      IntMatrix{{0, 1}, {1, 0}},
      IntMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}},
      IntMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 0}},
      IntMatrix{{0, 0, 1}, {0, 0, 0}, {1, 0, 0}},
      IntMatrix{{-2, 1, 0, 0}, {1, -2, 1, 0}, {0, 1, -2, 1}, {0, 0, 1, 3}},
  };
  for (const auto& g : cases) CHECK(inertia_ldlt(g) == reference::inertia_by_charpoly(g));
  for (const char* name : {"E6", "E7", "I_{1,6}", "D5"}) {
    CAPTURE(name);
    const IntMatrix g = make_standard(name).gram();
    CHECK(inertia_ldlt(g) == reference::inertia_by_charpoly(g));
  }
  CHECK(inertia_ldlt(make_standard("E7").gram()) == Inertia{7, 0, 0});
  CHECK(inertia_ldlt(IntMatrix{{0, 1}, {1, 0}}) == Inertia{1, 0, 1});
  CHECK_THROWS_AS(inertia_ldlt(IntMatrix{{0, 1}, {2, 0}}), InputError);
}

TEST_CASE("kernel, row basis and saturation") {
  const IntMatrix a{{1, 2}, {2, 4}, {3, 5}};
  const IntMatrix k = left_kernel(a);
  CHECK(k.rows() == 1);
  CHECK((k * a).is_zero());
  const IntMatrix b{{2, 0, 0}, {0, 2, 0}, {2, 2, 0}};
  const IntMatrix rb = row_basis(b);
  CHECK(rb.rows() == 2);
  const IntMatrix sat = saturation(IntMatrix{{2, 4, 6}});
  CHECK(sat.rows() == 1);
  CHECK(elementary_divisors(sat) == std::vector<Integer>{1});
}

TEST_CASE("rref and solve_left") {
  RatMatrix m = to_rational(IntMatrix{{1, 2, 3}, {2, 4, 7}});
  const auto pivots = rref(m);
  CHECK(pivots == std::vector<std::size_t>{0, 2});
  const RatMatrix a = to_rational(IntMatrix{{1, 0}, {1, 1}});
  const RatVector b{Rational(3), Rational(2)};
  const auto x = solve_left(a, b);
  REQUIRE(x);
  CHECK(mul(*x, a) == b);
}

TEST_CASE("matrix arithmetic and conversions") {
  const IntMatrix a{{1, 2}, {3, 4}};
  CHECK(a.transpose() == IntMatrix{{1, 3}, {2, 4}});
  CHECK((a - a).is_zero());
  CHECK(a.scaled(Integer(2)) == a + a);
  const auto r = to_rational(a).scaled(Rational(1, 2));
  CHECK_FALSE(to_integer(r).has_value());
  CHECK(to_integer(r.scaled(Rational(2))).value() == a);
  const std::vector<Rational> vals{Rational(1, 2), Rational(2, 3), Rational(5)};
  CHECK(lcm_of_denominators(vals) == 6);
}

TEST_CASE("LLL reduction of a Gram matrix") {
  // E6 in a skewed basis: the reduced form has diagonal 2
  const IntMatrix skew{{1, 0, 0, 0, 0, 0}, {3, 1, 0, 0, 0, 0}, {-2, 2, 1, 0, 0, 0},
                       {0, 0, 5, 1, 0, 0}, {1, 1, 1, 1, 1, 0}, {0, -4, 0, 0, 2, 1}};
  const IntMatrix e6{{2, -1, 0, 0, 0, 0}, {-1, 2, -1, 0, 0, 0}, {0, -1, 2, -1, 0, -1},
                     {0, 0, -1, 2, -1, 0}, {0, 0, 0, -1, 2, 0}, {0, 0, -1, 0, 0, 2}};
  const IntMatrix g = skew * e6 * skew.transpose();
  const IntMatrix t = lll_reduce_gram(g);
  CHECK(abs(det_exact(t)) == 1);
  const IntMatrix r = t * g * t.transpose();
  for (std::size_t i = 0; i < 6; ++i) CHECK(r(i, i) == 2);
  CHECK_THROWS_AS(lll_reduce_gram(IntMatrix{{0, 1}, {1, 0}}), InputError);
}

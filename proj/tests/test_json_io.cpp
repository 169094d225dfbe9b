#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "latkit/errors.hpp"
#include "latkit/json_io.hpp"

using namespace latkit;

TEST_CASE("integers and rationals") {
  CHECK(integer_from_json(Json(-7)) == -7);
  CHECK(integer_from_json(Json("123456789012345678901234567890")) == Integer("123456789012345678901234567890"));
  CHECK_THROWS_AS(integer_from_json(Json(1.5)), InputError);
  CHECK_THROWS_AS(integer_from_json(Json("12a")), InputError);
  CHECK(rational_from_json(Json("-2/6")) == Rational(-1, 3));
  CHECK(rational_from_json(Json(4)) == 4);
  CHECK_THROWS_AS(rational_from_json(Json("1/0")), InputError);
  CHECK(fraction_string(Rational(4, 6)) == "2/3");
  CHECK(fraction_string(Rational(5)) == "5");
  CHECK(to_json(Integer("123456789012345678901234567890")) == Json("123456789012345678901234567890"));
  CHECK(to_json(Integer(12)) == Json(12));
}

TEST_CASE("matrices") {
  CHECK(int_matrix_from_json(Json::parse("[[1,2],[3,4]]")) == IntMatrix{{1, 2}, {3, 4}});
  CHECK_THROWS_AS(int_matrix_from_json(Json::parse("[[1,2],[3]]")), InputError);
  CHECK_THROWS_AS(int_matrix_from_json(Json::parse("[1,2]")), InputError);
  CHECK(to_json(IntMatrix{{1, -2}}) == Json::parse("[[1,-2]]"));
  CHECK(to_json(RatMatrix::from_rows({{Rational(1, 2), Rational(3)}})) == Json::parse(R"([["1/2","3"]])"));
  CHECK(matrix_field_from_json(Json::parse(R"({"basis":[[1,0]]})"), "basis") == IntMatrix{{1, 0}});
  CHECK_THROWS_AS(matrix_field_from_json(Json::parse(R"({"basis":[[1,0]],"x":1})"), "basis"), InputError);
  CHECK_THROWS_AS(matrix_field_from_json(Json::parse(R"({"matrix":[[1]]})"), "basis"), InputError);
}

TEST_CASE("lattices") {
  const auto l = lattice_from_json(Json::parse(R"({"name":"A2","gram":[[2,-1],[-1,2]]})"));
  CHECK(l.name() == "A2");
  CHECK(l.det() == 3);
  CHECK(lattice_from_json(to_json(l)) == l);
  CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"gram":[[1,2],[3,4]]})")), InputError);
  CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"gram":[[1]],"extra":0})")), InputError);
  CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"name":"x"})")), InputError);
  CHECK_THROWS_AS(lattice_from_json(Json::parse("[1]")), InputError);
}

TEST_CASE("polynomials and actions") {
  const auto f = polynomial_from_json(Json::parse(
      R"({"variables":2,"terms":[{"exponents":[3,0],"coefficient":"1"},{"exponents":[0,3],"coefficient":"-1/2"}]})"));
  CHECK(f.variables() == 2);
  CHECK(f.terms().size() == 2);
  CHECK(f.degree() == 3);
  CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"variables":2,"terms":[{"exponents":[3],"coefficient":1}]})")),
                  InputError);
  CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"variables":1,"terms":[{"exponents":[-1],"coefficient":1}]})")),
                  InputError);
  const auto a = action_from_json(Json::parse(R"({"order":2,"exponents":[0,1]})"));
  CHECK(a.order == 2);
  CHECK(a.exponents == std::vector<int>{0, 1});
  CHECK_THROWS_AS(action_from_json(Json::parse(R"({"order":0,"exponents":[0]})")), InputError);
}

TEST_CASE("module and group encodings") {
  const auto f = FiniteQuadraticModule::discriminant(make_standard("A2"));
  const Json j = to_json(f);
  CHECK(j["invariant_factors"] == Json::parse("[3]"));
  CHECK(j["order"] == 3);
  CHECK(j["q_modulus"] == 2);
  CHECK(j["q"] == Json::parse(R"(["2/3"])"));
  CHECK(j["b"] == Json::parse(R"([["2/3"]])"));
  const Json g = to_json(automorphism_group(make_standard("A2")));
  CHECK(g["order"] == 12);
  CHECK(g["generators"].is_array());
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "latkit_json_io_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "good.json") << R"({"gram":[[2]]})";
    std::ofstream(dir / "bad.json") << R"({"gram":[[2]])";
  }
  CHECK(lattice_from_json(read_json_file(dir / "good.json")).det() == 2);
  CHECK_THROWS_AS(read_json_file(dir / "bad.json"), InputError);
  CHECK_THROWS_AS(read_json_file(dir / "missing.json"), InputError);
  std::filesystem::remove_all(dir);
}

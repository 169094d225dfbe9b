#pragma once

// JSON encodings for the CLI and scenario reports.
//
//   lattice:    {"name": "E7", "gram": [[2,-1,...], ...]}
//   matrix:     {"matrix": [[...], ...]}   (isometries, in lattice coordinates)
//   basis:      {"basis": [[...], ...]}    (sublattice rows, ambient coordinates)
//   polynomial: {"variables": 5, "terms": [{"exponents": [3,0,0,0,0], "coefficient": "1"}, ...]}
//   action:     {"order": 2, "exponents": [0,0,0,0,1]}
//
// Integers may be JSON numbers or decimal strings; rationals are numbers or
// strings "p/q". Integers that do not fit in 64 bits are written as strings.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "latkit/finite_quadratic.hpp"
#include "latkit/griffiths.hpp"
#include "latkit/isometry.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

using Json = nlohmann::ordered_json;

/// Parses a file; throws InputError on I/O or syntax errors.
Json read_json_file(const std::filesystem::path& path);

Integer integer_from_json(const Json& j);
Rational rational_from_json(const Json& j);
/// Rectangular array of integers; throws InputError otherwise.
IntMatrix int_matrix_from_json(const Json& j);

Lattice lattice_from_json(const Json& j);
/// Object with a single matrix field `key`.
IntMatrix matrix_field_from_json(const Json& j, const std::string& key);
Polynomial polynomial_from_json(const Json& j);
DiagonalAction action_from_json(const Json& j);

Json to_json(const Integer& x);
std::string fraction_string(const Rational& r);
Json to_json(const IntMatrix& m);
Json to_json(const RatMatrix& m);
Json to_json(const Lattice& l);
Json to_json(const FiniteQuadraticModule& f);
Json to_json(const IsometryGroup& g);
Json to_json(const FqmMap& m);

}  // namespace latkit

#include "latkit/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "latkit/errors.hpp"

namespace latkit {

namespace {

void only_keys(const Json& j, const std::set<std::string>& allowed, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + ": expected a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw InputError(std::string(what) + ": unknown field '" + key + "'");
}

const Json& required(const Json& j, const std::string& key, const char* what) {
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

int small_int(const Json& j, const char* what) {
  const Integer x = integer_from_json(j);
  if (!x.fits_sint_p()) throw InputError(std::string(what) + ": value out of range");
  return static_cast<int>(x.get_si());
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    Integer x;
    if (s.empty() || x.set_str(s, 10) != 0) throw InputError("not an integer: \"" + s + "\"");
    return x;
  }
  throw InputError("expected an integer, got " + j.dump());
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(integer_from_json(j));
    const Integer num = integer_from_json(Json(s.substr(0, slash)));
    const Integer den = integer_from_json(Json(s.substr(slash + 1)));
    if (den == 0) throw InputError("zero denominator in \"" + s + "\"");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  throw InputError("expected a rational, got " + j.dump());
}

IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  std::vector<IntVector> rows;
  std::size_t cols = 0;
  for (const auto& row : j) {
    if (!row.is_array()) throw InputError("matrix row must be an array");
    if (!rows.empty() && row.size() != cols) throw InputError("matrix rows have different lengths");
    cols = row.size();
    IntVector r;
    for (const auto& x : row) r.push_back(integer_from_json(x));
    rows.push_back(std::move(r));
  }
  return IntMatrix::from_rows(rows, cols);
}

Lattice lattice_from_json(const Json& j) {
  only_keys(j, {"name", "gram"}, "lattice");
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw InputError("lattice: name must be a string");
    name = j["name"].get<std::string>();
  }
  IntMatrix gram = int_matrix_from_json(required(j, "gram", "lattice"));
  if (gram.rows() == 0) throw InputError("lattice: empty Gram matrix");
  return Lattice(std::move(gram), std::move(name));
}

IntMatrix matrix_field_from_json(const Json& j, const std::string& key) {
  only_keys(j, {key}, key.c_str());
  return int_matrix_from_json(required(j, key, key.c_str()));
}

Polynomial polynomial_from_json(const Json& j) {
  only_keys(j, {"variables", "terms"}, "polynomial");
  const int vars = small_int(required(j, "variables", "polynomial"), "polynomial");
  if (vars < 1) throw InputError("polynomial: needs at least one variable");
  const auto& terms = required(j, "terms", "polynomial");
  if (!terms.is_array()) throw InputError("polynomial: terms must be an array");
  std::vector<Term> out;
  for (const auto& t : terms) {
    only_keys(t, {"exponents", "coefficient"}, "term");
    const auto& e = required(t, "exponents", "term");
    if (!e.is_array() || e.size() != static_cast<std::size_t>(vars))
      throw InputError("term: exponents must list one entry per variable");
    Term term;
    for (const auto& x : e) {
      const int v = small_int(x, "term");
      if (v < 0) throw InputError("term: negative exponent");
      term.exponents.push_back(v);
    }
    term.coefficient = t.contains("coefficient") ? rational_from_json(t["coefficient"]) : Rational(1);
    out.push_back(std::move(term));
  }
  return Polynomial(static_cast<std::size_t>(vars), std::move(out));
}

DiagonalAction action_from_json(const Json& j) {
  only_keys(j, {"order", "exponents"}, "action");
  DiagonalAction a;
  a.order = small_int(required(j, "order", "action"), "action");
  if (a.order < 1) throw InputError("action: order must be positive");
  const auto& e = required(j, "exponents", "action");
  if (!e.is_array()) throw InputError("action: exponents must be an array");
  for (const auto& x : e) a.exponents.push_back(small_int(x, "action"));
  return a;
}

Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

std::string fraction_string(const Rational& value) {
  Rational r = value;
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(i, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(fraction_string(m(i, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const Lattice& l) {
  Json out;
  out["name"] = l.name();
  out["gram"] = to_json(l.gram());
  return out;
}

Json to_json(const FiniteQuadraticModule& f) {
  Json out;
  Json orders = Json::array();
  for (const auto& d : f.orders()) orders.push_back(to_json(d));
  out["invariant_factors"] = std::move(orders);
  out["order"] = to_json(f.order());
  out["q_modulus"] = f.q_modulus();
  Json q = Json::array();
  for (std::size_t i = 0; i < f.num_generators(); ++i) q.push_back(fraction_string(f.q(f.generator(i))));
  out["q"] = std::move(q);
  out["b"] = to_json(f.b_matrix());
  return out;
}

Json to_json(const IsometryGroup& g) {
  Json out;
  out["order"] = to_json(g.order());
  Json gens = Json::array();
  for (const auto& m : g.generators()) gens.push_back(to_json(m));
  out["generators"] = std::move(gens);
  return out;
}

Json to_json(const FqmMap& m) {
  Json out = Json::array();
  for (const auto& img : m.images) out.push_back(img);
  return out;
}

}  // namespace latkit

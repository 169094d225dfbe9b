#include "latkit/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <vector>

#include "latkit/errors.hpp"

namespace latkit {

Lattice::Lattice(IntMatrix gram, std::string name) : gram_(std::move(gram)), name_(std::move(name)) {
  if (!gram_.is_square()) throw InputError("Gram matrix is not square");
  if (!gram_.is_symmetric()) throw InputError("Gram matrix is not symmetric");
  det_ = det_exact(gram_);
  if (det_ == 0) throw InputError("Gram matrix is degenerate");
}

IntMatrix Sublattice::induced_gram() const {
  return basis * ambient.gram() * basis.transpose();
}

Lattice Sublattice::induced(std::string name) const { return Lattice(induced_gram(), std::move(name)); }

namespace {

IntMatrix cartan_from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
  for (auto [a, b] : edges) {
    g(a, b) = -1;
    g(b, a) = -1;
  }
  return g;
}

long parse_int(std::string_view s) {
  long v = 0;
  auto first = s.data();
  auto last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw InputError("invalid integer '" + std::string(s) + "' in lattice name");
  return v;
}

std::vector<long> parse_list(std::string_view s) {
  std::vector<long> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string_view::npos) comma = s.size();
    out.push_back(parse_int(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Lattice make_standard(std::string_view raw) {
  const std::string original(raw);
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw InputError("empty lattice name");

  if (s.rfind("diag(", 0) == 0 && s.back() == ')') {
    auto entries = parse_list(std::string_view(s).substr(5, s.size() - 6));
    IntMatrix g(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
    return Lattice(g, original);
  }
  if (s == "U") return Lattice(IntMatrix{{0, 1}, {1, 0}}, "U");

  const char family = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  std::string rest = s.substr(1);
  std::erase(rest, '_');
  std::erase(rest, '{');
  std::erase(rest, '}');
  if (rest.empty()) throw InputError("missing rank parameter in lattice name '" + original + "'");

  if (family == 'I') {
    auto pq = parse_list(rest);
    if (pq.size() == 1) pq.push_back(0);
    if (pq.size() != 2 || pq[0] < 0 || pq[1] < 0 || pq[0] + pq[1] == 0)
      throw InputError("invalid I_{p,q} parameters in '" + original + "'");
    const auto n = static_cast<std::size_t>(pq[0] + pq[1]);
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = (static_cast<long>(i) < pq[0]) ? 1 : -1;
    return Lattice(g, original);
  }

  const long n = parse_int(rest);
  if (n <= 0) throw InputError("invalid rank parameter in '" + original + "'");
  const auto un = static_cast<std::size_t>(n);
  switch (family) {
    case 'Z':
      return Lattice(IntMatrix::identity(un), original);
    case 'A': {
      std::vector<std::pair<std::size_t, std::size_t>> e;
      for (std::size_t i = 0; i + 1 < un; ++i) e.emplace_back(i, i + 1);
      return Lattice(cartan_from_edges(un, e), original);
    }
    case 'D': {
      if (n < 4) throw InputError("D_n requires n >= 4");
      std::vector<std::pair<std::size_t, std::size_t>> e;
      for (std::size_t i = 0; i + 2 < un; ++i) e.emplace_back(i, i + 1);
      e.emplace_back(un - 3, un - 1);
      return Lattice(cartan_from_edges(un, e), original);
    }
    case 'E': {
      if (n < 6 || n > 8) throw InputError("E_n requires 6 <= n <= 8");
      // Bourbaki numbering: 1-3-4-5-6-7-8 chain, 2 attached to 4
      std::vector<std::pair<std::size_t, std::size_t>> e{{0, 2}, {1, 3}};
      for (std::size_t i = 2; i + 1 < un; ++i) e.emplace_back(i, i + 1);
      return Lattice(cartan_from_edges(un, e), original);
    }
    default:
      break;
  }
  throw InputError("unknown lattice name '" + original + "'");
}

Lattice twist(const Lattice& l, const Integer& n) {
  if (n == 0) throw InputError("twist: scale must be nonzero");
  std::string name = l.name().empty() ? std::string() : l.name() + "(" + n.get_str() + ")";
  return Lattice(l.gram().scaled(n), name);
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.rank() + b.rank();
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) g(a.rank() + i, a.rank() + j) = b.gram()(i, j);
  std::string name;
  if (!a.name().empty() && !b.name().empty()) name = a.name() + "+" + b.name();
  return Lattice(g, name);
}

std::pair<std::size_t, std::size_t> signature(const Lattice& l) {
  auto in = inertia_ldlt(l.gram());
  return {in.n_plus, in.n_minus};
}

bool is_definite(const Lattice& l) {
  auto [p, q] = signature(l);
  return p == 0 || q == 0;
}

bool is_positive_definite(const Lattice& l) { return signature(l).second == 0; }

ParityClass classify_parity_unimodular(const Lattice& l) {
  ParityClass c;
  c.even = true;
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (l.gram()(i, i) % 2 != 0) c.even = false;
  c.unimodular = abs(l.det()) == 1;
  return c;
}

Sublattice orthogonal_complement(const Lattice& l, const IntMatrix& basis) {
  if (basis.rows() == 0) return Sublattice{l, IntMatrix::identity(l.rank())};
  if (basis.cols() != l.rank()) throw InputError("sublattice basis has wrong number of columns");
  // x G B^T = 0
  IntMatrix a = l.gram() * basis.transpose();
  return Sublattice{l, left_kernel(a)};
}

Sublattice orthogonal_complement(const Lattice& l, const Sublattice& s) {
  return orthogonal_complement(l, s.basis);
}

SublatticeIndex sublattice_index_and_primitivity(const Lattice& l, const Sublattice& s) {
  SublatticeIndex out;
  if (s.basis.rows() == 0) {
    out.primitive = true;
    if (l.rank() == 0) out.index = Integer(1);
    return out;
  }
  if (s.basis.cols() != l.rank()) throw InputError("sublattice basis has wrong number of columns");
  auto snf = smith_normal_form(s.basis);
  const std::size_t r = snf.rank();
  out.primitive = r == s.basis.rows();
  for (std::size_t i = 0; i < r; ++i) {
    out.elementary_divisors.push_back(snf.D(i, i));
    if (snf.D(i, i) != 1) out.primitive = false;
  }
  if (r == l.rank() && s.basis.rows() == l.rank()) out.index = abs(det_exact(s.basis));
  return out;
}

Sublattice saturate(const Sublattice& s) { return Sublattice{s.ambient, saturation(s.basis)}; }

IntMatrix restrict_to(const Sublattice& s, const IntMatrix& g) {
  const IntMatrix image = s.basis * g;
  const RatMatrix b = to_rational(s.basis);
  IntMatrix out(s.rank(), s.rank());
  for (std::size_t i = 0; i < s.rank(); ++i) {
    auto row = to_rational(std::span<const Integer>(image.row(i)));
    auto x = solve_left(b, row);
    if (!x) throw InputError("restrict_to: sublattice is not stable under the map");
    auto xi = to_integer(std::span<const Rational>(*x));
    if (!xi) throw InputError("restrict_to: image leaves the sublattice");
    out.set_row(i, *xi);
  }
  return out;
}

bool preserves_gram(const IntMatrix& g, const IntMatrix& gram) {
  if (!g.is_square() || g.rows() != gram.rows()) return false;
  return g * gram * g.transpose() == gram;
}

}  // namespace latkit

#include "latkit/griffiths.hpp"

#include <algorithm>
#include <map>

#include "latkit/errors.hpp"

namespace latkit {

namespace {

void check_class(int n, int d) {
  if (n < 1) throw InputError("hypersurface dimension must be at least 1");
  if (d < 3) throw InputError("hypersurface degree must be at least 3");
}

int mod_int(long a, int m) {
  const long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace

Integer jacobian_hilbert_coefficient(int n, int d, long k) {
  check_class(n, d);
  if (k < 0) return 0;
  // (1 + t + ... + t^{d-2})^{n+2} by repeated convolution, truncated at k
  std::vector<Integer> poly(static_cast<std::size_t>(k) + 1, 0);
  poly[0] = 1;
  for (int f = 0; f < n + 2; ++f) {
    std::vector<Integer> next(poly.size(), 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (poly[i] == 0) continue;
      for (int j = 0; j <= d - 2 && i + static_cast<std::size_t>(j) < next.size(); ++j) next[i + j] += poly[i];
    }
    poly = std::move(next);
  }
  return poly[static_cast<std::size_t>(k)];
}

std::vector<Integer> primitive_hodge_numbers(int n, int d) {
  check_class(n, d);
  std::vector<Integer> out;
  for (int a = 1; a <= n + 1; ++a) out.push_back(jacobian_hilbert_coefficient(n, d, static_cast<long>(a) * d - n - 2));
  return out;
}

MiddleCohomology middle_rank_and_signature(int n, int d, bool with_signature) {
  const auto h = primitive_hodge_numbers(n, d);
  MiddleCohomology out;
  out.rank = 0;
  for (const auto& x : h) out.rank += x;
  if (n % 2 == 0) out.rank += 1;
  if (!with_signature) return out;
  if (n % 2 != 0) throw InputError("signature is only defined for even-dimensional hypersurfaces");
  Integer plus = 0, minus = 0;
  for (int a = 1; a <= n + 1; ++a) {
    const int p = n - a + 1;
    (p % 2 == 0 ? plus : minus) += h[static_cast<std::size_t>(a - 1)];
  }
  out.primitive_signature = std::make_pair(plus, minus);
  out.signature = std::make_pair(plus + 1, minus);
  return out;
}

// ---------------------------------------------------------------------------
// polynomials

Polynomial::Polynomial(std::size_t variables, std::vector<Term> terms) : vars_(variables) {
  std::map<std::vector<int>, Rational, std::greater<>> merged;
  for (auto& t : terms) {
    if (t.exponents.size() != variables) throw InputError("polynomial term has the wrong number of exponents");
    for (int e : t.exponents)
      if (e < 0) throw InputError("polynomial exponents must be nonnegative");
    merged[t.exponents] += t.coefficient;
  }
  for (auto& [e, c] : merged)
    if (c != 0) terms_.push_back({e, c});
}

int Polynomial::degree() const {
  if (terms_.empty()) throw InputError("zero polynomial has no degree");
  int deg = -1;
  for (const auto& t : terms_) {
    int s = 0;
    for (int e : t.exponents) s += e;
    if (deg >= 0 && s != deg) throw InputError("polynomial is not homogeneous");
    deg = s;
  }
  return deg;
}

Polynomial Polynomial::partial(std::size_t i) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exponents[i] == 0) continue;
    Term d = t;
    d.coefficient *= t.exponents[i];
    d.exponents[i] -= 1;
    out.push_back(std::move(d));
  }
  return Polynomial(vars_, std::move(out));
}

Polynomial Polynomial::fermat(std::size_t variables, int d) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < variables; ++i) {
    Term t{std::vector<int>(variables, 0), 1};
    t.exponents[i] = d;
    terms.push_back(std::move(t));
  }
  return Polynomial(variables, std::move(terms));
}

int preserved_scalar_exponent(const Polynomial& f, const DiagonalAction& a) {
  if (a.order < 1) throw InputError("action order must be positive");
  if (a.exponents.size() != f.variables()) throw InputError("action has the wrong number of exponents");
  if (f.is_zero()) throw InputError("zero polynomial");
  std::optional<int> c;
  for (const auto& t : f.terms()) {
    long s = 0;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) s += static_cast<long>(t.exponents[i]) * a.exponents[i];
    const int e = mod_int(-s, a.order);
    if (c && *c != e) throw InputError("action does not preserve the polynomial up to a scalar");
    c = e;
  }
  return *c;
}

std::vector<std::vector<int>> monomials_of_degree(std::size_t vars, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || vars == 0) return out;
  std::vector<int> cur(vars, 0);
  // descending lex: first coordinate as large as possible
  const auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == vars) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, k);
  return out;
}

namespace {

// Rows: coefficient vectors of Z^beta * dF/dZ_i in degree k (columns indexed
// by `monos`).
std::vector<std::vector<std::pair<std::size_t, Rational>>> jacobian_rows(const Polynomial& f, int k,
                                                                        const std::vector<std::vector<int>>& monos) {
  const int d = f.degree();
  std::map<std::vector<int>, std::size_t> column;
  for (std::size_t c = 0; c < monos.size(); ++c) column[monos[c]] = c;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
  const auto shifts = monomials_of_degree(f.variables(), k - (d - 1));
  for (std::size_t i = 0; i < f.variables(); ++i) {
    const Polynomial p = f.partial(i);
    for (const auto& beta : shifts) {
      std::vector<std::pair<std::size_t, Rational>> row;
      for (const auto& t : p.terms()) {
        std::vector<int> e = t.exponents;
        for (std::size_t v = 0; v < e.size(); ++v) e[v] += beta[v];
        row.emplace_back(column.at(e), t.coefficient);
      }
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  return rows;
}

constexpr std::uint64_t kPrime = 2147483647ULL;

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  b %= kPrime;
  while (e) {
    if (e & 1) r = r * b % kPrime;
    b = b * b % kPrime;
    e >>= 1;
  }
  return r;
}

// Rank modulo a large prime, or nullopt if some denominator vanishes mod p.
std::optional<std::size_t> rank_mod_p(const std::vector<std::vector<std::pair<std::size_t, Rational>>>& rows,
                                      std::size_t cols) {
  std::vector<std::vector<std::uint64_t>> m;
  for (const auto& r : rows) {
    std::vector<std::uint64_t> dense(cols, 0);
    for (const auto& [c, v] : r) {
      Integer num = v.get_num() % Integer(static_cast<unsigned long>(kPrime));
      if (num < 0) num += static_cast<unsigned long>(kPrime);
      const Integer den = v.get_den() % Integer(static_cast<unsigned long>(kPrime));
      if (den == 0) return std::nullopt;
      dense[c] = num.get_ui() * pow_mod(den.get_ui(), kPrime - 2) % kPrime;
    }
    m.push_back(std::move(dense));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const std::uint64_t inv = pow_mod(m[rank][c], kPrime - 2);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const std::uint64_t factor = m[r][c] * inv % kPrime;
      for (std::size_t j = c; j < cols; ++j)
        m[r][j] = (m[r][j] + (kPrime - factor) * m[rank][j]) % kPrime;
    }
    ++rank;
  }
  return rank;
}

RatMatrix dense(const std::vector<std::vector<std::pair<std::size_t, Rational>>>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) m(r, c) += v;
  return m;
}

}  // namespace

std::vector<std::vector<int>> jacobian_quotient_basis(const Polynomial& f, int k) {
  f.degree();
  const auto monos = monomials_of_degree(f.variables(), k);
  if (monos.empty()) return {};
  const auto rows = jacobian_rows(f, k, monos);
  if (rows.empty()) return monos;
  RatMatrix m = dense(rows, monos.size());
  const auto pivots = rref(m);
  std::vector<char> is_pivot(monos.size(), 0);
  for (auto p : pivots) is_pivot[p] = 1;
  std::vector<std::vector<int>> out;
  for (std::size_t c = 0; c < monos.size(); ++c)
    if (!is_pivot[c]) out.push_back(monos[c]);
  return out;
}

bool is_smooth(const Polynomial& f) {
  const int d = f.degree();
  const int vars = static_cast<int>(f.variables());
  if (d < 2) return d == 1;
  const int top = vars * (d - 2) + 1;
  const auto monos = monomials_of_degree(f.variables(), top);
  const auto rows = jacobian_rows(f, top, monos);
  if (auto r = rank_mod_p(rows, monos.size()); r && *r == monos.size()) return true;
  RatMatrix m = dense(rows, monos.size());
  return rref(m).size() == monos.size();
}

ResidueEigenvalues residue_eigenvalues(const Polynomial& f, const DiagonalAction& a, int pole_order) {
  const int d = f.degree();
  const int n = static_cast<int>(f.variables()) - 2;
  check_class(n, d);
  if (pole_order < 1 || pole_order > n + 1) throw InputError("pole order must be between 1 and n+1");
  ResidueEigenvalues out;
  out.order = a.order;
  out.scalar_exponent = preserved_scalar_exponent(f, a);
  out.degree = pole_order * d - n - 2;
  if (!is_smooth(f)) throw InputError("polynomial is not smooth");
  out.basis = jacobian_quotient_basis(f, out.degree);
  if (Integer(static_cast<unsigned long>(out.basis.size())) != jacobian_hilbert_coefficient(n, d, out.degree))
    throw InputError("Jacobian ring dimension does not match the smooth Hilbert series");
  long sum_e = 0;
  for (int e : a.exponents) sum_e += e;
  for (const auto& m : out.basis) {
    long s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += static_cast<long>(m[i]) * a.exponents[i];
    out.exponents.push_back(mod_int(-s - sum_e - static_cast<long>(pole_order) * out.scalar_exponent, a.order));
  }
  return out;
}

MinusIdReport minus_id_obstruction(const Polynomial& f) {
  if (f.variables() != 5 || f.degree() != 3) throw InputError("minus-id check expects a cubic threefold form");
  MinusIdReport report;
  const std::size_t vars = f.variables();
  for (unsigned mask = 1; mask < (1U << vars); ++mask) {
    DiagonalAction a{2, std::vector<int>(vars, 0)};
    for (std::size_t i = 0; i < vars; ++i) a.exponents[i] = static_cast<int>((mask >> i) & 1U);
    int c = 0;
    try {
      c = preserved_scalar_exponent(f, a);
    } catch (const InputError&) {
      continue;
    }
    if (c != 0) continue;
    SignPatternResult r;
    r.pattern = a.exponents;
    r.eigenvalues = residue_eigenvalues(f, a, 2);
    r.scalar_minus_one = std::all_of(r.eigenvalues.exponents.begin(), r.eigenvalues.exponents.end(),
                                     [](int e) { return e == 1; });
    report.patterns.push_back(std::move(r));
  }
  report.vacuous = report.patterns.empty();
  report.obstruction_confirmed =
      std::none_of(report.patterns.begin(), report.patterns.end(), [](const auto& r) { return r.scalar_minus_one; });
  return report;
}

}  // namespace latkit

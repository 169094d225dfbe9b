#include "reference/reference.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "latkit/errors.hpp"
#include "latkit/symplectic_f2.hpp"

namespace latkit::reference {

namespace {

Integer floor_sqrt(const Rational& r) {
  if (r <= 0) return 0;
  Integer q = r.get_num() / r.get_den();
  Integer s = sqrt(q);
  while (Rational((s + 1) * (s + 1)) <= r) ++s;
  while (Rational(s * s) > r) --s;
  return s;
}

// Both signs of every nonzero vector of norm |x.x| <= bound.
std::vector<IntVector> box_vectors(const Lattice& l, const Integer& bound, IntMatrix& gram_pos) {
  gram_pos = l.gram();
  if (!is_definite(l)) throw InputError("box enumeration needs a definite lattice");
  if (!is_positive_definite(l)) gram_pos = -gram_pos;
  const std::size_t n = l.rank();
  const RatMatrix inv = inverse(to_rational(gram_pos));
  std::vector<Integer> box(n);
  for (std::size_t i = 0; i < n; ++i) box[i] = floor_sqrt(Rational(bound) * inv(i, i));
  std::vector<IntVector> out;
  IntVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -box[i];
  while (true) {
    const Integer nrm = bilinear(x, gram_pos, x);
    if (nrm != 0 && nrm <= bound) out.push_back(x);
    std::size_t i = 0;
    while (i < n && x[i] == box[i]) {
      x[i] = -box[i];
      ++i;
    }
    if (i == n) break;
    ++x[i];
  }
  return out;
}

Integer determinant(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a(0, c) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = a(i, j);
    const Integer term = a(0, c) * determinant(minor);
    total += (c % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

int sign_changes(const std::vector<Rational>& c) {
  int changes = 0;
  int last = 0;
  for (const auto& x : c) {
    const int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace

std::vector<ShortVector> box_short_vectors(const Lattice& l, const Integer& bound) {
  IntMatrix g;
  const auto all = box_vectors(l, bound, g);
  const bool negative = !is_positive_definite(l);
  std::vector<ShortVector> out;
  for (const auto& v : all) {
    const auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
    if (*first < 0) continue;
    ShortVector sv;
    for (const auto& x : v) sv.coords.push_back(x.get_si());
    const Integer nrm = bilinear(v, g, v);
    sv.norm = negative ? -nrm.get_si() : nrm.get_si();
    out.push_back(std::move(sv));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.coords < b.coords; });
  return out;
}

Integer automorphism_count(const Lattice& l) {
  const std::size_t n = l.rank();
  if (n == 0) return 1;
  IntMatrix g;
  Integer bound = 0;
  IntMatrix pos = l.gram();
  if (!is_positive_definite(l)) pos = -pos;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, pos(i, i));
  const auto all = box_vectors(l, bound, g);

  std::vector<std::vector<std::size_t>> by_level(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < all.size(); ++k)
      if (bilinear(all[k], g, all[k]) == g(i, i)) by_level[i].push_back(k);

  std::vector<std::size_t> chosen(n);
  Integer count = 0;
  const auto rec = [&](auto&& self, std::size_t level) -> void {
    if (level == n) {
      ++count;
      return;
    }
    for (std::size_t k : by_level[level]) {
      bool ok = true;
      for (std::size_t j = 0; j < level && ok; ++j) ok = bilinear(all[k], g, all[chosen[j]]) == g(level, j);
      if (!ok) continue;
      chosen[level] = k;
      self(self, level + 1);
    }
  };
  rec(rec, 0);
  return count;
}

std::uint64_t fqm_automorphism_count(const FiniteQuadraticModule& f) {
  const std::size_t k = f.num_generators();
  if (k == 0) return 1;
  const auto elems = f.elements(1 << 20);
  std::vector<FqmElement> images(k);
  std::uint64_t count = 0;
  const auto rec = [&](auto&& self, std::size_t level) -> void {
    if (level == k) {
      const FqmMap m{images};
      if (is_isometry(f, m)) ++count;
      return;
    }
    const auto gen = f.generator(level);
    for (const auto& x : elems) {
      if (f.element_order(x) != f.element_order(gen) || f.q(x) != f.q(gen)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < level && ok; ++j) ok = f.b(x, images[j]) == f.b(gen, f.generator(j));
      if (!ok) continue;
      images[level] = x;
      self(self, level + 1);
    }
  };
  rec(rec, 0);
  return count;
}

std::vector<Integer> elementary_divisors_by_minors(const IntMatrix& a) {
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  std::vector<Integer> dk{Integer(1)};
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(r, k, 0, cur, rs);
    subsets(c, k, 0, cur, cs);
    Integer g = 0;
    for (const auto& ri : rs)
      for (const auto& ci : cs) {
        IntMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m(i, j) = a(ri[i], ci[j]);
        g = gcd(g, determinant(m));
      }
    if (g == 0) break;
    dk.push_back(abs(g));
  }
  std::vector<Integer> out;
  for (std::size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] / dk[k - 1]);
  return out;
}

Inertia inertia_by_charpoly(const IntMatrix& g) {
  const std::size_t n = g.rows();
  const RatMatrix a = to_rational(g);
  // p(x) = sum c[i] x^i, c[n] = 1
  std::vector<Rational> c(n + 1, 0);
  c[n] = 1;
  RatMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = next;
    const RatMatrix am = a * m;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  std::size_t zeros = 0;
  while (zeros <= n && c[zeros] == 0) ++zeros;
  std::vector<Rational> pos(c.begin() + static_cast<long>(zeros), c.end());
  std::vector<Rational> neg = pos;
  for (std::size_t i = 0; i < neg.size(); ++i)
    if ((i + zeros) % 2 == 1) neg[i] = -neg[i];
  Inertia out;
  out.n_zero = zeros;
  out.n_plus = static_cast<std::size_t>(sign_changes(pos));
  out.n_minus = static_cast<std::size_t>(sign_changes(neg));
  return out;
}

Integer hilbert_coefficient_closed_form(int n, int d, long k) {
  if (k < 0) return 0;
  const long vars = n + 2;
  Integer total = 0;
  for (long j = 0; j <= vars && j * (d - 1) <= k; ++j) {
    const Integer term = binomial(vars, j) * binomial(k - j * (d - 1) + vars - 1, vars - 1);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

Integer primitive_middle_betti(int n, int d) {
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), Integer(1 - d).get_mpz_t(), static_cast<unsigned long>(n + 2));
  const Integer chi = (power - 1) / d + n + 2;
  // b_i = 1 for even i != n in [0, 2n]
  const long others = (n % 2 == 0) ? n : n + 1;
  const Integer middle = (n % 2 == 0) ? Integer(chi - others) : Integer(others - chi);
  return (n % 2 == 0) ? Integer(middle - 1) : middle;
}

std::uint64_t symplectic_order_by_transvections(int genus) {
  if (genus < 1 || genus > kMaxRefinementGenus) throw InputError("genus out of range");
  const int n = 2 * genus;
  const auto apply = [&](std::uint64_t m, std::uint32_t x) {
    std::uint32_t y = 0;
    for (int i = 0; i < n; ++i)
      if ((x >> i) & 1U) y ^= static_cast<std::uint32_t>((m >> (6 * i)) & 63U);
    return y;
  };
  std::uint64_t id = 0;
  for (int i = 0; i < n; ++i) id |= static_cast<std::uint64_t>(1U << i) << (6 * i);
  std::vector<std::uint32_t> vs;
  for (std::uint32_t v = 1; v < (1U << n); ++v) vs.push_back(v);
  std::unordered_set<std::uint64_t> seen{id};
  std::vector<std::uint64_t> queue{id};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint64_t m = queue[head];
    for (auto v : vs) {
      std::uint64_t next = 0;
      for (int i = 0; i < n; ++i) {
        std::uint32_t img = apply(m, 1U << i);
        if (symplectic_pairing_f2(genus, img, v)) img ^= v;
        next |= static_cast<std::uint64_t>(img) << (6 * i);
      }
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return queue.size();
}

}  // namespace latkit::reference

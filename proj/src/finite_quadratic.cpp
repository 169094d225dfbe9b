#include "latkit/finite_quadratic.hpp"

#include <algorithm>
#include <numeric>

#include "latkit/errors.hpp"

namespace latkit {

namespace {

Rational mod_rational(const Rational& r, long m) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  // floor(r / m) * m, done on the integer floor first for speed
  Rational out = r;
  Integer k;
  mpz_fdiv_q_ui(k.get_mpz_t(), fl.get_mpz_t(), static_cast<unsigned long>(m));
  out -= Rational(k * m);
  return out;
}

std::int64_t mod_i64(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

void FiniteQuadraticModule::validate() const {
  const std::size_t k = orders_.size();
  if (b_.rows() != k || b_.cols() != k || q_.size() != k) throw InputError("finite module: size mismatch");
  if (q_modulus_ != 1 && q_modulus_ != 2) throw InputError("finite module: q modulus must be 1 or 2");
  unsigned __int128 total = 1;
  for (const auto& d : orders_) {
    if (d < 2) throw InputError("finite module: invariant factors must be at least 2");
    if (!d.fits_slong_p()) throw InputError("finite module: invariant factor too large");
    total *= static_cast<unsigned __int128>(d.get_si());
    if (total > (static_cast<unsigned __int128>(1) << 62)) throw InputError("finite module: group too large");
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (b_(i, j) != b_(j, i)) throw InputError("finite module: b not symmetric");
      const Rational t = b_(i, j) * Rational(orders_[i]);
      if (t.get_den() != 1) throw InputError("finite module: b denominator does not divide the order");
    }
    const Rational t = q_[i] * Rational(orders_[i] * orders_[i]);
    if (t.get_den() != 1 || mod_rational(t, q_modulus_) != 0)
      throw InputError("finite module: q not compatible with the generator order");
    if (q_modulus_ == 2 && mod_rational(q_[i] - b_(i, i), 1) != 0)
      throw InputError("finite module: q and b disagree on the diagonal");
  }
}

FiniteQuadraticModule FiniteQuadraticModule::from_values(std::vector<Integer> orders, RatMatrix b,
                                                         std::vector<Rational> q, int q_modulus) {
  FiniteQuadraticModule f;
  f.orders_ = std::move(orders);
  f.b_ = std::move(b);
  f.q_ = std::move(q);
  f.q_modulus_ = q_modulus;
  f.validate();
  for (std::size_t i = 0; i < f.orders_.size(); ++i) {
    f.d_.push_back(f.orders_[i].get_si());
    f.q_[i] = mod_rational(f.q_[i], q_modulus);
    for (std::size_t j = 0; j < f.orders_.size(); ++j) f.b_(i, j) = mod_rational(f.b_(i, j), 1);
  }
  return f;
}

namespace {

FiniteQuadraticModule build_from_lifts(const Lattice& l, std::vector<Integer> orders, RatMatrix lifts,
                                       const Rational& scale) {
  const std::size_t k = orders.size();
  RatMatrix b(k, k);
  std::vector<Rational> q(k);
  const int modulus = is_even(l) ? 2 : 1;
  for (std::size_t i = 0; i < k; ++i) {
    const auto li = lifts.row(i);
    for (std::size_t j = 0; j < k; ++j) b(i, j) = scale * bilinear(li, l.gram(), lifts.row(j));
    q[i] = b(i, i);
  }
  return FiniteQuadraticModule::from_values(std::move(orders), std::move(b), std::move(q), modulus);
}

}  // namespace

FiniteQuadraticModule FiniteQuadraticModule::discriminant(const Lattice& l) {
  const std::size_t n = l.rank();
  const auto snf = smith_normal_form(l.gram());
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < n; ++j)
    if (snf.D(j, j) > 1) kept.push_back(j);
  std::vector<Integer> orders;
  RatMatrix lifts(kept.size(), n);
  RatMatrix coord(n, kept.size());
  const IntMatrix gv = l.gram() * snf.V;
  for (std::size_t a = 0; a < kept.size(); ++a) {
    const std::size_t j = kept[a];
    orders.push_back(snf.D(j, j));
    for (std::size_t c = 0; c < n; ++c) {
      lifts(a, c) = Rational(snf.U(j, c), snf.D(j, j));
      lifts(a, c).canonicalize();
      coord(c, a) = gv(c, j);
    }
  }
  auto f = build_from_lifts(l, std::move(orders), lifts, Rational(1));
  f.lifted_ = true;
  f.source_gram_ = l.gram();
  f.lifts_ = std::move(lifts);
  f.coordinate_ = std::move(coord);
  return f;
}

FiniteQuadraticModule FiniteQuadraticModule::half_quotient(const Lattice& l) {
  const std::size_t n = l.rank();
  RatMatrix lifts(n, n);
  RatMatrix coord(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    lifts(i, i) = Rational(1, 2);
    coord(i, i) = 2;
  }
  auto f = build_from_lifts(l, std::vector<Integer>(n, Integer(2)), lifts, Rational(2));
  f.lifted_ = true;
  f.source_gram_ = l.gram();
  f.lifts_ = std::move(lifts);
  f.coordinate_ = std::move(coord);
  return f;
}

// ---------------------------------------------------------------------------
// arithmetic

Integer FiniteQuadraticModule::order() const {
  Integer o = 1;
  for (const auto& d : orders_) o *= d;
  return o;
}

FqmElement FiniteQuadraticModule::generator(std::size_t i) const {
  FqmElement x = zero();
  x[i] = 1;
  return x;
}

FqmElement FiniteQuadraticModule::reduce(FqmElement x) const {
  if (x.size() != d_.size()) throw InputError("finite module: element has the wrong length");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod_i64(x[i], d_[i]);
  return x;
}

FqmElement FiniteQuadraticModule::add(const FqmElement& x, const FqmElement& y) const {
  FqmElement z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod_i64(x[i] + y[i], d_[i]);
  return z;
}

FqmElement FiniteQuadraticModule::negate(const FqmElement& x) const { return scale(x, -1); }

FqmElement FiniteQuadraticModule::scale(const FqmElement& x, std::int64_t c) const {
  FqmElement z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto ci = mod_i64(c, d_[i]);
    z[i] = static_cast<std::int64_t>((static_cast<__int128>(ci) * x[i]) % d_[i]);
  }
  return z;
}

std::int64_t FiniteQuadraticModule::element_order(const FqmElement& x) const {
  std::int64_t o = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::int64_t g = std::gcd(mod_i64(x[i], d_[i]), d_[i]);
    o = std::lcm(o, d_[i] / g);
  }
  return o;
}

bool FiniteQuadraticModule::is_zero(const FqmElement& x) const {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (mod_i64(x[i], d_[i]) != 0) return false;
  return true;
}

Rational FiniteQuadraticModule::b(const FqmElement& x, const FqmElement& y) const {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) s += b_(i, j) * x[i] * y[j];
  }
  return mod_rational(s, 1);
}

Rational FiniteQuadraticModule::q(const FqmElement& x) const {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    s += q_[i] * x[i] * x[i];
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[j] != 0) s += 2 * b_(i, j) * x[i] * x[j];
  }
  return mod_rational(s, q_modulus_);
}

std::uint64_t FiniteQuadraticModule::index(const FqmElement& x) const {
  std::uint64_t idx = 0;
  for (std::size_t i = x.size(); i-- > 0;) idx = idx * static_cast<std::uint64_t>(d_[i]) + mod_i64(x[i], d_[i]);
  return idx;
}

FqmElement FiniteQuadraticModule::element(std::uint64_t idx) const {
  FqmElement x(d_.size());
  for (std::size_t i = 0; i < d_.size(); ++i) {
    x[i] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(d_[i]));
    idx /= static_cast<std::uint64_t>(d_[i]);
  }
  return x;
}

std::vector<FqmElement> FiniteQuadraticModule::elements(std::uint64_t limit) const {
  const Integer total = order();
  if (total > limit) throw ResourceLimit("finite module has more than " + std::to_string(limit) + " elements");
  const auto n = total.get_ui();
  std::vector<FqmElement> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(element(i));
  return out;
}

RatVector FiniteQuadraticModule::lift(const FqmElement& x) const {
  if (!lifted_) throw InputError("finite module has no lattice lifts");
  RatVector v(lifts_.cols());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0)
      for (std::size_t c = 0; c < v.size(); ++c) v[c] += lifts_(i, c) * x[i];
  return v;
}

FqmElement FiniteQuadraticModule::coordinates_of(std::span<const Rational> v) const {
  if (!lifted_) throw InputError("finite module has no lattice lifts");
  if (v.size() != coordinate_.rows()) throw InputError("finite module: vector has the wrong length");
  FqmElement x(d_.size());
  for (std::size_t j = 0; j < d_.size(); ++j) {
    Rational s = 0;
    for (std::size_t c = 0; c < v.size(); ++c) s += v[c] * coordinate_(c, j);
    if (s.get_den() != 1) throw InputError("vector does not lie in the lift lattice");
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), s.get_num_mpz_t(), static_cast<unsigned long>(d_[j]));
    x[j] = r.get_si();
  }
  return x;
}

std::pair<bool, std::size_t> is_p_elementary(const FiniteQuadraticModule& f, const Integer& p) {
  for (const auto& d : f.orders())
    if (d != p) return {false, 0};
  return {true, f.num_generators()};
}

// ---------------------------------------------------------------------------
// maps

FqmElement FqmMap::apply(const FiniteQuadraticModule& target, const FqmElement& x) const {
  FqmElement y = target.zero();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    y = target.add(y, target.scale(images[i], x[i]));
  }
  return y;
}

IntMatrix FqmMap::matrix() const {
  const std::size_t cols = images.empty() ? 0 : images[0].size();
  IntMatrix m(images.size(), cols);
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(images[i][j]);
  return m;
}

FqmMap identity_map(const FiniteQuadraticModule& f) {
  FqmMap m;
  for (std::size_t i = 0; i < f.num_generators(); ++i) m.images.push_back(f.generator(i));
  return m;
}

FqmMap compose(const FiniteQuadraticModule& target, const FqmMap& a, const FqmMap& b) {
  FqmMap out;
  for (const auto& y : a.images) out.images.push_back(b.apply(target, y));
  return out;
}

bool is_isometry(const FiniteQuadraticModule& f, const FqmMap& m) {
  const std::size_t k = f.num_generators();
  if (m.images.size() != k) return false;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& y = m.images[i];
    if (y.size() != k || f.reduce(y) != y) return false;
    if (f.orders()[i] % f.element_order(y) != 0) return false;
    if (f.q(y) != f.q_generators()[i]) return false;
    for (std::size_t j = 0; j < k; ++j)
      if (f.b(y, m.images[j]) != f.b_matrix()(i, j)) return false;
  }
  return generated_subgroup(f, m.images, std::max<std::uint64_t>(1 << 16, f.order().get_ui())).order() ==
         f.order();
}

FqmMap induced_map(const FiniteQuadraticModule& f, const IntMatrix& s) {
  if (!f.has_lifts()) throw InputError("induced map needs a module with lattice lifts");
  if (!preserves_gram(s, f.source_gram())) throw InputError("induced map: matrix is not an isometry");
  const RatMatrix sr = to_rational(s);
  FqmMap m;
  for (std::size_t i = 0; i < f.num_generators(); ++i)
    m.images.push_back(f.coordinates_of(mul(f.lifts().row(i), sr)));
  return m;
}

// ---------------------------------------------------------------------------
// subgroups

bool FqmSubgroup::contains(const FiniteQuadraticModule& f, const FqmElement& x) const {
  return std::binary_search(elements.begin(), elements.end(), f.reduce(x),
                            [&](const FqmElement& a, const FqmElement& b) { return f.index(a) < f.index(b); });
}

FqmSubgroup generated_subgroup(const FiniteQuadraticModule& f, const std::vector<FqmElement>& gens,
                               std::uint64_t limit) {
  if (f.order() > limit) throw ResourceLimit("finite module too large for subgroup enumeration");
  const auto total = f.order().get_ui();
  std::vector<char> seen(total, 0);
  std::vector<FqmElement> queue{f.zero()};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const auto& g : gens) {
      auto y = f.add(queue[head], g);
      const auto idx = f.index(y);
      if (!seen[idx]) {
        seen[idx] = 1;
        queue.push_back(std::move(y));
      }
    }
  FqmSubgroup s;
  s.generators = gens;
  for (std::uint64_t i = 0; i < total; ++i)
    if (seen[i]) s.elements.push_back(f.element(i));
  return s;
}

FqmSubgroup integral_value_subgroup(const FiniteQuadraticModule& f, std::uint64_t limit) {
  const auto all = f.elements(limit);
  std::vector<FqmElement> members;
  for (const auto& x : all)
    if (f.q(x).get_den() == 1) members.push_back(x);
  // greedy generators in index order
  std::vector<FqmElement> gens;
  FqmSubgroup span = generated_subgroup(f, gens, limit);
  for (const auto& x : members) {
    if (span.contains(f, x)) continue;
    gens.push_back(x);
    span = generated_subgroup(f, gens, limit);
  }
  if (span.elements.size() != members.size())
    throw Error("integral-valued elements do not form a subgroup");
  return span;
}

// ---------------------------------------------------------------------------
// anti-isometry

AntiIsometry natural_anti_isometry(const Lattice& l, const Sublattice& m) {
  if (!is_unimodular(l)) throw InputError("anti-isometry: ambient lattice is not unimodular");
  if (m.basis.cols() != l.rank()) throw InputError("anti-isometry: sublattice basis has the wrong width");
  if (!sublattice_index_and_primitivity(l, m).primitive)
    throw InputError("anti-isometry: sublattice is not primitive");

  AntiIsometry out;
  out.m = Sublattice{l, m.basis};
  out.n = orthogonal_complement(l, m);
  const Lattice lm = out.m.induced("M");
  const Lattice ln = out.n.induced("N");
  out.am = FiniteQuadraticModule::discriminant(lm);
  out.an = FiniteQuadraticModule::discriminant(ln);

  const std::size_t n = l.rank();
  const std::size_t r = m.basis.rows();
  const IntMatrix gbt = l.gram() * m.basis.transpose();  // n x r
  const auto snf = smith_normal_form(gbt);
  const IntMatrix gct = l.gram() * out.n.basis.transpose();  // n x s
  const RatMatrix ln_inv = ln.rank() > 0 ? inverse(to_rational(ln.gram())) : RatMatrix(0, 0);

  out.glue_lifts = IntMatrix(0, n);
  for (std::size_t i = 0; i < out.am.num_generators(); ++i) {
    // functional of the generator lift on the basis of M
    const RatVector a = out.am.lifts().row(i);
    const auto f = to_integer(mul(a, to_rational(lm.gram())));
    if (!f) throw Error("anti-isometry: generator lift is not a dual vector");
    const IntVector fv = mul(*f, snf.V);
    IntVector y(n);
    for (std::size_t j = 0; j < r; ++j) {
      const Integer& d = snf.D(j, j);
      if (d == 0 || fv[j] % d != 0) throw InputError("anti-isometry: sublattice is not primitive in L");
      y[j] = fv[j] / d;
    }
    const IntVector x = mul(y, snf.U);
    out.glue_lifts.append_row(x);
    const RatVector w = mul(to_rational(mul(x, gct)), ln_inv);
    out.phi.images.push_back(out.an.coordinates_of(w));
  }

  // verification: bijective anti-isometry
  const int modulus = is_even(l) ? 2 : 1;
  if (out.am.order() != out.an.order()) throw Error("anti-isometry: discriminant orders differ");
  for (std::size_t i = 0; i < out.am.num_generators(); ++i) {
    const auto& y = out.phi.images[i];
    if (out.am.orders()[i] % out.an.element_order(y) != 0) throw Error("anti-isometry: map not well defined");
    Rational s = out.an.q(y) + out.am.q(out.am.generator(i));
    if (mod_rational(s, modulus) != 0) throw Error("anti-isometry: q_N(phi) != -q_M");
    for (std::size_t j = 0; j < out.am.num_generators(); ++j) {
      Rational t = out.an.b(y, out.phi.images[j]) + out.am.b_matrix()(i, j);
      if (mod_rational(t, 1) != 0) throw Error("anti-isometry: b_N(phi) != -b_M");
    }
  }
  if (out.an.order() <= (1 << 20) &&
      generated_subgroup(out.an, out.phi.images, 1 << 20).order() != out.an.order())
    throw Error("anti-isometry: map is not surjective");
  return out;
}

}  // namespace latkit

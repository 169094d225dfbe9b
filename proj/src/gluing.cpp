#include "latkit/gluing.hpp"

#include "latkit/errors.hpp"

namespace latkit {

namespace {

bool integral_mod(const Rational& r, long m) {
  if (r.get_den() != 1) return false;
  return r.get_num() % m == 0;
}

IntMatrix stack(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(0, a.cols() ? a.cols() : b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) out.append_row(a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) out.append_row(b.row(i));
  return out;
}

}  // namespace

GlueData glue_data(const Lattice& l, const Sublattice& m) {
  GlueData g{l, natural_anti_isometry(l, m), {}, {}, 1};
  g.m_lattice = g.anti.m.induced("M");
  g.n_lattice = g.anti.n.induced("N");

  // |L / (M + N)| = index of the stacked basis
  const IntMatrix w = stack(g.anti.m.basis, g.anti.n.basis);
  g.glue_order = abs(det_exact(w));
  if (g.glue_order * g.glue_order != g.anti.am.order() * g.anti.an.order())
    throw Error("glue: |H|^2 != |A_M| |A_N|");

  // isotropy of the graph {(a, phi(a))}
  const int modulus = is_even(l) ? 2 : 1;
  const auto& am = g.anti.am;
  const auto& an = g.anti.an;
  for (std::size_t i = 0; i < am.num_generators(); ++i) {
    const auto gi = am.generator(i);
    if (!integral_mod(am.q(gi) + an.q(g.anti.phi.images[i]), modulus)) throw Error("glue: graph is not isotropic");
  }
  return g;
}

bool glue_compatible(const GlueData& g, const IntMatrix& s_m, const IntMatrix& s_n) {
  const auto& am = g.anti.am;
  const auto& an = g.anti.an;
  const FqmMap bar_m = induced_map(am, s_m);
  const FqmMap bar_n = induced_map(an, s_n);
  // phi(s_m(a)) == s_n(phi(a)) on generators
  for (std::size_t i = 0; i < am.num_generators(); ++i) {
    const auto lhs = g.anti.phi.apply(an, bar_m.images[i]);
    const auto rhs = bar_n.apply(an, g.anti.phi.images[i]);
    if (lhs != rhs) return false;
  }
  return true;
}

IntMatrix extend_isometry(const GlueData& g, const IntMatrix& s_m, const IntMatrix& s_n) {
  if (!preserves_gram(s_m, g.m_lattice.gram())) throw InputError("extend: s_M is not an isometry of M");
  if (!preserves_gram(s_n, g.n_lattice.gram())) throw InputError("extend: s_N is not an isometry of N");
  if (!glue_compatible(g, s_m, s_n)) throw GlueMismatch("discriminant actions are incompatible with the glue map");

  // W g = [s_M B; s_N C] with W = [B; C]
  const IntMatrix w = stack(g.anti.m.basis, g.anti.n.basis);
  const IntMatrix rhs = stack(s_m * g.anti.m.basis, s_n * g.anti.n.basis);
  const RatMatrix ext = inverse(to_rational(w)) * to_rational(rhs);
  const auto integral = to_integer(ext);
  if (!integral) throw NonIntegralExtension("assembled extension is not integral");
  if (!preserves_gram(*integral, g.ambient.gram())) throw NonIntegralExtension("assembled extension is not an isometry");
  return *integral;
}

std::uint64_t extension_count_fixing_subgroup(const FiniteQuadraticModule& f, const FqmSubgroup& s,
                                              std::uint64_t limit) {
  return fqm_automorphisms_fixing(f, s.generators, limit).size();
}

Overlattice overlattice_from_glue(const Lattice& m, const Lattice& n,
                                  const std::vector<std::pair<FqmElement, FqmElement>>& glue) {
  const auto am = FiniteQuadraticModule::discriminant(m);
  const auto an = FiniteQuadraticModule::discriminant(n);
  const int modulus = (is_even(m) && is_even(n)) ? 2 : 1;
  const std::size_t r = m.rank();
  const std::size_t s = n.rank();

  std::vector<RatVector> lifts;
  for (const auto& [a, b] : glue) {
    const auto ar = am.reduce(a);
    const auto br = an.reduce(b);
    RatVector v = am.lift(ar);
    const RatVector w = an.lift(br);
    v.insert(v.end(), w.begin(), w.end());
    lifts.push_back(std::move(v));
  }
  // isotropy on generators and their pairings is enough by bilinearity
  for (std::size_t i = 0; i < glue.size(); ++i) {
    const auto& [ai, bi] = glue[i];
    if (!integral_mod(am.q(am.reduce(ai)) + an.q(an.reduce(bi)), modulus))
      throw InputError("glue subgroup is not isotropic");
    for (std::size_t j = 0; j < glue.size(); ++j) {
      const auto& [aj, bj] = glue[j];
      if (!integral_mod(am.b(am.reduce(ai), am.reduce(aj)) + an.b(an.reduce(bi), an.reduce(bj)), 1))
        throw InputError("glue subgroup is not isotropic");
    }
  }

  const IntMatrix gram = direct_sum(m, n).gram();
  std::vector<Rational> all;
  for (const auto& v : lifts) all.insert(all.end(), v.begin(), v.end());
  const Integer den = all.empty() ? Integer(1) : lcm_of_denominators(all);

  IntMatrix gens(0, r + s);
  for (std::size_t i = 0; i < r + s; ++i) {
    IntVector e(r + s);
    e[i] = den;
    gens.append_row(e);
  }
  for (const auto& v : lifts) {
    IntVector row(r + s);
    for (std::size_t c = 0; c < r + s; ++c) row[c] = Rational(v[c] * den).get_num();
    gens.append_row(row);
  }
  const IntMatrix basis_scaled = row_basis(gens);
  RatMatrix basis = to_rational(basis_scaled).scaled(Rational(1) / den);
  const RatMatrix new_gram = basis * to_rational(gram) * basis.transpose();
  const auto integral = to_integer(new_gram);
  if (!integral) throw InputError("glue produces a non-integral form");
  return Overlattice{Lattice(*integral, "overlattice"), std::move(basis)};
}

}  // namespace latkit

#include "properties.hpp"

#include <map>
#include <sstream>

#include "latkit/errors.hpp"
#include "latkit/fixtures.hpp"
#include "latkit/gluing.hpp"
#include "reference/reference.hpp"
#include "support.hpp"

namespace latkit::props {

namespace {

std::string str(const IntMatrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

bool is_divisor_chain(const std::vector<Integer>& d) {
  for (std::size_t i = 1; i < d.size(); ++i)
    if (d[i] % d[i - 1] != 0) return false;
  return true;
}

IntMatrix random_matrix(std::size_t r, std::size_t c, SplitMix64& rng) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.range(-9, 9);
  // occasionally force a dependent row
  if (r >= 2 && rng.range(0, 3) == 0)
    for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 2 - m(1, j);
  return m;
}

bool integral_mod(const Rational& x, int modulus) {
  const Rational y = x / modulus;
  return y.get_den() == 1;
}

// Groups seen by the checks, recounted at the end.
std::vector<IsometryGroup>& computed_groups() {
  static std::vector<IsometryGroup> groups;
  return groups;
}

}  // namespace

PropertyResult snf_round_trip(std::size_t count, std::uint64_t seed) {
  PropertyResult res{"snf round trip"};
  SplitMix64 rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    const auto r = static_cast<std::size_t>(rng.range(1, 5));
    const auto c = static_cast<std::size_t>(rng.range(1, 5));
    const IntMatrix a = random_matrix(r, c, rng);
    const auto s = smith_normal_form(a);
    const auto diag = s.diagonal();
    ++res.instances;
    bool ok = s.U * a * s.V == s.D && abs(det_exact(s.U)) == 1 && abs(det_exact(s.V)) == 1;
    for (std::size_t i = 0; i < r && ok; ++i)
      for (std::size_t j = 0; j < c && ok; ++j) ok = i == j || s.D(i, j) == 0;
    std::vector<Integer> nonzero;
    for (const auto& x : diag)
      if (x != 0) nonzero.push_back(x);
    ok = ok && is_divisor_chain(nonzero) && nonzero == reference::elementary_divisors_by_minors(a);
    const IntMatrix p = random_unimodular(r, rng), q = random_unimodular(c, rng);
    ok = ok && smith_normal_form(p * a * q).diagonal() == diag;
    if (!ok) res.failures.push_back("snf failed on " + str(a));
  }
  return res;
}

PropertyResult anti_isometry(std::size_t count, std::uint64_t seed) {
  PropertyResult res{"anti-isometry"};
  SplitMix64 rng(seed ^ 0xa5a5);
  const std::vector<Lattice> ambients{
      make_standard("Z3"),     make_standard("I_{1,3}"), make_standard("I_{1,4}"),
      make_standard("I_{2,3}"), make_standard("I_{3,3}"), direct_sum(make_standard("U"), make_standard("U")),
      make_standard("Z6"),     direct_sum(make_standard("U"), make_standard("I_{1,3}")),
  };
  std::size_t attempts = 0;
  while (res.instances < count && attempts++ < 20 * count) {
    const Lattice& l = ambients[static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(ambients.size()) - 1))];
    const auto rk = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(l.rank()) - 1));
    const auto m = random_primitive_sublattice(l, rk, rng);
    if (!m) continue;
    const AntiIsometry a = natural_anti_isometry(l, *m);
    if (a.am.order() == 1) continue;
    ++res.instances;
    const int modulus = is_even(l) ? 2 : 1;
    bool ok = a.am.order() == a.an.order();
    const std::size_t k = a.am.num_generators();
    std::vector<FqmElement> images;
    for (std::size_t i = 0; i < k; ++i) {
      const auto gi = a.am.generator(i);
      const auto pi = a.phi.apply(a.an, gi);
      images.push_back(pi);
      ok = ok && integral_mod(a.an.q(pi) + a.am.q(gi), modulus);
      for (std::size_t j = 0; j < k; ++j) {
        const auto gj = a.am.generator(j);
        ok = ok && integral_mod(a.an.b(pi, a.phi.apply(a.an, gj)) + a.am.b(gi, gj), 1);
      }
    }
    ok = ok && generated_subgroup(a.an, images).order() == a.an.order();
    if (!ok) res.failures.push_back("anti-isometry failed for M = " + str(m->basis) + " in " + str(l.gram()));
  }
  if (res.instances < count) res.failures.push_back("too few nontrivial sublattices");
  return res;
}

PropertyResult glue_round_trip(std::size_t count, std::uint64_t seed) {
  PropertyResult res{"glue round trip"};
  SplitMix64 rng(seed ^ 0x5a5a);
  std::size_t compatible = 0, mismatches = 0, attempts = 0;
  while (compatible < count && attempts++ < 40 * count) {
    const auto n = static_cast<std::size_t>(rng.range(3, 5));
    const Lattice l = make_standard("Z" + std::to_string(n));
    const auto rk = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(n) - 1));
    const auto m = random_primitive_sublattice(l, rk, rng);
    if (!m) continue;
    const GlueData g = glue_data(l, *m);
    const auto gm = automorphism_group(g.m_lattice);
    const auto gn = automorphism_group(g.n_lattice);
    computed_groups().push_back(gm);
    computed_groups().push_back(gn);
    for (int trial = 0; trial < 8; ++trial) {
      const IntMatrix sm = random_word(gm.generators(), gm.dim(), rng, 1 + static_cast<std::size_t>(rng.range(0, 9)));
      const IntMatrix sn = random_word(gn.generators(), gn.dim(), rng, 1 + static_cast<std::size_t>(rng.range(0, 9)));
      ++res.instances;
      if (glue_compatible(g, sm, sn)) {
        ++compatible;
        const IntMatrix e = extend_isometry(g, sm, sn);
        if (!preserves_gram(e, l.gram()) || restrict_to(g.m(), e) != sm || restrict_to(g.n(), e) != sn)
          res.failures.push_back("round trip failed for M = " + str(m->basis));
      } else {
        ++mismatches;
        try {
          extend_isometry(g, sm, sn);
          res.failures.push_back("incompatible pair extended for M = " + str(m->basis));
        } catch (const GlueMismatch&) {
        }
      }
    }
  }
  if (compatible < count) res.failures.push_back("only " + std::to_string(compatible) + " compatible pairs");
  if (mismatches == 0) res.failures.push_back("no incompatible pair was exercised");
  return res;
}

PropertyResult basis_change_invariance(std::size_t per_lattice, std::uint64_t seed) {
  PropertyResult res{"basis change invariance"};
  SplitMix64 rng(seed ^ 0x3c3c);
  for (const char* name : {"A2", "A3", "D4", "E6", "E7"}) {
    const Lattice l = make_standard(name);
    const auto base = automorphism_group(l);
    computed_groups().push_back(base);
    for (std::size_t k = 0; k < per_lattice; ++k) {
      const Lattice moved = change_basis(l, random_unimodular(l.rank(), rng));
      const auto g = automorphism_group(moved);
      ++res.instances;
      if (g.order() != base.order()) res.failures.push_back(std::string("order changed for ") + name);
      // the E7 group is recounted once through the corpus copy
      if (g.order() <= 1'000'000) computed_groups().push_back(g);
    }
  }
  return res;
}

PropertyResult orbit_stabilizer_recount(std::uint64_t seed) {
  PropertyResult res{"orbit-stabilizer recount"};
  SplitMix64 rng(seed ^ 0x9696);
  auto& groups = computed_groups();
  for (const IsometryGroup& g : groups) {
    const std::uint64_t order = g.order().get_ui();
    const ElementTable table(g.gram(), g.generators(), order + 1);
    ++res.instances;
    if (table.size() != order) {
      res.failures.push_back("element count differs from order " + g.order().get_str());
      continue;
    }
    // a random minimal vector and a random basis vector
    const Lattice l(g.gram());
    const auto sv = short_vectors(l, minimum_norm(l));
    std::vector<IntVector> probes{test_support::to_int_vector(sv[static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(sv.size()) - 1))].coords)};
    IntVector e(g.dim(), Integer(0));
    e[static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(g.dim()) - 1))] = 1;
    probes.push_back(e);
    for (const auto& v : probes) {
      std::vector<std::int64_t> raw;
      for (const auto& x : v) raw.push_back(x.get_si());
      const auto orb = orbit(g, v, order + 1);
      const std::size_t fixing = test_support::count_fixing(table, raw);
      if (orb.size() * fixing != order) res.failures.push_back("orbit-stabilizer failed for order " + g.order().get_str());
    }
  }
  groups.clear();
  return res;
}

}  // namespace latkit::props

#include "latkit/symplectic_f2.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "latkit/errors.hpp"

namespace latkit {

namespace {

void check_genus(int genus) {
  if (genus < 1 || genus > kMaxRefinementGenus) throw InputError("refinement genus must be between 1 and 3");
}

std::uint32_t space_size(int genus) { return 1U << (2 * genus); }

std::uint32_t transvect(int genus, std::uint32_t x, std::uint32_t v) {
  return symplectic_pairing_f2(genus, x, v) ? x ^ v : x;
}

std::uint64_t act(int genus, std::uint64_t table, std::uint32_t v) {
  std::uint64_t out = 0;
  for (std::uint32_t x = 0; x < space_size(genus); ++x)
    out |= ((table >> transvect(genus, x, v)) & 1U) << x;
  return out;
}

// Transvections along vectors of weight at most 2 generate Sp_{2g}(F_2).
std::vector<std::uint32_t> transvection_vectors(int genus) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 1; v < space_size(genus); ++v)
    if (std::popcount(v) <= 2) out.push_back(v);
  return out;
}

// Group elements as packed images of the 2g basis vectors (6 bits each).
using Packed = std::uint64_t;

std::uint32_t apply_packed(int genus, Packed m, std::uint32_t x) {
  std::uint32_t y = 0;
  for (int i = 0; i < 2 * genus; ++i)
    if ((x >> i) & 1U) y ^= static_cast<std::uint32_t>((m >> (6 * i)) & 63U);
  return y;
}

// Every element is determined by the images of e_1..e_g, f_1..f_g, which
// must again form a symplectic basis; enumerate those by backtracking.
std::vector<Packed> enumerate_group(int genus) {
  const int n = 2 * genus;
  std::vector<std::uint32_t> basis(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) basis[static_cast<std::size_t>(i)] = 1U << i;
  std::vector<std::uint32_t> images(static_cast<std::size_t>(n), 0);
  const std::uint32_t size = space_size(genus);
  std::vector<char> pair(size * size);
  for (std::uint32_t x = 0; x < size; ++x)
    for (std::uint32_t y = 0; y < size; ++y) pair[x * size + y] = static_cast<char>(symplectic_pairing_f2(genus, x, y));
  std::vector<Packed> out;
  const auto rec = [&](auto&& self, int level) -> void {
    if (level == n) {
      Packed m = 0;
      for (int i = 0; i < n; ++i) m |= static_cast<Packed>(images[static_cast<std::size_t>(i)]) << (6 * i);
      out.push_back(m);
      return;
    }
    const std::uint32_t target = basis[static_cast<std::size_t>(level)];
    for (std::uint32_t v = 1; v < size; ++v) {
      bool ok = true;
      for (int j = 0; j < level && ok; ++j) {
        const auto j_ = static_cast<std::size_t>(j);
        ok = pair[v * size + images[j_]] == pair[target * size + basis[j_]];
      }
      if (!ok) continue;
      images[static_cast<std::size_t>(level)] = v;
      self(self, level + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

int symplectic_pairing_f2(int genus, std::uint32_t x, std::uint32_t y) {
  const std::uint32_t low = (1U << genus) - 1;
  const auto a = std::popcount((x & low) & (y >> genus)) + std::popcount((x >> genus) & y & low);
  return a & 1;
}

QuadraticRefinementMod2 QuadraticRefinementMod2::from_basis(int genus, std::span<const int> values) {
  check_genus(genus);
  if (values.size() != static_cast<std::size_t>(2 * genus))
    throw InputError("refinement needs one value per basis vector");
  QuadraticRefinementMod2 q;
  q.genus = genus;
  for (std::uint32_t x = 1; x < space_size(genus); ++x) {
    const int low = std::countr_zero(x);
    const std::uint32_t rest = x & (x - 1);
    const std::uint32_t e = 1U << low;
    const int v = (((q.table >> rest) & 1U) + (values[static_cast<std::size_t>(low)] & 1) +
                   symplectic_pairing_f2(genus, rest, e)) & 1;
    q.table |= static_cast<std::uint64_t>(v) << x;
  }
  return q;
}

QuadraticRefinementMod2 QuadraticRefinementMod2::from_table(int genus, std::uint64_t table) {
  check_genus(genus);
  QuadraticRefinementMod2 q{genus, table};
  for (std::uint32_t x = 0; x < space_size(genus); ++x)
    for (std::uint32_t y = 0; y < space_size(genus); ++y)
      if (q(x ^ y) != ((q(x) + q(y) + symplectic_pairing_f2(genus, x, y)) & 1))
        throw InputError("table violates q(u+v) = q(u) + q(v) + b(u,v)");
  return q;
}

std::vector<QuadraticRefinementMod2> all_refinements(int genus) {
  check_genus(genus);
  std::vector<QuadraticRefinementMod2> out;
  const int n = 2 * genus;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    out.push_back(QuadraticRefinementMod2::from_basis(genus, values));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.table < b.table; });
  return out;
}

ArfOrbit arf_and_orbit(const QuadraticRefinementMod2& q) {
  check_genus(q.genus);
  ArfOrbit out;
  const int ones = std::popcount(q.table & (space_size(q.genus) == 64 ? ~0ULL : ((1ULL << space_size(q.genus)) - 1)));
  out.arf = 2 * ones > static_cast<int>(space_size(q.genus)) ? 1 : 0;
  const auto gens = transvection_vectors(q.genus);
  std::unordered_set<std::uint64_t> seen{q.table};
  std::vector<std::uint64_t> queue{q.table};
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (auto v : gens) {
      const auto t = act(q.genus, queue[head], v);
      if (seen.insert(t).second) queue.push_back(t);
    }
  out.orbit_size = queue.size();
  return out;
}

std::vector<std::vector<QuadraticRefinementMod2>> refinement_orbits(int genus) {
  const auto all = all_refinements(genus);
  const auto gens = transvection_vectors(genus);
  std::unordered_set<std::uint64_t> assigned;
  std::vector<std::vector<QuadraticRefinementMod2>> out;
  for (const auto& q : all) {
    if (assigned.count(q.table)) continue;
    std::vector<std::uint64_t> queue{q.table};
    assigned.insert(q.table);
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (auto v : gens) {
        const auto t = act(genus, queue[head], v);
        if (assigned.insert(t).second) queue.push_back(t);
      }
    std::sort(queue.begin(), queue.end());
    std::vector<QuadraticRefinementMod2> orbit;
    for (auto t : queue) orbit.push_back({genus, t});
    out.push_back(std::move(orbit));
  }
  return out;
}

std::uint64_t symplectic_group_order(int genus) {
  check_genus(genus);
  return enumerate_group(genus).size();
}

std::uint64_t refinement_stabilizer_order(const QuadraticRefinementMod2& q) {
  check_genus(q.genus);
  std::uint64_t count = 0;
  for (auto m : enumerate_group(q.genus)) {
    bool fixes = true;
    for (std::uint32_t x = 0; x < space_size(q.genus) && fixes; ++x) fixes = q(apply_packed(q.genus, m, x)) == q(x);
    if (fixes) ++count;
  }
  return count;
}

}  // namespace latkit

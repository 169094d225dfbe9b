#include "latkit/fixtures.hpp"

#include "latkit/errors.hpp"

namespace latkit {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t SplitMix64::range(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % span);
}

IntMatrix random_unimodular(std::size_t n, SplitMix64& rng, std::size_t steps) {
  IntMatrix t = IntMatrix::identity(n);
  if (n == 0) return t;
  if (steps == 0) steps = 3 * n;
  for (std::size_t s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(n) - 1));
    const auto j = static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(n) - 1));
    switch (rng.range(0, 3)) {
      case 0:
        t.swap_rows(i, j);
        break;
      case 1:
        t.negate_row(i);
        break;
      default:
        if (i != j) t.add_row_multiple(i, j, Integer(rng.range(-2, 2)));
        break;
    }
  }
  return t;
}

Lattice change_basis(const Lattice& l, const IntMatrix& t) {
  return Lattice(t * l.gram() * t.transpose(), l.name());
}

std::optional<Sublattice> random_primitive_sublattice(const Lattice& l, std::size_t rank, SplitMix64& rng) {
  const std::size_t n = l.rank();
  if (rank == 0 || rank >= n) throw InputError("sublattice rank must be between 1 and rank - 1");
  for (int attempt = 0; attempt < 200; ++attempt) {
    IntMatrix rows(rank, n);
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t c = 0; c < n; ++c) rows(i, c) = rng.range(-2, 2);
    if (latkit::rank(rows) < rank) continue;
    Sublattice s{l, saturation(rows)};
    if (det_exact(s.induced_gram()) == 0) continue;
    const Sublattice perp = orthogonal_complement(l, s);
    if (det_exact(perp.induced_gram()) == 0) continue;
    return s;
  }
  return std::nullopt;
}

IntMatrix random_word(const std::vector<IntMatrix>& generators, std::size_t dim, SplitMix64& rng,
                      std::size_t length) {
  IntMatrix g = IntMatrix::identity(dim);
  if (generators.empty()) return g;
  for (std::size_t i = 0; i < length; ++i)
    g = g * generators[static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(generators.size()) - 1))];
  return g;
}

}  // namespace latkit

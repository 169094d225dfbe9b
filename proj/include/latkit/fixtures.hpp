#pragma once

// Seeded random fixtures: unimodular changes of basis and primitive
// sublattices. The generator is splitmix64 and all ranges are reduced by
// modulo, so sequences are identical across platforms and standard libraries.

#include <cstdint>
#include <optional>

#include "latkit/lattice.hpp"

namespace latkit {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform-ish integer in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

/// Product of `steps` elementary operations with multipliers in [-2, 2],
/// row swaps and sign changes.
IntMatrix random_unimodular(std::size_t n, SplitMix64& rng, std::size_t steps = 0);

/// Gram matrix T G T^T.
Lattice change_basis(const Lattice& l, const IntMatrix& t);

/// Saturation of `rank` random rows with entries in [-2, 2], retried until the
/// sublattice and its complement are nondegenerate. nullopt after 200 tries.
std::optional<Sublattice> random_primitive_sublattice(const Lattice& l, std::size_t rank, SplitMix64& rng);

/// Product of `length` generators chosen at random; the identity for an
/// empty list.
IntMatrix random_word(const std::vector<IntMatrix>& generators, std::size_t dim, SplitMix64& rng,
                      std::size_t length = 8);

}  // namespace latkit

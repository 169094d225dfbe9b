#pragma once

// Seeded randomized property checks shared by the test suite and the
// acceptance binary. Each check returns how many instances it ran and a
// description of every failure.

#include <cstdint>
#include <string>
#include <vector>

namespace latkit::props {

struct PropertyResult {
  std::string name;
  std::size_t instances = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline constexpr std::uint64_t kSeed = 0x6c61746b69747370ULL;

/// U A V = D with unimodular U, V, a divisor chain on the diagonal, agreement
/// with the minors oracle and invariance under P A Q for unimodular P, Q.
PropertyResult snf_round_trip(std::size_t count, std::uint64_t seed = kSeed);

/// q_N(phi(a)) = -q_M(a) and b_N(phi a, phi b) = -b_M(a, b) for the natural
/// anti-isometry of random primitive sublattices of unimodular lattices.
PropertyResult anti_isometry(std::size_t count, std::uint64_t seed = kSeed);

/// Random isometry pairs of definite M and N in Z^n: compatible pairs extend
/// to isometries of Z^n restricting back to the pair, incompatible pairs
/// raise GlueMismatch. `count` compatible pairs are required.
PropertyResult glue_round_trip(std::size_t count, std::uint64_t seed = kSeed);

/// |Aut| is unchanged under `per_lattice` random changes of basis of A2, A3,
/// D4, E6 and E7.
PropertyResult basis_change_invariance(std::size_t per_lattice, std::uint64_t seed = kSeed);

/// For every group computed by the suites above and the corpus groups: the
/// enumerated element count equals the order, and |orbit(v)| times the
/// number of enumerated elements fixing v equals the order.
PropertyResult orbit_stabilizer_recount(std::uint64_t seed = kSeed);

}  // namespace latkit::props

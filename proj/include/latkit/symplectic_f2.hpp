#pragma once

// Quadratic refinements of the standard symplectic form on F_2^{2g}, g <= 3.
// A vector is a bitmask: bit i is e_{i+1} and bit g+i is f_{i+1}, with
// b(e_i, f_i) = 1 and all other basis pairings zero.

#include <cstdint>
#include <span>
#include <vector>

namespace latkit {

constexpr int kMaxRefinementGenus = 3;

int symplectic_pairing_f2(int genus, std::uint32_t x, std::uint32_t y);

/// q : F_2^{2g} -> F_2 with q(u+v) = q(u) + q(v) + b(u,v), stored as a
/// 2^{2g}-bit value table.
struct QuadraticRefinementMod2 {
  int genus = 1;
  std::uint64_t table = 0;

  /// From the values on e_1..e_g, f_1..f_g. Throws InputError for g out of range.
  static QuadraticRefinementMod2 from_basis(int genus, std::span<const int> values);
  /// From a full value table; throws InputError if the refinement identity fails.
  static QuadraticRefinementMod2 from_table(int genus, std::uint64_t table);

  int operator()(std::uint32_t x) const { return static_cast<int>((table >> x) & 1U); }
  bool operator==(const QuadraticRefinementMod2&) const = default;
};

/// All 2^{2g} refinements, sorted by table.
std::vector<QuadraticRefinementMod2> all_refinements(int genus);

struct ArfOrbit {
  int arf = 0;
  std::uint64_t orbit_size = 0;
};

/// Arf invariant (the majority value of q) and the size of the orbit of q
/// under Sp_{2g}(F_2).
ArfOrbit arf_and_orbit(const QuadraticRefinementMod2& q);

/// Orbits of Sp_{2g}(F_2) on refinements, each sorted, ordered by their
/// smallest table.
std::vector<std::vector<QuadraticRefinementMod2>> refinement_orbits(int genus);

/// |Sp_{2g}(F_2)|, counted as the number of symplectic bases.
std::uint64_t symplectic_group_order(int genus);

/// Stabilizer order of q in Sp_{2g}(F_2), by element enumeration.
std::uint64_t refinement_stabilizer_order(const QuadraticRefinementMod2& q);

}  // namespace latkit

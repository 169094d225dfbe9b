#pragma once

// Glue data for a primitive sublattice M of a unimodular lattice L and its
// complement N = M-perp, extension of compatible isometry pairs, and
// overlattices from isotropic glue.

#include <vector>

#include "latkit/finite_quadratic.hpp"

namespace latkit {

struct GlueData {
  Lattice ambient;
  AntiIsometry anti;  // M, N, A_M, A_N, phi and glue lifts
  Lattice m_lattice;
  Lattice n_lattice;
  /// |L / (M + N)|
  Integer glue_order;

  const Sublattice& m() const { return anti.m; }
  const Sublattice& n() const { return anti.n; }
};

/// Throws InputError for non-unimodular L or imprimitive M; verifies the glue
/// invariants (isotropy, |H|^2 = |A_M||A_N|, q_N(phi) = -q_M) before returning.
GlueData glue_data(const Lattice& l, const Sublattice& m);

/// True iff phi o sM = sN o phi on discriminant generators.
bool glue_compatible(const GlueData& g, const IntMatrix& s_m, const IntMatrix& s_n);

/// The isometry of L restricting to s_m on M and s_n on N (both in sublattice
/// coordinates). Throws GlueMismatch when the discriminant actions are
/// incompatible with phi and NonIntegralExtension if the assembled map fails
/// to be integral.
IntMatrix extend_isometry(const GlueData& g, const IntMatrix& s_m, const IntMatrix& s_n);

/// Number of isometries of (A, q) that are the identity on the subgroup.
std::uint64_t extension_count_fixing_subgroup(const FiniteQuadraticModule& f, const FqmSubgroup& s,
                                              std::uint64_t limit = 1 << 16);

struct Overlattice {
  Lattice lattice;
  /// Rows: basis of the overlattice in coordinates of M + N.
  RatMatrix basis;
};

/// Lattice generated by M + N and lifts of the glue elements (a_i, b_i).
/// Throws InputError when the glue is not isotropic.
Overlattice overlattice_from_glue(const Lattice& m, const Lattice& n,
                                  const std::vector<std::pair<FqmElement, FqmElement>>& glue);

}  // namespace latkit

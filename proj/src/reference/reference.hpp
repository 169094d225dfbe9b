#pragma once

// Serial brute-force implementations used as oracles in the tests and as the
// baseline in the benchmark. They share no search code with the library.

#include <cstdint>
#include <vector>

#include "latkit/exact_linalg.hpp"
#include "latkit/finite_quadratic.hpp"
#include "latkit/isometry.hpp"
#include "latkit/lattice.hpp"

namespace latkit::reference {

/// Box enumeration with |x_i| <= sqrt(bound * (G^-1)_ii); same output
/// convention as latkit::short_vectors.
std::vector<ShortVector> box_short_vectors(const Lattice& l, const Integer& bound);

/// Counts basis-image assignments with matching Gram matrix among vectors of
/// the right norm, with no pruning beyond inner products.
Integer automorphism_count(const Lattice& l);

/// Counts generator-image tuples that define isometries: images run over all
/// elements with matching order, q value and pairings with earlier images.
std::uint64_t fqm_automorphism_count(const FiniteQuadraticModule& f);

/// e_k = d_k / d_{k-1} with d_k the gcd of all k x k minors (Laplace
/// expansion). Nonzero divisors only; intended for matrices up to 5 x 5.
std::vector<Integer> elementary_divisors_by_minors(const IntMatrix& a);

/// Inertia from the Faddeev-LeVerrier characteristic polynomial using
/// Descartes' rule of signs, which is exact for real-rooted polynomials.
Inertia inertia_by_charpoly(const IntMatrix& g);

/// Coefficient of t^k in ((1 - t^{d-1}) / (1 - t))^{n+2} via the
/// inclusion-exclusion closed form.
Integer hilbert_coefficient_closed_form(int n, int d, long k);

/// Primitive middle Betti number of a smooth degree-d hypersurface in
/// P^{n+1}, from chi = ((1 - d)^{n+2} - 1) / d + n + 2.
Integer primitive_middle_betti(int n, int d);

/// |Sp_2g(F_2)| as the size of the group generated by all transvections.
std::uint64_t symplectic_order_by_transvections(int genus);

}  // namespace latkit::reference

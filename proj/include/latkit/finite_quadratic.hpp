#pragma once

// Finite quadratic modules (A, b, q): discriminant groups of lattices and the
// half quotients (1/2 P)/P, with induced maps and automorphism groups.
//
// A is stored as Z/d_1 + ... + Z/d_k (d_i >= 2, d_1 | d_2 | ...). Elements are
// coordinate vectors with 0 <= x_i < d_i. b takes values in Q/Z and q in
// Q/qZ where the modulus is 2 for modules coming from even lattices and 1
// otherwise. When the module comes from a lattice the generator lifts are
// kept as explicit rational vectors so that maps can be computed by transport.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latkit/isometry.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

using FqmElement = std::vector<std::int64_t>;

class FiniteQuadraticModule {
 public:
  FiniteQuadraticModule() = default;

  /// Abstract module from its values on generators. Throws InputError when
  /// the data is inconsistent (orders, denominators, symmetry, q versus b).
  static FiniteQuadraticModule from_values(std::vector<Integer> orders, RatMatrix b, std::vector<Rational> q,
                                           int q_modulus);
  /// Hom(L, Z)/L with b(x,y) = x.y mod 1, q(x) = x.x mod 2 (mod 1 for odd L).
  static FiniteQuadraticModule discriminant(const Lattice& l);
  /// (1/2 L)/L with b(x,y) = 2 x.y mod 1 and q(x) = 2 x.x mod 2 (mod 1 for odd L).
  static FiniteQuadraticModule half_quotient(const Lattice& l);

  std::size_t num_generators() const { return orders_.size(); }
  const std::vector<Integer>& orders() const { return orders_; }
  Integer order() const;
  int q_modulus() const { return q_modulus_; }
  const RatMatrix& b_matrix() const { return b_; }
  const std::vector<Rational>& q_generators() const { return q_; }

  FqmElement zero() const { return FqmElement(orders_.size(), 0); }
  FqmElement generator(std::size_t i) const;
  FqmElement reduce(FqmElement x) const;
  FqmElement add(const FqmElement& x, const FqmElement& y) const;
  FqmElement negate(const FqmElement& x) const;
  FqmElement scale(const FqmElement& x, std::int64_t c) const;
  std::int64_t element_order(const FqmElement& x) const;
  bool is_zero(const FqmElement& x) const;

  /// Values in [0, 1) and [0, q_modulus) respectively.
  Rational b(const FqmElement& x, const FqmElement& y) const;
  Rational q(const FqmElement& x) const;

  /// Mixed-radix index in [0, |A|); requires |A| to fit in 64 bits.
  std::uint64_t index(const FqmElement& x) const;
  FqmElement element(std::uint64_t idx) const;
  /// All elements in index order; throws ResourceLimit above `limit`.
  std::vector<FqmElement> elements(std::uint64_t limit) const;

  /// True when the module carries generator lifts in lattice coordinates.
  bool has_lifts() const { return lifted_; }
  const IntMatrix& source_gram() const { return source_gram_; }
  const RatMatrix& lifts() const { return lifts_; }
  RatVector lift(const FqmElement& x) const;
  /// Class of a rational vector of the lift lattice. Throws InputError if the
  /// vector does not lie in it.
  FqmElement coordinates_of(std::span<const Rational> v) const;

 private:
  void validate() const;

  std::vector<Integer> orders_;
  std::vector<std::int64_t> d_;
  RatMatrix b_;
  std::vector<Rational> q_;
  int q_modulus_ = 2;

  bool lifted_ = false;
  IntMatrix source_gram_;
  RatMatrix lifts_;       // k x n, row i lifts generator i
  RatMatrix coordinate_;  // n x k, class coordinates are v * coordinate_ mod d
};

/// (true, l) iff A is isomorphic to (Z/p)^l.
std::pair<bool, std::size_t> is_p_elementary(const FiniteQuadraticModule& f, const Integer& p);

/// Homomorphism between finite modules given by the images of the source
/// generators (row i of `images` is the image of generator i).
struct FqmMap {
  std::vector<FqmElement> images;

  FqmElement apply(const FiniteQuadraticModule& target, const FqmElement& x) const;
  IntMatrix matrix() const;
  bool operator==(const FqmMap&) const = default;
  auto operator<=>(const FqmMap&) const = default;
};

FqmMap identity_map(const FiniteQuadraticModule& f);
/// a then b
FqmMap compose(const FiniteQuadraticModule& target, const FqmMap& a, const FqmMap& b);
/// Checks that the map is well defined, preserves b and q, and is bijective.
bool is_isometry(const FiniteQuadraticModule& f, const FqmMap& m);

/// Action of a lattice isometry s (row convention) on a module built from that
/// lattice. Throws InputError if s does not preserve the Gram matrix.
FqmMap induced_map(const FiniteQuadraticModule& f, const IntMatrix& s);

struct FqmSubgroup {
  std::vector<FqmElement> generators;
  std::vector<FqmElement> elements;  // sorted by index
  Integer order() const { return Integer(static_cast<unsigned long>(elements.size())); }
  bool contains(const FiniteQuadraticModule& f, const FqmElement& x) const;
};

FqmSubgroup generated_subgroup(const FiniteQuadraticModule& f, const std::vector<FqmElement>& gens,
                               std::uint64_t limit = 1 << 16);

/// {x : q(x) is an integer}. Throws Error if that set is not a subgroup.
FqmSubgroup integral_value_subgroup(const FiniteQuadraticModule& f, std::uint64_t limit = 1 << 16);

struct FqmGroup {
  std::vector<FqmMap> generators;  // canonically sorted
  Integer order = 1;
};

/// Full isometry group of (A, b, q); |A| above `limit` raises ResourceLimit.
FqmGroup fqm_automorphism_group(const FiniteQuadraticModule& f, std::uint64_t limit = 1 << 16,
                                bool parallel = true);

/// Every isometry restricting to the identity on `fixed` (generators of a
/// subgroup), in lexicographic order of generator images. More than
/// `max_count` results raise ResourceLimit.
std::vector<FqmMap> fqm_automorphisms_fixing(const FiniteQuadraticModule& f, const std::vector<FqmElement>& fixed,
                                             std::uint64_t limit = 1 << 16, std::uint64_t max_count = 1 << 20);

/// Order of the group generated by module isometries.
Integer closure_order(const FiniteQuadraticModule& f, const std::vector<FqmMap>& gens,
                      std::uint64_t limit = 50'000'000);

/// Natural anti-isometry between the discriminant modules of a primitive
/// sublattice M of a unimodular L and its complement N: phi(a) is the class
/// with a + phi(a) in L.
struct AntiIsometry {
  Sublattice m;
  Sublattice n;
  FiniteQuadraticModule am;
  FiniteQuadraticModule an;
  FqmMap phi;
  /// Row i: a vector of L (ambient coordinates) projecting to generator i of A_M.
  IntMatrix glue_lifts;
};

AntiIsometry natural_anti_isometry(const Lattice& l, const Sublattice& m);

}  // namespace latkit

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "latkit/exact_linalg.hpp"

namespace latkit {

/// A nondegenerate integral lattice given by its Gram matrix in a fixed basis.
/// Vectors are row vectors of coordinates in that basis.
class Lattice {
 public:
  Lattice() = default;
  /// Throws InputError unless `gram` is square, symmetric and nondegenerate.
  explicit Lattice(IntMatrix gram, std::string name = {});

  const IntMatrix& gram() const { return gram_; }
  const std::string& name() const { return name_; }
  std::size_t rank() const { return gram_.rows(); }
  const Integer& det() const { return det_; }

  Integer inner(std::span<const Integer> a, std::span<const Integer> b) const {
    return bilinear(a, gram_, b);
  }
  Integer norm(std::span<const Integer> a) const { return bilinear(a, gram_, a); }

  bool operator==(const Lattice& other) const { return gram_ == other.gram_; }

 private:
  IntMatrix gram_;
  std::string name_;
  Integer det_ = 1;
};

/// Sublattice spanned by the rows of `basis` (coordinates in the ambient basis).
struct Sublattice {
  Lattice ambient;
  IntMatrix basis;

  std::size_t rank() const { return basis.rows(); }
  IntMatrix induced_gram() const;
  /// Throws InputError if the induced form is degenerate.
  Lattice induced(std::string name = {}) const;
};

/// Standard lattices: A<n>, D<n>, E6, E7, E8, U, I_{p,q} (also I<p>,<q>), Z<n>,
/// diag(a,b,...). Underscores and braces are optional: "A_2", "A2", "I_{1,7}", "I1,7".
Lattice make_standard(std::string_view name);

Lattice twist(const Lattice& l, const Integer& n);
Lattice direct_sum(const Lattice& a, const Lattice& b);

/// (n_plus, n_minus)
std::pair<std::size_t, std::size_t> signature(const Lattice& l);
bool is_definite(const Lattice& l);
bool is_positive_definite(const Lattice& l);

struct ParityClass {
  bool even = false;
  bool unimodular = false;
  bool operator==(const ParityClass&) const = default;
};
ParityClass classify_parity_unimodular(const Lattice& l);
inline bool is_even(const Lattice& l) { return classify_parity_unimodular(l).even; }
inline bool is_unimodular(const Lattice& l) { return classify_parity_unimodular(l).unimodular; }

/// {x in L : b(x, s) = 0 for all s in S}; always primitive.
Sublattice orthogonal_complement(const Lattice& l, const Sublattice& s);
Sublattice orthogonal_complement(const Lattice& l, const IntMatrix& basis);

struct SublatticeIndex {
  /// Present only when the sublattice has full rank.
  std::optional<Integer> index;
  bool primitive = false;
  std::vector<Integer> elementary_divisors;
};
SublatticeIndex sublattice_index_and_primitivity(const Lattice& l, const Sublattice& s);

/// Primitive closure of a sublattice.
Sublattice saturate(const Sublattice& s);

/// Matrix of an ambient isometry `g` restricted to a g-stable sublattice, in
/// sublattice coordinates. Throws InputError if the sublattice is not stable.
IntMatrix restrict_to(const Sublattice& s, const IntMatrix& g);

/// g * G * g^T == G
bool preserves_gram(const IntMatrix& g, const IntMatrix& gram);

}  // namespace latkit

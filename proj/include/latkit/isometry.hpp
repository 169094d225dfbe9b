#pragma once

// Automorphism groups and isometry testing for definite lattices.
//
// The search follows the classical basis-image backtracking: images of a
// short basis are chosen among short vectors of matching norm, pruned by
// inner products with earlier images and by a per-vector fingerprint (the
// histogram of inner products against all minimal vectors). Group orders come
// from a stabilizer chain along the basis, built with the orbit trick so that
// only one witness per orbit point is searched for.
//
// Negative definite Grams are negated internally; returned matrices act on
// the caller's coordinates and preserve the caller's Gram.

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "latkit/lattice.hpp"

namespace latkit {

struct ShortVector {
  std::vector<std::int64_t> coords;
  /// Norm in the lattice's own sign (negative for negative definite input).
  std::int64_t norm = 0;
  bool operator==(const ShortVector&) const = default;
};

/// All nonzero v with |v.v| <= bound, one of each pair +-v (first nonzero
/// coordinate positive), sorted lexicographically by coordinates.
/// Throws InputError for indefinite lattices.
std::vector<ShortVector> short_vectors(const Lattice& l, const Integer& bound);

/// Convenience: the minimal nonzero |norm|.
std::int64_t minimum_norm(const Lattice& l);

struct SearchOptions {
  /// Backtracking node budget; exceeding it raises ResourceLimit.
  std::uint64_t max_nodes = 4'000'000'000ULL;
  /// Use the OpenMP batch evaluation of candidate witnesses.
  bool parallel = true;
};

/// Isometry matrices act on row vectors: x -> x * g, so g * G * g^T = G and
/// the product a * b means "apply a, then b".
class IsometryGroup {
 public:
  IsometryGroup() = default;
  IsometryGroup(IntMatrix gram, std::vector<IntMatrix> generators, Integer order);

  const IntMatrix& gram() const { return gram_; }
  std::size_t dim() const { return gram_.rows(); }
  const std::vector<IntMatrix>& generators() const { return generators_; }
  const Integer& order() const { return order_; }

 private:
  IntMatrix gram_;
  std::vector<IntMatrix> generators_;
  Integer order_ = 1;
};

/// Explicit element list of a finite matrix group, in breadth-first order
/// from the identity (right multiplication by generators). Entries are stored
/// as 32-bit integers.
class ElementTable {
 public:
  ElementTable() = default;
  ElementTable(const IntMatrix& gram, const std::vector<IntMatrix>& generators, std::uint64_t limit);

  std::size_t dim() const { return n_; }
  std::size_t size() const { return count_; }
  IntMatrix element(std::size_t i) const;
  std::span<const std::int32_t> raw(std::size_t i) const {
    return {data_.data() + i * n_ * n_, n_ * n_};
  }
  /// Index of `m`, or nullopt if it is not in the group.
  std::optional<std::size_t> find(const IntMatrix& m) const;
  std::optional<std::size_t> find_raw(std::span<const std::int32_t> m) const;
  bool contains(const IntMatrix& m) const { return find(m).has_value(); }

 private:
  struct Hash {
    const ElementTable* table;
    std::size_t operator()(std::uint32_t idx) const;
  };
  struct Eq {
    const ElementTable* table;
    bool operator()(std::uint32_t a, std::uint32_t b) const;
  };
  std::size_t hash_span(std::span<const std::int32_t> s) const;
  bool insert_last();

  std::size_t n_ = 0;
  std::size_t count_ = 0;
  std::vector<std::int32_t> data_;
  std::unordered_set<std::uint32_t, Hash, Eq> index_{0, Hash{this}, Eq{this}};

 public:
  ElementTable(const ElementTable&) = delete;
  ElementTable& operator=(const ElementTable&) = delete;
  ElementTable(ElementTable&&) = delete;
};

/// Full automorphism group of a definite lattice. Throws InputError for
/// indefinite input and ResourceLimit when the node budget is exhausted.
IsometryGroup automorphism_group(const Lattice& l, const SearchOptions& opts = {});

/// Explicit isometry T with T * G2 * T^T = G1 (rows of T are the images of the
/// basis of l1 written in the basis of l2), or nullopt if none exists.
std::optional<IntMatrix> isometry_test(const Lattice& l1, const Lattice& l2, const SearchOptions& opts = {});

/// The four isometries of U = [[0,1],[1,0]]: +-id and +-swap. The list is
/// re-verified by exhaustive search over matrices with entries in {-1,0,1}.
IsometryGroup hyperbolic_automorphisms();

/// Order of {g in Aut(L) : g(v) = v} for unimodular L, computed as the number
/// of automorphisms of the definite complement v-perp whose discriminant
/// action agrees with the identity on <v> under the natural gluing.
Integer stabilizer_of_vector_in_unimodular(const Lattice& l, const IntVector& v,
                                           const SearchOptions& opts = {},
                                           std::uint64_t element_limit = 10'000'000);

/// Subgroup of elements commuting with `target`.
IsometryGroup centralizer(const IsometryGroup& g, const IntMatrix& target, std::uint64_t limit = 10'000'000);
/// Subgroup of elements fixing the row vector `v`.
IsometryGroup vector_stabilizer(const IsometryGroup& g, const IntVector& v, std::uint64_t limit = 10'000'000);

/// Orbit of a row vector under the group generated by the generators.
std::vector<IntVector> orbit(const IsometryGroup& g, const IntVector& v, std::uint64_t limit = 10'000'000);

}  // namespace latkit

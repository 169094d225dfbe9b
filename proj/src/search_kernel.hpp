#pragma once

// Internal 64-bit search machinery shared by the isometry routines.

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "latkit/exact_linalg.hpp"

namespace latkit::detail {

struct SmallGram {
  std::size_t n = 0;
  std::vector<std::int64_t> g;
  std::int64_t at(std::size_t i, std::size_t j) const { return g[i * n + j]; }
};

using SmallVec = std::vector<std::int64_t>;
using SmallMat = std::vector<std::int64_t>;  // n x n row-major

SmallGram to_small_gram(const IntMatrix& g);
std::int64_t small_norm(const SmallGram& g, std::span<const std::int64_t> x);

/// Canonical half of the short vectors (first nonzero coordinate positive), sorted.
std::vector<SmallVec> enumerate_short(const SmallGram& g, std::int64_t bound);

struct VecHash {
  std::size_t operator()(const SmallVec& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
    return h;
  }
};

IntMatrix to_int_matrix(const SmallMat& m, std::size_t n);
SmallMat to_small_mat(const IntMatrix& m);

/// Backtracking over images of a source basis inside a target vector set.
/// Image i must have inner product source(i, j) with image j for all j <= i.
class BasisImageSearch {
 public:
  BasisImageSearch(SmallGram source, SmallGram target, std::vector<SmallVec> vectors,
                   std::vector<std::vector<std::uint32_t>> level_candidates, std::uint64_t max_nodes);

  std::size_t dim() const { return source_.n; }
  std::size_t vector_count() const { return vectors_.size(); }
  const SmallVec& vector(std::uint32_t i) const { return vectors_[i]; }
  std::optional<std::uint32_t> index_of(const SmallVec& v) const;
  const std::vector<std::uint32_t>& candidates(std::size_t level) const { return level_candidates_[level]; }

  /// Inner product of two stored vectors in the target form.
  std::int64_t inner(std::uint32_t a, std::uint32_t b) const;

  /// First completion (in candidate order) of a fixed prefix of images.
  /// Throws ResourceLimit when the shared node budget is exhausted.
  std::optional<std::vector<std::uint32_t>> first_completion(std::span<const std::uint32_t> prefix) const;
  /// Number of completions of a fixed prefix.
  std::uint64_t count_completions(std::span<const std::uint32_t> prefix) const;

  /// Matrix whose rows are the chosen image vectors.
  SmallMat matrix(std::span<const std::uint32_t> images) const;
  /// Index of vector(v) * g.
  std::optional<std::uint32_t> apply(std::uint32_t v, const SmallMat& g) const;

  std::uint64_t nodes_used() const { return nodes_.load(); }

 private:
  bool consistent(std::span<const std::uint32_t> images, std::size_t level, std::uint32_t cand) const;
  void charge() const;

  SmallGram source_;
  SmallGram target_;
  std::vector<SmallVec> vectors_;
  std::vector<SmallVec> gram_times_;  // target * v, for fast inner products
  std::vector<std::vector<std::uint32_t>> level_candidates_;
  std::unordered_map<SmallVec, std::uint32_t, VecHash> lookup_;
  std::uint64_t max_nodes_;
  mutable std::atomic<std::uint64_t> nodes_{0};
};

/// Plesken-Souvignier stabilizer chain along the basis, where basis vector j
/// is vector(basis_index[j]). Generators are returned in discovery order.
struct StabilizerChain {
  std::vector<SmallMat> generators;
  std::vector<std::uint64_t> orbit_sizes;  // orbit_sizes[k] = |e_k^{G_k}|
  Integer order = 1;
};
StabilizerChain stabilizer_chain(const BasisImageSearch& search, std::span<const std::uint32_t> basis_index,
                                 bool parallel);

}  // namespace latkit::detail

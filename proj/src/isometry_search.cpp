#include <algorithm>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "latkit/errors.hpp"
#include "search_kernel.hpp"

namespace latkit::detail {

IntMatrix to_int_matrix(const SmallMat& m, std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = static_cast<long>(m[i * n + j]);
  return out;
}

SmallMat to_small_mat(const IntMatrix& m) {
  SmallMat out(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).fits_slong_p()) throw ResourceLimit("matrix entry exceeds 64 bits");
      out[i * m.cols() + j] = m(i, j).get_si();
    }
  return out;
}

BasisImageSearch::BasisImageSearch(SmallGram source, SmallGram target, std::vector<SmallVec> vectors,
                                   std::vector<std::vector<std::uint32_t>> level_candidates,
                                   std::uint64_t max_nodes)
    : source_(std::move(source)),
      target_(std::move(target)),
      vectors_(std::move(vectors)),
      level_candidates_(std::move(level_candidates)),
      max_nodes_(max_nodes) {
  const std::size_t n = target_.n;
  gram_times_.reserve(vectors_.size());
  for (std::uint32_t i = 0; i < vectors_.size(); ++i) {
    SmallVec gv(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) gv[a] += target_.at(a, b) * vectors_[i][b];
    gram_times_.push_back(std::move(gv));
    lookup_.emplace(vectors_[i], i);
  }
}

std::optional<std::uint32_t> BasisImageSearch::index_of(const SmallVec& v) const {
  auto it = lookup_.find(v);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::int64_t BasisImageSearch::inner(std::uint32_t a, std::uint32_t b) const {
  const auto& x = vectors_[a];
  const auto& gy = gram_times_[b];
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * gy[i];
  return s;
}

bool BasisImageSearch::consistent(std::span<const std::uint32_t> images, std::size_t level,
                                  std::uint32_t cand) const {
  for (std::size_t j = 0; j < level; ++j)
    if (inner(cand, images[j]) != source_.at(level, j)) return false;
  return true;
}

void BasisImageSearch::charge() const {
  if (nodes_.fetch_add(1, std::memory_order_relaxed) >= max_nodes_)
    throw ResourceLimit("isometry search node budget exhausted");
}

std::optional<std::vector<std::uint32_t>> BasisImageSearch::first_completion(
    std::span<const std::uint32_t> prefix) const {
  const std::size_t n = source_.n;
  std::vector<std::uint32_t> images(prefix.begin(), prefix.end());
  images.resize(n);
  for (std::size_t j = 0; j < prefix.size(); ++j)
    if (!consistent(images, j, images[j])) return std::nullopt;
  if (prefix.size() == n) return images;

  // explicit stack of candidate positions per level
  std::vector<std::size_t> pos(n, 0);
  std::size_t level = prefix.size();
  pos[level] = 0;
  for (;;) {
    const auto& cands = level_candidates_[level];
    bool advanced = false;
    while (pos[level] < cands.size()) {
      const std::uint32_t c = cands[pos[level]++];
      charge();
      if (!consistent(images, level, c)) continue;
      images[level] = c;
      advanced = true;
      break;
    }
    if (advanced) {
      if (level + 1 == n) return images;
      ++level;
      pos[level] = 0;
      continue;
    }
    if (level == prefix.size()) return std::nullopt;
    --level;
  }
}

std::uint64_t BasisImageSearch::count_completions(std::span<const std::uint32_t> prefix) const {
  const std::size_t n = source_.n;
  std::vector<std::uint32_t> images(prefix.begin(), prefix.end());
  images.resize(n);
  for (std::size_t j = 0; j < prefix.size(); ++j)
    if (!consistent(images, j, images[j])) return 0;
  if (prefix.size() == n) return 1;
  std::uint64_t count = 0;
  std::vector<std::size_t> pos(n, 0);
  std::size_t level = prefix.size();
  for (;;) {
    const auto& cands = level_candidates_[level];
    bool advanced = false;
    while (pos[level] < cands.size()) {
      const std::uint32_t c = cands[pos[level]++];
      charge();
      if (!consistent(images, level, c)) continue;
      images[level] = c;
      advanced = true;
      break;
    }
    if (advanced) {
      if (level + 1 == n) {
        ++count;
        continue;
      }
      ++level;
      pos[level] = 0;
      continue;
    }
    if (level == prefix.size()) return count;
    --level;
  }
}

SmallMat BasisImageSearch::matrix(std::span<const std::uint32_t> images) const {
  const std::size_t n = target_.n;
  SmallMat m(source_.n * n);
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = vectors_[images[i]][j];
  return m;
}

std::optional<std::uint32_t> BasisImageSearch::apply(std::uint32_t v, const SmallMat& g) const {
  const std::size_t n = target_.n;
  const auto& x = vectors_[v];
  SmallVec y(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (x[k] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) y[j] += x[k] * g[k * n + j];
  }
  return index_of(y);
}

namespace {

constexpr std::size_t kBatch = 16;

void extend_orbit(const BasisImageSearch& s, const std::vector<SmallMat>& gens, std::vector<char>& member,
                  std::vector<std::uint32_t>& orbit) {
  for (std::size_t head = 0; head < orbit.size(); ++head)
    for (const auto& g : gens) {
      auto w = s.apply(orbit[head], g);
      if (!w) throw Error("orbit left the candidate vector set");
      if (!member[*w]) {
        member[*w] = 1;
        orbit.push_back(*w);
      }
    }
}

}  // namespace

StabilizerChain stabilizer_chain(const BasisImageSearch& s, std::span<const std::uint32_t> basis_index,
                                 bool parallel) {
  const std::size_t n = s.dim();
  StabilizerChain chain;
  chain.orbit_sizes.assign(n, 1);

  for (std::size_t k = n; k-- > 0;) {
    const std::span<const std::uint32_t> fixed = basis_index.subspan(0, k);
    std::vector<std::uint32_t> cands;
    for (auto c : s.candidates(k)) {
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = s.inner(c, fixed[j]) == s.inner(basis_index[k], fixed[j]);
      if (ok) cands.push_back(c);
    }

    std::vector<char> in_orbit(s.vector_count(), 0);
    std::vector<char> excluded(s.vector_count(), 0);
    std::vector<std::uint32_t> orbit{basis_index[k]};
    in_orbit[basis_index[k]] = 1;
    extend_orbit(s, chain.generators, in_orbit, orbit);

    std::size_t next = 0;
    while (next < cands.size()) {
      std::vector<std::uint32_t> batch;
      while (next < cands.size() && batch.size() < kBatch) {
        const auto c = cands[next++];
        if (!in_orbit[c] && !excluded[c]) batch.push_back(c);
      }
      if (batch.empty()) break;

      std::vector<std::optional<std::vector<std::uint32_t>>> witness(batch.size());
      std::exception_ptr failure;
      const auto evaluate = [&](std::size_t b) {
        std::vector<std::uint32_t> prefix(fixed.begin(), fixed.end());
        prefix.push_back(batch[b]);
        witness[b] = s.first_completion(prefix);
      };
      if (parallel && batch.size() > 1) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::size_t b = 0; b < batch.size(); ++b) {
          try {
            evaluate(b);
          } catch (...) {
#pragma omp critical(latkit_chain_failure)
            if (!failure) failure = std::current_exception();
          }
        }
      } else {
        for (std::size_t b = 0; b < batch.size(); ++b) evaluate(b);
      }
      if (failure) std::rethrow_exception(failure);

      // merge in candidate order so the outcome does not depend on scheduling
      for (std::size_t b = 0; b < batch.size(); ++b) {
        const auto c = batch[b];
        if (in_orbit[c] || excluded[c]) continue;
        if (witness[b]) {
          chain.generators.push_back(s.matrix(*witness[b]));
          extend_orbit(s, chain.generators, in_orbit, orbit);
        } else {
          std::vector<char> mark(s.vector_count(), 0);
          std::vector<std::uint32_t> unreachable{c};
          mark[c] = 1;
          extend_orbit(s, chain.generators, mark, unreachable);
          for (auto u : unreachable) excluded[u] = 1;
        }
      }
    }
    chain.orbit_sizes[k] = orbit.size();
    chain.order *= static_cast<unsigned long>(orbit.size());
  }
  return chain;
}

}  // namespace latkit::detail

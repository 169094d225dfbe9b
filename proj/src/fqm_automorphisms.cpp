#include <algorithm>
#include <exception>
#include <unordered_set>

#include "latkit/errors.hpp"
#include "latkit/finite_quadratic.hpp"

namespace latkit {

namespace {

constexpr std::size_t kBatch = 16;

// Element-indexed tables for backtracking over generator images. All values
// are numerators over a common denominator so comparisons are integer.
class FqmSearch {
 public:
  FqmSearch(const FiniteQuadraticModule& f, std::uint64_t limit) : f_(f), k_(f.num_generators()) {
    if (f.order() > limit) throw ResourceLimit("finite module exceeds the size bound " + std::to_string(limit));
    size_ = f.order().get_ui();
    for (const auto& d : f.orders()) d_.push_back(d.get_si());

    Integer den = 1;
    for (std::size_t i = 0; i < k_; ++i) {
      den = lcm(den, f.q_generators()[i].get_den());
      for (std::size_t j = 0; j < k_; ++j) den = lcm(den, f.b_matrix()(i, j).get_den());
    }
    den_ = den.get_si();
    qmod_ = den_ * f.q_modulus();
    bnum_.resize(k_ * k_);
    std::vector<std::int64_t> qgen(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      const Rational qi = f.q_generators()[i] * den;
      qgen[i] = qi.get_num().get_si();
      for (std::size_t j = 0; j < k_; ++j) bnum_[i * k_ + j] = Rational(f.b_matrix()(i, j) * den).get_num().get_si();
    }

    coords_.resize(size_ * k_);
    qval_.resize(size_);
    order_.resize(size_);
    for (std::uint64_t idx = 0; idx < size_; ++idx) {
      const auto x = f.element(idx);
      std::copy(x.begin(), x.end(), coords_.begin() + static_cast<std::ptrdiff_t>(idx * k_));
      __int128 s = 0;
      for (std::size_t i = 0; i < k_; ++i) {
        if (x[i] == 0) continue;
        s += static_cast<__int128>(qgen[i]) * x[i] * x[i];
        for (std::size_t j = i + 1; j < k_; ++j) s += static_cast<__int128>(2 * bnum_[i * k_ + j]) * x[i] * x[j];
      }
      qval_[idx] = static_cast<std::int64_t>(((s % qmod_) + qmod_) % qmod_);
      order_[idx] = f.element_order(x);
    }
    for (std::size_t i = 0; i < k_; ++i) gen_index_.push_back(static_cast<std::uint32_t>(f.index(f.generator(i))));

    candidates_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::uint32_t idx = 0; idx < size_; ++idx)
        if (order_[idx] == d_[i] && qval_[idx] == qval_[gen_index_[i]]) candidates_[i].push_back(idx);

    // b is degenerate when some nonzero element pairs trivially with every generator
    degenerate_ = false;
    for (std::uint32_t idx = 1; idx < size_ && !degenerate_; ++idx) {
      bool radical = true;
      for (std::size_t j = 0; j < k_ && radical; ++j) radical = b(idx, gen_index_[j]) == 0;
      degenerate_ = radical;
    }
  }

  std::size_t dim() const { return k_; }
  std::uint64_t size() const { return size_; }
  std::uint32_t generator_index(std::size_t i) const { return gen_index_[i]; }
  const std::vector<std::uint32_t>& candidates(std::size_t level) const { return candidates_[level]; }

  std::int64_t b(std::uint32_t x, std::uint32_t y) const {
    const auto* a = &coords_[x * k_];
    const auto* c = &coords_[y * k_];
    __int128 s = 0;
    for (std::size_t i = 0; i < k_; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < k_; ++j)
        if (c[j] != 0) s += static_cast<__int128>(bnum_[i * k_ + j]) * a[i] * c[j];
    }
    return static_cast<std::int64_t>(((s % den_) + den_) % den_);
  }

  /// index of sum_i x_i * images[i]
  std::uint32_t apply(std::uint32_t x, std::span<const std::uint32_t> images) const {
    std::vector<std::int64_t> y(k_, 0);
    const auto* a = &coords_[x * k_];
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (a[i] == 0) continue;
      const auto* g = &coords_[images[i] * k_];
      for (std::size_t j = 0; j < k_; ++j) y[j] = (y[j] + a[i] * g[j]) % d_[j];
    }
    std::uint64_t idx = 0;
    for (std::size_t j = k_; j-- > 0;) idx = idx * static_cast<std::uint64_t>(d_[j]) + static_cast<std::uint64_t>(y[j]);
    return static_cast<std::uint32_t>(idx);
  }

  bool consistent(std::span<const std::uint32_t> images, std::size_t level, std::uint32_t cand) const {
    for (std::size_t j = 0; j < level; ++j)
      if (b(cand, images[j]) != b(gen_index_[level], gen_index_[j])) return false;
    if (b(cand, cand) != b(gen_index_[level], gen_index_[level])) return false;
    return true;
  }

  bool bijective(std::span<const std::uint32_t> images) const {
    if (!degenerate_) return true;
    std::vector<char> seen(size_, 0);
    std::vector<std::uint32_t> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (auto g : images) {
        const std::uint32_t y = add(queue[head], g);
        if (!seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
      }
    return queue.size() == size_;
  }

  std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
    std::uint64_t idx = 0;
    for (std::size_t j = k_; j-- > 0;)
      idx = idx * static_cast<std::uint64_t>(d_[j]) +
            static_cast<std::uint64_t>((coords_[x * k_ + j] + coords_[y * k_ + j]) % d_[j]);
    return static_cast<std::uint32_t>(idx);
  }

  /// Depth-first search over generator images extending `prefix`. The
  /// callback receives each complete image list and returns false to stop.
  /// `check(level, images)` may reject partial assignments.
  template <class Check, class Visit>
  void search(std::span<const std::uint32_t> prefix, Check&& check, Visit&& visit) const {
    std::vector<std::uint32_t> images(prefix.begin(), prefix.end());
    images.resize(k_);
    for (std::size_t j = 0; j < prefix.size(); ++j)
      if (!consistent(images, j, images[j]) || !check(j, images)) return;
    if (prefix.size() == k_) {
      if (bijective(images)) visit(images);
      return;
    }
    std::vector<std::size_t> pos(k_, 0);
    std::size_t level = prefix.size();
    for (;;) {
      const auto& cands = candidates_[level];
      bool advanced = false;
      while (pos[level] < cands.size()) {
        const auto c = cands[pos[level]++];
        images[level] = c;
        if (!consistent(images, level, c) || !check(level, images)) continue;
        advanced = true;
        break;
      }
      if (advanced) {
        if (level + 1 == k_) {
          if (bijective(images) && !visit(images)) return;
          continue;
        }
        ++level;
        pos[level] = 0;
        continue;
      }
      if (level == prefix.size()) return;
      --level;
    }
  }

  std::optional<std::vector<std::uint32_t>> first_completion(std::span<const std::uint32_t> prefix) const {
    std::optional<std::vector<std::uint32_t>> out;
    search(
        prefix, [](std::size_t, std::span<const std::uint32_t>) { return true; },
        [&](std::span<const std::uint32_t> images) {
          out.emplace(images.begin(), images.end());
          return false;
        });
    return out;
  }

  FqmMap to_map(std::span<const std::uint32_t> images) const {
    FqmMap m;
    for (auto idx : images) m.images.push_back(f_.element(idx));
    return m;
  }

  std::vector<std::uint32_t> to_images(const FqmMap& m) const {
    std::vector<std::uint32_t> out;
    for (const auto& y : m.images) out.push_back(static_cast<std::uint32_t>(f_.index(y)));
    return out;
  }

 private:
  const FiniteQuadraticModule& f_;
  std::size_t k_;
  std::uint64_t size_ = 0;
  std::vector<std::int64_t> d_;
  std::int64_t den_ = 1;
  std::int64_t qmod_ = 2;
  std::vector<std::int64_t> bnum_;
  std::vector<std::int64_t> coords_;
  std::vector<std::int64_t> qval_;
  std::vector<std::int64_t> order_;
  std::vector<std::uint32_t> gen_index_;
  std::vector<std::vector<std::uint32_t>> candidates_;
  bool degenerate_ = false;
};

void extend_orbit(const FqmSearch& s, const std::vector<std::vector<std::uint32_t>>& gens, std::vector<char>& member,
                  std::vector<std::uint32_t>& orbit) {
  for (std::size_t head = 0; head < orbit.size(); ++head)
    for (const auto& g : gens) {
      const auto y = s.apply(orbit[head], g);
      if (!member[y]) {
        member[y] = 1;
        orbit.push_back(y);
      }
    }
}

}  // namespace

FqmGroup fqm_automorphism_group(const FiniteQuadraticModule& f, std::uint64_t limit, bool parallel) {
  FqmGroup out;
  const FqmSearch s(f, limit);
  const std::size_t k = s.dim();
  std::vector<std::vector<std::uint32_t>> gens;
  std::vector<std::uint32_t> ident;
  for (std::size_t i = 0; i < k; ++i) ident.push_back(s.generator_index(i));

  for (std::size_t level = k; level-- > 0;) {
    const std::span<const std::uint32_t> fixed(ident.data(), level);
    std::vector<std::uint32_t> cands;
    for (auto c : s.candidates(level)) {
      bool ok = true;
      for (std::size_t j = 0; j < level && ok; ++j) ok = s.b(c, ident[j]) == s.b(ident[level], ident[j]);
      if (ok) cands.push_back(c);
    }
    std::vector<char> in_orbit(s.size(), 0), excluded(s.size(), 0);
    std::vector<std::uint32_t> orbit{ident[level]};
    in_orbit[ident[level]] = 1;
    extend_orbit(s, gens, in_orbit, orbit);

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
#pragma omp critical(latkit_fqm_failure)
            if (!failure) failure = std::current_exception();
          }
        }
      } else {
        for (std::size_t b = 0; b < batch.size(); ++b) evaluate(b);
      }
      if (failure) std::rethrow_exception(failure);

      for (std::size_t b = 0; b < batch.size(); ++b) {
        const auto c = batch[b];
        if (in_orbit[c] || excluded[c]) continue;
        if (witness[b]) {
          gens.push_back(*witness[b]);
          extend_orbit(s, gens, in_orbit, orbit);
        } else {
          std::vector<char> mark(s.size(), 0);
          std::vector<std::uint32_t> unreachable{c};
          mark[c] = 1;
          extend_orbit(s, gens, mark, unreachable);
          for (auto u : unreachable) excluded[u] = 1;
        }
      }
    }
    out.order *= static_cast<unsigned long>(orbit.size());
  }
  for (const auto& g : gens) out.generators.push_back(s.to_map(g));
  std::sort(out.generators.begin(), out.generators.end());
  return out;
}

std::vector<FqmMap> fqm_automorphisms_fixing(const FiniteQuadraticModule& f, const std::vector<FqmElement>& fixed,
                                             std::uint64_t limit, std::uint64_t max_count) {
  const FqmSearch s(f, limit);
  const std::size_t k = s.dim();
  // group the fixed subgroup's elements by the highest generator in their support
  const FqmSubgroup sub = generated_subgroup(f, fixed, limit);
  std::vector<std::vector<std::uint32_t>> by_top(k);
  for (const auto& x : sub.elements) {
    std::size_t top = k;
    for (std::size_t i = 0; i < k; ++i)
      if (x[i] != 0) top = i;
    if (top < k) by_top[top].push_back(static_cast<std::uint32_t>(f.index(x)));
  }
  const auto check = [&](std::size_t level, std::span<const std::uint32_t> images) {
    const auto partial = images.subspan(0, level + 1);
    for (auto x : by_top[level])
      if (s.apply(x, partial) != x) return false;
    return true;
  };
  std::vector<FqmMap> out;
  s.search({}, check, [&](std::span<const std::uint32_t> images) {
    if (out.size() >= max_count) throw ResourceLimit("too many module isometries to enumerate");
    out.push_back(s.to_map(images));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

Integer closure_order(const FiniteQuadraticModule& f, const std::vector<FqmMap>& gens, std::uint64_t limit) {
  const FqmSearch s(f, 1ULL << 24);
  const std::size_t k = s.dim();
  unsigned bits = 1;
  while ((1ULL << bits) < s.size()) ++bits;
  if (bits * k > 64) throw ResourceLimit("module isometries do not fit the packed encoding");

  // full image tables of the generators
  std::vector<std::vector<std::uint32_t>> tables;
  for (const auto& g : gens) {
    const auto images = s.to_images(g);
    std::vector<std::uint32_t> t(s.size());
    for (std::uint32_t x = 0; x < s.size(); ++x) t[x] = s.apply(x, images);
    tables.push_back(std::move(t));
  }
  const auto pack = [&](std::span<const std::uint32_t> images) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < k; ++i) key |= static_cast<std::uint64_t>(images[i]) << (bits * i);
    return key;
  };
  const std::uint64_t mask = bits == 64 ? ~0ULL : ((1ULL << bits) - 1);
  std::vector<std::uint32_t> start;
  for (std::size_t i = 0; i < k; ++i) start.push_back(s.generator_index(i));
  std::unordered_set<std::uint64_t> seen{pack(start)};
  std::vector<std::uint64_t> queue{pack(start)};
  std::vector<std::uint32_t> images(k);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint64_t cur = queue[head];
    for (const auto& t : tables) {
      for (std::size_t i = 0; i < k; ++i) images[i] = t[(cur >> (bits * i)) & mask];
      const auto key = pack(images);
      if (seen.insert(key).second) {
        queue.push_back(key);
        if (queue.size() > limit) throw ResourceLimit("module isometry group exceeds the closure limit");
      }
    }
  }
  return Integer(static_cast<unsigned long>(queue.size()));
}

}  // namespace latkit

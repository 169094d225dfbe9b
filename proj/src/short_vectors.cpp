#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "latkit/errors.hpp"
#include "latkit/isometry.hpp"
#include "search_kernel.hpp"

namespace latkit {
namespace detail {

SmallGram to_small_gram(const IntMatrix& g) {
  SmallGram out;
  out.n = g.rows();
  out.g.resize(out.n * out.n);
  for (std::size_t i = 0; i < out.n; ++i)
    for (std::size_t j = 0; j < out.n; ++j) {
      if (!g(i, j).fits_slong_p() || abs(g(i, j)) > (1L << 30))
        throw ResourceLimit("Gram entries too large for the enumeration kernel");
      out.g[i * out.n + j] = g(i, j).get_si();
    }
  return out;
}

std::int64_t small_norm(const SmallGram& g, std::span<const std::int64_t> x) {
  __int128 s = 0;
  for (std::size_t i = 0; i < g.n; ++i) {
    if (x[i] == 0) continue;
    __int128 row = 0;
    for (std::size_t j = 0; j < g.n; ++j) row += static_cast<__int128>(g.at(i, j)) * x[j];
    s += row * x[i];
  }
  if (s > std::numeric_limits<std::int64_t>::max() || s < std::numeric_limits<std::int64_t>::min())
    throw ResourceLimit("vector norm overflows 64 bits");
  return static_cast<std::int64_t>(s);
}

namespace {

// Fincke-Pohst:  Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
struct QuadraticDecomposition {
  std::size_t n = 0;
  std::vector<double> q;  // n x n; diagonal = q_ii, upper = q_ij
  double at(std::size_t i, std::size_t j) const { return q[i * n + j]; }
};

QuadraticDecomposition decompose(const SmallGram& g) {
  QuadraticDecomposition d;
  d.n = g.n;
  d.q.assign(g.g.begin(), g.g.end());
  auto Q = [&](std::size_t i, std::size_t j) -> double& { return d.q[i * d.n + j]; };
  for (std::size_t i = 0; i < d.n; ++i) {
    if (!(Q(i, i) > 0)) throw InputError("short_vectors: form is not positive definite");
    for (std::size_t j = i + 1; j < d.n; ++j) {
      Q(j, i) = Q(i, j);
      Q(i, j) /= Q(i, i);
    }
    for (std::size_t k = i + 1; k < d.n; ++k)
      for (std::size_t l = k; l < d.n; ++l) Q(k, l) -= Q(k, i) * Q(i, l);
  }
  return d;
}

class Enumerator {
 public:
  Enumerator(const SmallGram& g, const QuadraticDecomposition& d, std::int64_t bound)
      : g_(g), d_(d), bound_(bound), slack_(1e-7 * (1.0 + static_cast<double>(bound))), x_(g.n, 0) {}

  void run_from_top(std::int64_t top_value, std::vector<std::vector<std::int64_t>>& out) {
    const std::size_t top = g_.n - 1;
    x_[top] = top_value;
    const double diff = static_cast<double>(top_value);
    const double used = d_.at(top, top) * diff * diff;
    const double remaining = static_cast<double>(bound_) - used;
    if (remaining < -slack_) return;
    if (top == 0) {
      emit(out);
      return;
    }
    recurse(top - 1, remaining, out);
  }

  std::int64_t top_radius() const {
    const std::size_t top = g_.n - 1;
    return static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(bound_) / d_.at(top, top)) + 1e-9));
  }

 private:
  void emit(std::vector<std::vector<std::int64_t>>& out) {
    const std::int64_t nrm = small_norm(g_, x_);
    if (nrm <= 0 || nrm > bound_) return;
    // keep the representative whose first nonzero coordinate is positive
    for (auto c : x_) {
      if (c == 0) continue;
      if (c > 0) out.push_back(x_);
      return;
    }
  }

  void recurse(std::size_t i, double remaining, std::vector<std::vector<std::int64_t>>& out) {
    double center = 0.0;
    for (std::size_t j = i + 1; j < g_.n; ++j) center -= d_.at(i, j) * static_cast<double>(x_[j]);
    const double rad2 = std::max(0.0, remaining + slack_) / d_.at(i, i);
    const double rad = std::sqrt(rad2);
    const auto lo = static_cast<std::int64_t>(std::ceil(center - rad - 1e-9));
    const auto hi = static_cast<std::int64_t>(std::floor(center + rad + 1e-9));
    for (std::int64_t v = lo; v <= hi; ++v) {
      x_[i] = v;
      const double diff = static_cast<double>(v) - center;
      const double rest = remaining - d_.at(i, i) * diff * diff;
      if (rest < -slack_) continue;
      if (i == 0)
        emit(out);
      else
        recurse(i - 1, rest, out);
    }
    x_[i] = 0;
  }

  const SmallGram& g_;
  const QuadraticDecomposition& d_;
  std::int64_t bound_;
  double slack_;
  std::vector<std::int64_t> x_;
};

}  // namespace

std::vector<std::vector<std::int64_t>> enumerate_short(const SmallGram& g, std::int64_t bound) {
  std::vector<std::vector<std::int64_t>> result;
  if (g.n == 0 || bound <= 0) return result;
  const auto d = decompose(g);
  const std::int64_t r = Enumerator(g, d, bound).top_radius();
  const std::int64_t width = 2 * r + 1;
  std::vector<std::vector<std::vector<std::int64_t>>> buckets(static_cast<std::size_t>(width));

  // Top-level coordinate values are independent subtrees.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t t = 0; t < width; ++t) {
    Enumerator e(g, d, bound);
    e.run_from_top(t - r, buckets[static_cast<std::size_t>(t)]);
  }
  for (auto& b : buckets)
    for (auto& v : b) result.push_back(std::move(v));
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace detail

std::vector<ShortVector> short_vectors(const Lattice& l, const Integer& bound) {
  const auto [p, q] = signature(l);
  if (p != 0 && q != 0) throw InputError("short_vectors: lattice is indefinite");
  const bool negative = p == 0 && l.rank() > 0;
  IntMatrix g = negative ? -l.gram() : l.gram();
  const auto sg = detail::to_small_gram(g);
  if (bound <= 0) return {};
  const std::int64_t b = bound.fits_slong_p() ? bound.get_si() : std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<ShortVector> out;
  for (auto& v : detail::enumerate_short(sg, b)) {
    ShortVector sv;
    sv.norm = detail::small_norm(sg, v);
    if (negative) sv.norm = -sv.norm;
    sv.coords = std::move(v);
    out.push_back(std::move(sv));
  }
  return out;
}

std::int64_t minimum_norm(const Lattice& l) {
  if (l.rank() == 0) return 0;
  const auto [p, q] = signature(l);
  if (p != 0 && q != 0) throw InputError("minimum_norm: lattice is indefinite");
  const bool negative = p == 0;
  std::int64_t best = 0;
  for (std::size_t i = 0; i < l.rank(); ++i) {
    std::int64_t d = l.gram()(i, i).get_si();
    if (negative) d = -d;
    if (best == 0 || d < best) best = d;
  }
  std::int64_t m = best;
  for (const auto& v : short_vectors(l, Integer(best))) {
    const std::int64_t a = negative ? -v.norm : v.norm;
    m = std::min(m, a);
  }
  return m;
}

}  // namespace latkit

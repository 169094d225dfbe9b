#include <atomic>

#include "latkit/errors.hpp"
#include "latkit/isometry.hpp"

namespace latkit {

// An isometry fixing v restricts to an isometry h of K = v-perp; conversely h
// extends (by the identity on v) exactly when h acts trivially on the
// discriminant group of K, i.e. when G_K^{-1} (h - I) is integral.
Integer stabilizer_of_vector_in_unimodular(const Lattice& l, const IntVector& v, const SearchOptions& opts,
                                           std::uint64_t element_limit) {
  if (!is_unimodular(l)) throw InputError("stabilizer: lattice is not unimodular");
  if (v.size() != l.rank()) throw InputError("stabilizer: vector has the wrong length");
  IntMatrix vb(1, v.size());
  vb.set_row(0, v);
  if (l.norm(v) == 0) throw InputError("stabilizer: vector is isotropic");
  Integer content = 0;
  for (const auto& x : v) content = gcd(content, x);
  if (content != 1) throw InputError("stabilizer: vector is not primitive");
  const Sublattice perp = orthogonal_complement(l, Sublattice{l, vb});
  if (perp.rank() == 0) return Integer(1);
  const Lattice k = perp.induced("perp");
  if (!is_definite(k)) throw InputError("stabilizer: orthogonal complement is not definite");

  const IsometryGroup aut = automorphism_group(k, opts);
  if (aut.order() > element_limit) throw ResourceLimit("stabilizer: complement group too large to enumerate");
  const ElementTable table(k.gram(), aut.generators(), element_limit);
  const std::size_t n = k.rank();
  // adj = det * G^{-1}; the condition becomes adj (h - I) = 0 mod det
  const RatMatrix ginv = inverse(to_rational(k.gram()));
  const Integer det = k.det();
  const long modulus = Integer(abs(det)).get_si();
  std::vector<long> adj(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Rational x = ginv(a, b) * det;
      adj[a * n + b] = x.get_num().get_si() % modulus;
    }

  std::atomic<std::uint64_t> count{0};
  const auto total = static_cast<std::int64_t>(table.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i) {
    const auto h = table.raw(static_cast<std::size_t>(i));
    bool trivial = true;
    for (std::size_t a = 0; a < n && trivial; ++a)
      for (std::size_t b = 0; b < n && trivial; ++b) {
        long s = 0;
        for (std::size_t c = 0; c < n; ++c) s += adj[a * n + c] * (h[c * n + b] - (c == b ? 1 : 0));
        trivial = s % modulus == 0;
      }
    if (trivial) count.fetch_add(1, std::memory_order_relaxed);
  }
  return Integer(static_cast<unsigned long>(count.load()));
}

}  // namespace latkit

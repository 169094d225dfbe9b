#pragma once

#include <cstdint>
#include <span>

#include "latkit/isometry.hpp"

namespace test_support {

/// Number of elements of the table fixing the row vector v, computed on the
/// raw 32-bit entries.
inline std::size_t count_fixing(const latkit::ElementTable& t, std::span<const std::int64_t> v) {
  const std::size_t n = t.dim();
  std::size_t count = 0;
  for (std::size_t e = 0; e < t.size(); ++e) {
    const auto m = t.raw(e);
    bool fixes = true;
    for (std::size_t c = 0; c < n && fixes; ++c) {
      std::int64_t s = 0;
      for (std::size_t r = 0; r < n; ++r) s += v[r] * m[r * n + c];
      fixes = s == v[c];
    }
    if (fixes) ++count;
  }
  return count;
}

inline latkit::IntVector to_int_vector(std::span<const std::int64_t> v) {
  latkit::IntVector out;
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

}  // namespace test_support

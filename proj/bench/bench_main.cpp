// Serial reference implementations against the OpenMP kernels.
//
//   latkit_bench [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "latkit/finite_quadratic.hpp"
#include "latkit/isometry.hpp"
#include "latkit/symplectic_f2.hpp"
#include "reference/reference.hpp"

using namespace latkit;

namespace {

double time_ms(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-32s %12.2f %12.2f %8.2fx  %s\n", name, serial, parallel, serial / parallel, agree ? "agree" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d, best of %d\n", omp_get_max_threads(), repeats);
  std::printf("%-32s %12s %12s %9s\n", "kernel", "serial ms", "parallel ms", "speedup");

  {
    const Lattice e7 = make_standard("E7");
    std::size_t a = 0, b = 0;
    const double s = time_ms(repeats, [&] { a = reference::box_short_vectors(e7, 2).size(); });
    const double p = time_ms(repeats, [&] { b = short_vectors(e7, 2).size(); });
    row("short vectors E7, norm <= 2", s, p, a == b);
  }
  {
    const Lattice e6 = make_standard("E6");
    std::size_t a = 0, b = 0;
    const double s = time_ms(repeats, [&] { a = reference::box_short_vectors(e6, 4).size(); });
    const double p = time_ms(repeats, [&] { b = short_vectors(e6, 4).size(); });
    row("short vectors E6, norm <= 4", s, p, a == b);
  }
  for (const char* name : {"D4", "E6"}) {
    const Lattice l = make_standard(name);
    Integer a, b, c;
    const double s = time_ms(repeats, [&] { a = reference::automorphism_count(l); });
    const double q = time_ms(repeats, [&] { c = automorphism_group(l, {.parallel = false}).order(); });
    const double p = time_ms(repeats, [&] { b = automorphism_group(l).order(); });
    const std::string label = std::string("|Aut(") + name + ")| brute force";
    row(label.c_str(), s, p, a == b);
    const std::string label2 = std::string("|Aut(") + name + ")| chain, 1 vs N thr";
    row(label2.c_str(), q, p, c == b);
  }
  {
    const auto half = FiniteQuadraticModule::half_quotient(make_standard("E6"));
    std::uint64_t a = 0;
    Integer b;
    const double s = time_ms(repeats, [&] { a = reference::fqm_automorphism_count(half); });
    const double p = time_ms(repeats, [&] { b = fqm_automorphism_group(half).order; });
    row("|O((1/2 E6)/E6)| brute force", s, p, Integer(static_cast<unsigned long>(a)) == b);
  }
  {
    std::uint64_t a = 0, b = 0;
    const double s = time_ms(1, [&] { a = reference::symplectic_order_by_transvections(2); });
    const double p = time_ms(1, [&] { b = symplectic_group_order(2); });
    row("|Sp_4(F_2)| closure vs bases", s, p, a == b);
  }
  return 0;
}

// Benchmark comparing the serial reference kernels against the OpenMP
// paths: F_p row reduction and centre kernel assembly.  Results must agree
// exactly; timings go to stdout.

#include <chrono>
#include <iostream>

#include "mva/centre.hpp"
#include "mva/matrix.hpp"
#include "mva/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace mva;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void bench_rref(std::size_t rows, std::size_t cols, std::uint32_t p, int workers) {
  SplitMix64 rng(42);
  FpMatrix m(rows, cols, p);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.below(p);

  FpMatrix a = m;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t r1 = fp_rref_serial(a);
  double serial = ms_since(t0);

#ifdef _OPENMP
  omp_set_num_threads(workers);
#endif
  FpMatrix b = m;
  t0 = std::chrono::steady_clock::now();
  std::size_t r2 = fp_rref_parallel(b);
  double parallel = ms_since(t0);

  bool same = r1 == r2;
  for (std::size_t i = 0; same && i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (a.at(i, j) != b.at(i, j)) {
        same = false;
        break;
      }
  std::cout << "fp_rref " << rows << "x" << cols << " mod " << p << ": serial " << serial
            << " ms, parallel(" << workers << ") " << parallel << " ms, rank " << r1
            << (same ? ", identical" : ", MISMATCH") << "\n";
  if (!same) std::exit(1);
}

void bench_centre(const char* family, int n, std::uint32_t p, int cap, int workers) {
  LieAlgebraSpec g = build_classical(family_from_string(family), n, p);
  Scalar level = g.critical_level();

  auto t0 = std::chrono::steady_clock::now();
  std::vector<int> serial = centre_dimension_serial(g, level, cap);
  double ts = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  std::vector<int> parallel = centre_dimension(g, level, cap, workers);
  double tp = ms_since(t0);

  bool same = serial == parallel;
  std::cout << "centre " << family << "_" << n << " p=" << p << " cap=" << cap << ": serial " << ts
            << " ms, parallel(" << workers << ") " << tp << " ms, dims";
  for (int d : serial) std::cout << " " << d;
  std::cout << (same ? ", identical" : ", MISMATCH") << "\n";
  if (!same) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  int workers = 4;
#ifdef _OPENMP
  workers = std::max(2, omp_get_max_threads());
#endif
  if (quick) {
    bench_rref(300, 200, 7, workers);
    bench_centre("sl", 2, 5, 4, workers);
    return 0;
  }
  bench_rref(1200, 900, 7, workers);
  bench_rref(2400, 1800, 10007, workers);
  bench_centre("sl", 2, 5, 6, workers);
  bench_centre("gl", 2, 5, 4, workers);
  return 0;
}

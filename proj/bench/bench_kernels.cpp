// Timing comparison of the serial and OpenMP matmul/kron paths.
#include <chrono>
#include <cstdio>
#include <random>

#include "hardy/kernels.hpp"

using hardy::CMatrix;
using hardy::cplx;

namespace {

CMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& gen) {
    std::normal_distribution<double> n;
    CMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(n(gen), n(gen));
    return m;
}

template <typename F>
double time_ms(F&& f, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
    std::mt19937_64 gen(7);
    for (std::size_t d : {128, 256, 512}) {
        const CMatrix a = random_matrix(d, d, gen), b = random_matrix(d, d, gen);
        const double ts = time_ms([&] { hardy::kernels::matmul_serial(a, b); }, 3);
        const double tp = time_ms([&] { hardy::kernels::matmul_omp(a, b); }, 3);
        std::printf("matmul %4zu x %4zu   serial %8.2f ms   omp %8.2f ms   speedup %.2fx\n",
                    d, d, ts, tp, ts / tp);
    }
    for (std::size_t d : {32, 64}) {
        const CMatrix a = random_matrix(d, d, gen), b = random_matrix(d, d, gen);
        const double ts = time_ms([&] { hardy::kernels::kron_serial(a, b); }, 3);
        const double tp = time_ms([&] { hardy::kernels::kron_omp(a, b); }, 3);
        std::printf("kron   %4zu (x) %3zu  serial %8.2f ms   omp %8.2f ms   speedup %.2fx\n",
                    d, d, ts, tp, ts / tp);
    }
    return 0;
}

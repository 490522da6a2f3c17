// Compares the OpenMP matrix product against the serial reference on square
// integer matrices of growing size. Run manually; not part of the test suite.

#include <chrono>
#include <cstdio>
#include <random>

#include "cofib/matrix.hpp"

using namespace cofib;
using clk = std::chrono::steady_clock;

static double ms_since(clk::time_point t0)
{
    return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

int main()
{
    GroundRing Z = GroundRing::integers();
    std::mt19937_64 rng(20260825);
    std::uniform_int_distribution<long> d(-1000, 1000);

    std::printf("%6s %12s %12s %8s\n", "n", "serial ms", "parallel ms", "speedup");
    for (int n : {32, 64, 96, 128, 192}) {
        Mat A = mat_zero(Z, n, n), B = mat_zero(Z, n, n);
        for (auto& x : A.a) x.z = d(rng);
        for (auto& x : B.a) x.z = d(rng);

        auto t0 = clk::now();
        Mat S = mat_mul_serial(Z, A, B);
        double ts = ms_since(t0);

        t0 = clk::now();
        Mat P = mat_mul(Z, A, B);
        double tp = ms_since(t0);

        if (!(S == P)) {
            std::fprintf(stderr, "MISMATCH at n=%d\n", n);
            return 1;
        }
        std::printf("%6d %12.2f %12.2f %8.2f\n", n, ts, tp, ts / tp);
    }
    return 0;
}

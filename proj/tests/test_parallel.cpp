#include "doctest.h"

#include <random>

#include "cofib/generation.hpp"
#include "cofib/random_gen.hpp"

using namespace cofib;

namespace {

GroundRing Z = GroundRing::integers();
std::mt19937_64 rng(60606);

Mat random_zmat(int r, int c, long bound)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    Mat M = mat_zero(Z, r, c);
    for (auto& x : M.a) x.z = d(rng);
    return M;
}

} // namespace

TEST_CASE("parallel product agrees with the serial reference")
{
    for (int it = 0; it < 30; it++) {
        int n = 1 + (int)(rng() % 40), m = 1 + (int)(rng() % 40),
            k = 1 + (int)(rng() % 40);
        Mat A = random_zmat(n, m, 1000), B = random_zmat(m, k, 1000);
        CHECK(mat_mul(Z, A, B) == mat_mul_serial(Z, A, B));
    }
    // degenerate shapes
    Mat E(0, 5), F(5, 0);
    CHECK(mat_mul(Z, E, random_zmat(5, 3, 10)).rows == 0);
    CHECK(mat_mul(Z, random_zmat(3, 5, 10), F).cols == 0);
}

TEST_CASE("parallel product over F_p[x] and quotients")
{
    GroundRing R = GroundRing::fpx(5);
    std::uniform_int_distribution<long> d(0, 4);
    for (int it = 0; it < 10; it++) {
        Mat A = mat_zero(R, 12, 12), B = mat_zero(R, 12, 12);
        for (auto& x : A.a) x.poly = {d(rng), d(rng)};
        for (auto& x : B.a) x.poly = {d(rng), d(rng)};
        Mat Ar = mat_reduce(R, A), Br = mat_reduce(R, B);
        CHECK(mat_mul(R, Ar, Br) == mat_mul_serial(R, Ar, Br));
    }
}

TEST_CASE("concurrent certificate verification is deterministic")
{
    // build a batch of certificates serially, then verify them in a
    // parallel loop and compare against serial replay
    std::vector<Certificate> certs;
    auto S = ThickSupport::max_set({ring_from_int(Z, 2), ring_from_int(Z, 3)});
    for (int it = 0; it < 16; it++) {
        PerfectComplex Y = random_torsion_complex(rng, {2, 3}, 3, 2);
        certs.push_back(plan(Y, S, it % 2 ? PlanStrategy::KillBottom
                                          : PlanStrategy::Formality));
    }
    std::vector<int> ok_parallel(certs.size(), 0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < (int)certs.size(); i++) {
        ok_parallel[i] = verify(certs[i]).ok ? 1 : 0;
    }
    for (size_t i = 0; i < certs.size(); i++) {
        CHECK(ok_parallel[i] == (verify(certs[i]).ok ? 1 : 0));
        CHECK(ok_parallel[i] == 1);
    }
}

TEST_CASE("homology batches agree across parallel reruns")
{
    std::vector<PerfectComplex> xs;
    for (int it = 0; it < 12; it++) {
        xs.push_back(random_torsion_complex(rng, {2, 3, 5}, 3, 2));
    }
    std::vector<HomologyProfile> serial(xs.size()), parallel(xs.size());
    for (size_t i = 0; i < xs.size(); i++) serial[i] = homology(xs[i]);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < (int)xs.size(); i++) parallel[i] = homology(xs[i]);
    for (size_t i = 0; i < xs.size(); i++) CHECK(serial[i] == parallel[i]);
}

#include "doctest.h"

#include <random>

#include "cofib/snf.hpp"

using namespace cofib;

namespace {

GroundRing Z = GroundRing::integers();

Mat zmat(int r, int c, std::vector<long> vals)
{
    Mat M = mat_zero(Z, r, c);
    for (size_t i = 0; i < vals.size(); i++) M.a[i].z = vals[i];
    return M;
}

void check_snf_contract(const GroundRing& R, const Mat& M, const SnfResult& s)
{
    // U*M*V = D exactly
    CHECK(mat_mul_serial(R, mat_mul_serial(R, s.U, mat_reduce(R, M)), s.V) == s.D);
    // D diagonal with divisor chain
    for (int i = 0; i < s.D.rows; i++) {
        for (int j = 0; j < s.D.cols; j++) {
            if (i != j) CHECK(is_zero(R, s.D.at(i, j)));
        }
    }
    auto d = s.diag();
    for (size_t i = 0; i + 1 < d.size(); i++) {
        if (!is_zero(R, d[i + 1])) CHECK(divides(R, d[i], d[i + 1]));
    }
    if (R.is_pid()) {
        CHECK(is_unit(R, determinant(R, s.U)));
        CHECK(is_unit(R, determinant(R, s.V)));
    }
}

std::mt19937_64 rng(12345);

Mat random_zmat(int r, int c, long bound)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    Mat M = mat_zero(Z, r, c);
    for (auto& x : M.a) x.z = d(rng);
    return M;
}

Mat random_unimodular(int n)
{
    // product of random elementary matrices
    std::uniform_int_distribution<long> d(-3, 3);
    std::uniform_int_distribution<int> idx(0, n - 1);
    Mat U = mat_identity(Z, n);
    for (int k = 0; k < 3 * n; k++) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        Elem c;
        c.z = d(rng);
        for (int t = 0; t < n; t++) {
            U.at(i, t) = add(Z, U.at(i, t), mul(Z, c, U.at(j, t)));
        }
    }
    return U;
}

} // namespace

TEST_CASE("snf of diag(2,3) over Z")
{
    Mat M = zmat(2, 2, {2, 0, 0, 3});
    auto s = snf(Z, M);
    check_snf_contract(Z, M, s);
    // oracle facts: d1 = gcd of entries = 1, d1*d2 = |det| = 6
    CHECK(s.diag()[0].z == 1);
    CHECK(s.diag()[1].z == 6);
}

TEST_CASE("snf trivial cases")
{
    Mat M = mat_zero(Z, 2, 3);
    auto s = snf(Z, M);
    CHECK(s.rank == 0);
    CHECK(mat_is_zero(Z, s.D));
    check_snf_contract(Z, M, s);

    Mat I = mat_identity(Z, 4);
    auto si = snf(Z, I);
    CHECK(si.D == I);
    check_snf_contract(Z, I, si);

    Mat E(0, 0);
    auto se = snf(Z, E);
    CHECK(se.rank == 0);
}

TEST_CASE("snf random matrices over Z")
{
    for (int it = 0; it < 60; it++) {
        Mat M = random_zmat(2 + (int)(rng() % 4), 2 + (int)(rng() % 4), 30);
        auto s = snf(Z, M);
        check_snf_contract(Z, M, s);
    }
}

TEST_CASE("snf diagonal invariant under unimodular conjugation")
{
    for (int it = 0; it < 20; it++) {
        Mat M = random_zmat(4, 4, 10);
        auto s1 = snf(Z, M);
        Mat M2 = mat_mul_serial(Z, random_unimodular(4),
                                mat_mul_serial(Z, M, random_unimodular(4)));
        auto s2 = snf(Z, M2);
        CHECK(s1.D == s2.D);
    }
}

TEST_CASE("snf over F_2[x]")
{
    GroundRing R = GroundRing::fpx(2);
    Mat M = mat_zero(R, 2, 2);
    M.at(0, 0).poly = {0, 1};    // x
    M.at(1, 1).poly = {1, 1};    // x+1
    M.at(0, 1).poly = {1};       // 1 in the corner forces gcd 1
    auto s = snf(R, M);
    check_snf_contract(R, M, s);
    CHECK(s.diag()[0].poly == Poly{1});
    // monic canonical entries
    for (const auto& d : s.diag()) {
        if (!d.poly.empty()) CHECK(d.poly.back() == 1);
    }
}

TEST_CASE("snf over a local quotient: valuation pivoting")
{
    GroundRing Zq = GroundRing::quotient(Z, ring_from_int(Z, 2), 3); // Z/8
    Mat M = mat_zero(Zq, 2, 2);
    M.at(0, 0) = ring_from_int(Zq, 4);
    M.at(0, 1) = ring_from_int(Zq, 6);
    M.at(1, 0) = ring_from_int(Zq, 2);
    M.at(1, 1) = ring_from_int(Zq, 5);
    auto s = snf(Zq, M);
    check_snf_contract(Zq, M, s);
    CHECK(s.diag()[0].z == 1); // 5 is a unit mod 8
    // entries are canonical powers of 2 (or 0)
    for (const auto& d : s.diag()) {
        long v = quot_valuation(Zq, d);
        CHECK(d == quot_q_power(Zq, v));
    }
}

TEST_CASE("snf rejects product rings")
{
    GroundRing R = GroundRing::product({GroundRing::quotient(Z, ring_from_int(Z, 2), 2)});
    CHECK_THROWS_AS(snf(R, mat_zero(R, 1, 1)), DomainError);
}

TEST_CASE("lattice from generators: fixed examples")
{
    auto L = lattice_from_generators(2, {{2, 0}, {0, 3}});
    CHECK(L.rank() == 2);
    CHECK(L.basis.at(0, 0).z == 2);
    CHECK(L.basis.at(1, 1).z == 3);
    CHECK(L.basis.at(1, 0).z == 0);
    CHECK(L.basis.at(0, 1).z == 0);

    auto L0 = lattice_from_generators(2, {});
    CHECK(L0.rank() == 0);

    auto L1 = lattice_from_generators(1, {{4}, {6}});
    CHECK(L1.rank() == 1);
    CHECK(L1.basis.at(0, 0).z == 2);
}

TEST_CASE("lattice membership: fixed examples")
{
    auto L = lattice_from_generators(2, {{2, 0}, {0, 3}});
    CHECK(lattice_contains(L, {4, 3}));
    CHECK_FALSE(lattice_contains(L, {1, 0}));
    auto D = lattice_from_generators(2, {{1, 1}});
    CHECK(lattice_contains(D, {5, 5}));
    CHECK_FALSE(lattice_contains(D, {5, 4}));
    CHECK_THROWS_AS(lattice_contains(D, {1, 2, 3}), DomainError);
}

TEST_CASE("lattice_from_generators idempotent on its own basis")
{
    for (int it = 0; it < 30; it++) {
        int n = 2 + (int)(rng() % 3);
        std::uniform_int_distribution<long> d(-6, 6);
        std::vector<std::vector<mpz_class>> gens;
        for (int k = 0; k < n + 1; k++) {
            std::vector<mpz_class> v(n);
            for (auto& x : v) x = d(rng);
            gens.push_back(v);
        }
        auto L = lattice_from_generators(n, gens);
        std::vector<std::vector<mpz_class>> basis_cols;
        for (int j = 0; j < L.rank(); j++) {
            std::vector<mpz_class> v(n);
            for (int i = 0; i < n; i++) v[i] = L.basis.at(i, j).z;
            basis_cols.push_back(v);
        }
        auto L2 = lattice_from_generators(n, basis_cols);
        CHECK(L == L2);
    }
}

TEST_CASE("lattice membership agrees with brute-force enumeration")
{
    // small ambient dims, coefficients scanned exhaustively
    std::uniform_int_distribution<long> d(-4, 4);
    for (int it = 0; it < 20; it++) {
        int n = 1 + (int)(rng() % 3);
        std::vector<std::vector<mpz_class>> gens;
        int g = 1 + (int)(rng() % 2);
        for (int k = 0; k < g; k++) {
            std::vector<mpz_class> v(n);
            for (auto& x : v) x = d(rng);
            gens.push_back(v);
        }
        auto L = lattice_from_generators(n, gens);
        std::vector<mpz_class> target(n);
        for (auto& x : target) x = d(rng);

        bool brute = false;
        for (long c0 = -10; c0 <= 10 && !brute; c0++) {
            for (long c1 = -10; c1 <= 10 && !brute; c1++) {
                std::vector<long> cs = {c0, c1};
                std::vector<mpz_class> acc(n, 0);
                for (int k = 0; k < g; k++) {
                    for (int i = 0; i < n; i++) acc[i] += cs[k] * gens[k][i];
                }
                bool eq = true;
                for (int i = 0; i < n; i++) {
                    if (acc[i] != target[i]) eq = false;
                }
                if (eq) brute = true;
                if (g == 1) break; // inner loop unused
            }
        }
        if (brute) CHECK(lattice_contains(L, target));
        // a brute-force miss within the scan box is not conclusive for
        // membership with larger coefficients, so only the positive
        // direction is asserted here; the negative direction is covered by
        // the fixed examples above
    }
}

TEST_CASE("kernel and solve over Z")
{
    Mat M = zmat(2, 3, {1, 2, 3, 2, 4, 6});
    Mat K = kernel_basis(Z, M);
    CHECK(K.cols == 2);
    Mat MK = mat_mul_serial(Z, M, K);
    CHECK(mat_is_zero(Z, MK));

    std::vector<Elem> b = {ring_from_int(Z, 6), ring_from_int(Z, 12)};
    auto x = solve_linear(Z, M, b);
    REQUIRE(x.has_value());
    auto Mx = mat_apply(Z, M, *x);
    CHECK(Mx[0].z == 6);
    CHECK(Mx[1].z == 12);

    std::vector<Elem> bad = {ring_from_int(Z, 1), ring_from_int(Z, 1)};
    CHECK_FALSE(solve_linear(Z, M, bad).has_value());
}

TEST_CASE("hermite form over F_3[x] keeps span")
{
    GroundRing R = GroundRing::fpx(3);
    Mat A = mat_zero(R, 2, 3);
    A.at(0, 0).poly = {0, 1};
    A.at(1, 0).poly = {1};
    A.at(0, 1).poly = {0, 2};
    A.at(1, 1).poly = {2};
    A.at(1, 2).poly = {0, 0, 1};
    Mat H = hnf_cols(R, A);
    CHECK(H.cols == 2); // columns 0,1 are parallel
    // every original column solvable in terms of H
    for (int j = 0; j < A.cols; j++) {
        CHECK(solve_linear(R, H, mat_col(A, j)).has_value());
    }
    // and conversely
    for (int j = 0; j < H.cols; j++) {
        CHECK(solve_linear(R, A, mat_col(H, j)).has_value());
    }
}

#include "doctest.h"

#include <random>

#include "cofib/invariants.hpp"
#include "cofib/random_gen.hpp"

using namespace cofib;

namespace {

GroundRing Z = GroundRing::integers();
std::mt19937_64 rng(424242);

Elem zi(long v) { return ring_from_int(Z, v); }

} // namespace

TEST_CASE("support shapes")
{
    CHECK(supp(unit_complex(Z)).kind == ThickSupport::Kind::Full);
    CHECK(supp(zero_complex(Z)).kind == ThickSupport::Kind::MaxSet);
    CHECK(supp(zero_complex(Z)).primes.empty());

    auto S = supp(direct_sum(moore(Z, zi(4)), moore(Z, zi(3))));
    REQUIRE(S.kind == ThickSupport::Kind::MaxSet);
    CHECK(S.primes == std::set<Elem>{zi(2), zi(3)});

    // any free summand pushes the support to Full
    auto SF = supp(direct_sum(moore(Z, zi(2)), unit_complex(Z)));
    CHECK(SF.kind == ThickSupport::Kind::Full);
}

TEST_CASE("support containment order")
{
    auto full = ThickSupport::full();
    auto s23 = ThickSupport::max_set({zi(2), zi(3)});
    auto s2 = ThickSupport::max_set({zi(2)});
    CHECK(full.contains(s23));
    CHECK(full.contains(full));
    CHECK(s23.contains(s2));
    CHECK_FALSE(s2.contains(s23));
    CHECK_FALSE(s2.contains(full));
}

TEST_CASE("chi_F basics")
{
    CHECK(chi_F(unit_complex(Z)) == 1);
    CHECK(chi_F(moore(Z, zi(2))) == 0);
    CHECK(chi_F(shift(unit_complex(Z), 1)) == -1);
    for (int it = 0; it < 20; it++) {
        PerfectComplex X = random_torsion_complex(rng, {2, 5}, 3, 2);
        CHECK(chi_F(X) == 0); // torsion complexes are generically trivial
    }
}

TEST_CASE("lambda_p on cyclic models")
{
    CHECK(lambda_p(moore(Z, zi(3)), zi(3)) == 1);
    CHECK(lambda_p(moore(Z, zi(9)), zi(3)) == 2);
    CHECK(lambda_p(moore(Z, zi(9)), zi(2)) == 0);
    CHECK(lambda_p(shift(moore(Z, zi(8)), 1), zi(2)) == -3);
    // non-canonical prime input is canonicalized
    CHECK(lambda_p(moore(Z, zi(9)), zi(-3)) == 2);
    // non-torsion input refused
    CHECK_THROWS_AS(lambda_p(unit_complex(Z), zi(2)), DomainError);
}

TEST_CASE("lambda_p additive over direct sums and cones")
{
    for (int it = 0; it < 20; it++) {
        PerfectComplex X = random_torsion_complex(rng, {2, 3}, 3, 2);
        PerfectComplex Y = random_torsion_complex(rng, {2, 3}, 3, 2);
        for (long p : {2L, 3L}) {
            CHECK(lambda_p(direct_sum(X, Y), zi(p)) ==
                  lambda_p(X, zi(p)) + lambda_p(Y, zi(p)));
        }
        ChainMap f = random_chain_map(X, Y, rng);
        for (long p : {2L, 3L}) {
            CHECK(lambda_p(cone(f), zi(p)) == lambda_p(Y, zi(p)) - lambda_p(X, zi(p)));
        }
    }
}

TEST_CASE("lambda over F_p[x]")
{
    GroundRing R = GroundRing::fpx(2);
    Elem x;
    x.poly = {0, 1}; // x
    Elem q;
    q.poly = {1, 1, 1}; // 1+x+x^2, irreducible over F_2
    CHECK(lambda_p(moore(R, x), x) == 1);
    Elem x2 = mul(R, x, x);
    CHECK(lambda_p(moore(R, x2), x) == 2);
    CHECK(lambda_p(moore(R, x), q) == 0);
}

TEST_CASE("lambda_artin over a local quotient")
{
    GroundRing Zq = GroundRing::quotient(Z, zi(2), 2); // Z/4
    // residue-field Euler characteristic: unit complex contributes one
    // k-dimension in degree 0
    CHECK(lambda_artin(unit_complex(Zq), 0) == 1);
    Mat d(1, 1);
    d.at(0, 0) = ring_from_int(Zq, 2);
    PerfectComplex X = make_complex(Zq, 0, {1, 1}, {d}); // Z/4 ->2 Z/4
    // d vanishes mod 2, so both degrees contribute a full k-dimension
    CHECK(lambda_artin(X, 0) == 0);
    Mat u(1, 1);
    u.at(0, 0) = ring_from_int(Zq, 3); // a unit: acyclic over the residue field
    PerfectComplex Y = make_complex(Zq, 0, {1, 1}, {u});
    CHECK(lambda_artin(Y, 0) == 0);
}

TEST_CASE("lambda_artin equals the alternating term rank")
{
    // the residue ranks of consecutive differentials telescope, so the
    // residue-field Euler characteristic reduces to the alternating rank
    GroundRing A = GroundRing::quotient(Z, zi(2), 2);
    std::vector<Elem> torsion = {ring_from_int(A, 2)};
    RandomComplexOptions opt;
    opt.max_summands = 3;
    opt.torsion_elements = torsion;
    for (int it = 0; it < 20; it++) {
        PerfectComplex X = random_complex(A, rng, opt);
        long alt = 0;
        for (int n = X.lo; n <= X.hi; n++) {
            alt += (n % 2 == 0 ? X.rank(n) : -X.rank(n));
        }
        CHECK(lambda_artin(X, 0) == alt);
    }
}

TEST_CASE("residue rank over Z/9")
{
    QuotSpec spec{false, 0, zi(3), 2};
    GroundRing Zq = GroundRing::quotient(Z, zi(3), 2);
    Mat M = mat_zero(Zq, 2, 2);
    M.at(0, 0) = ring_from_int(Zq, 3); // 0 mod 3
    M.at(0, 1) = ring_from_int(Zq, 2);
    M.at(1, 0) = ring_from_int(Zq, 6); // 0 mod 3
    M.at(1, 1) = ring_from_int(Zq, 4); // second row is 2 * first mod 3
    CHECK(residue_rank(spec, M) == 1);
    CHECK(residue_rank(spec, mat_identity(Zq, 3)) == 3);
    CHECK(residue_rank(spec, mat_zero(Zq, 2, 2)) == 0);
}

TEST_CASE("k0_class payloads per window")
{
    // Full window: chi only
    auto c = k0_class(unit_complex(Z), ThickSupport::full());
    CHECK(c.vector() == std::vector<mpz_class>{1});

    // MaxSet window: p-length coordinates in set order
    auto S = ThickSupport::max_set({zi(2), zi(3)});
    auto c2 = k0_class(direct_sum(moore(Z, zi(2)), moore(Z, zi(3))), S);
    CHECK(c2.vector() == std::vector<mpz_class>{1, 1});
    auto c3 = k0_class(moore(Z, zi(8)), S);
    CHECK(c3.vector() == std::vector<mpz_class>{3, 0});

    // class outside the window is refused
    CHECK_THROWS_AS(k0_class(moore(Z, zi(5)), S), DomainError);
    CHECK_THROWS_AS(k0_class(unit_complex(Z), S), DomainError);
}

TEST_CASE("k0_class over a product ring window")
{
    GroundRing A = GroundRing::quotient(Z, zi(2), 2);
    GroundRing B = GroundRing::quotient(Z, zi(3), 2);
    GroundRing R = GroundRing::product({A, B});
    PerfectComplex X = assemble_product(R, {unit_complex(A), unit_complex(B)});
    auto S = ThickSupport::component_set({0, 1});
    auto c = k0_class(X, S);
    CHECK(c.vector() == std::vector<mpz_class>{1, 1}); // one k-dimension each
}

TEST_CASE("k0 roundtrip agrees with chi and rejects nothing valid")
{
    for (int it = 0; it < 20; it++) {
        RandomComplexOptions opt;
        opt.torsion_elements = {zi(2), zi(9)};
        PerfectComplex X = random_complex(Z, rng, opt);
        CHECK(k0_module_roundtrip(X) == chi_F(X));
    }
}

TEST_CASE("k0 shift acts by minus one")
{
    auto S = ThickSupport::max_set({zi(2)});
    PerfectComplex X = moore(Z, zi(4));
    auto a = k0_class(X, S).vector();
    auto b = k0_class(shift(X, 1), S).vector();
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); i++) CHECK(b[i] == -a[i]);
}

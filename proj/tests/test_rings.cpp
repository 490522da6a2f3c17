#include "doctest.h"

#include "cofib/ring.hpp"

using namespace cofib;

static Elem zi(long v)
{
    return ring_from_int(GroundRing::integers(), v);
}

TEST_CASE("integer primality")
{
    GroundRing Z = GroundRing::integers();
    CHECK(is_prime_elem(Z, zi(7)));
    CHECK_FALSE(is_prime_elem(Z, zi(1)));
    CHECK_FALSE(is_prime_elem(Z, zi(0)));
    CHECK_FALSE(is_prime_elem(Z, zi(91)));
    CHECK(is_prime_elem(Z, zi(-13)));
    CHECK(is_prime_elem(Z, zi(1000003)));
    CHECK_THROWS_AS(is_prime_elem(GroundRing::quotient(Z, zi(3), 2), zi(3)),
                    DomainError);
}

TEST_CASE("polynomial irreducibility over F_2")
{
    GroundRing F2x = GroundRing::fpx(2);
    Elem f;
    f.poly = {1, 1, 1}; // x^2+x+1

    // brute-force oracle: no root in F_2 and degree 2
    auto eval = [&](const Poly& g, long t) {
        long v = 0, pw = 1;
        for (long c : g) {
            v = (v + c * pw) % 2;
            pw = (pw * t) % 2;
        }
        return v;
    };
    CHECK(eval(f.poly, 0) == 1);
    CHECK(eval(f.poly, 1) == 1);
    CHECK(is_prime_elem(F2x, f));

    Elem g;
    g.poly = {1, 0, 1}; // x^2+1 = (x+1)^2 over F_2
    CHECK_FALSE(is_prime_elem(F2x, g));
    Elem x;
    x.poly = {0, 1};
    CHECK(is_prime_elem(F2x, x));
    Elem c;
    c.poly = {1};
    CHECK_FALSE(is_prime_elem(F2x, c));
}

TEST_CASE("irreducibility agrees with brute force over F_3 up to degree 4")
{
    GroundRing F3x = GroundRing::fpx(3);
    auto monic = [](long p, long d, long idx) {
        Poly f(d + 1, 0);
        f[d] = 1;
        for (long i = 0; i < d; i++) {
            f[i] = idx % p;
            idx /= p;
        }
        return f;
    };
    // multiply two polynomials mod 3
    auto mul3 = [](const Poly& a, const Poly& b) {
        Poly r(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); i++) {
            for (size_t j = 0; j < b.size(); j++) r[i + j] = (r[i + j] + a[i] * b[j]) % 3;
        }
        return r;
    };
    for (long d = 2; d <= 4; d++) {
        long count = 1;
        for (long i = 0; i < d; i++) count *= 3;
        for (long idx = 0; idx < count; idx++) {
            Poly f = monic(3, d, idx);
            bool reducible = false;
            for (long d1 = 1; d1 <= d / 2 && !reducible; d1++) {
                long c1 = 1, c2 = 1;
                for (long i = 0; i < d1; i++) c1 *= 3;
                for (long i = 0; i < d - d1; i++) c2 *= 3;
                for (long i1 = 0; i1 < c1 && !reducible; i1++) {
                    for (long i2 = 0; i2 < c2; i2++) {
                        if (mul3(monic(3, d1, i1), monic(3, d - d1, i2)) == f) {
                            reducible = true;
                            break;
                        }
                    }
                }
            }
            Elem e;
            e.poly = f;
            CHECK(is_prime_elem(F3x, e) == !reducible);
        }
    }
}

TEST_CASE("quotient ring arithmetic and valuation")
{
    GroundRing Z = GroundRing::integers();
    GroundRing R = GroundRing::quotient(Z, zi(3), 2); // Z/9
    Elem six = ring_from_int(R, 6);
    Elem four = ring_from_int(R, 13); // reduces to 4
    CHECK(four.z == 4);
    CHECK(quot_valuation(R, six) == 1);
    CHECK(quot_valuation(R, four) == 0);
    CHECK(quot_valuation(R, ring_zero(R)) == 2);
    CHECK(is_unit(R, four));
    CHECK_FALSE(is_unit(R, six));
    Elem inv = inverse(R, four);
    CHECK(mul(R, four, inv) == ring_one(R));
    CHECK(quot_q_power(R, 1).z == 3);
    CHECK(quot_q_power(R, 2).z == 0);

    // unit part: 6 = 2 * 3
    CHECK(quot_unit_part(R, six).z == 2);
    CHECK(exact_div(R, six, ring_from_int(R, 3)).z == 2);
}

TEST_CASE("quotient of F_2[x] by an irreducible square")
{
    GroundRing F2x = GroundRing::fpx(2);
    Elem f;
    f.poly = {1, 1, 1};
    GroundRing R = GroundRing::quotient(F2x, f, 2); // F_2[x]/(x^2+x+1)^2
    Elem x = reduce(R, Elem{.poly = {0, 1}});
    CHECK(quot_valuation(R, x) == 0);
    Elem inv = inverse(R, x);
    CHECK(mul(R, x, inv) == ring_one(R));
    Elem fq = reduce(R, f);
    CHECK(quot_valuation(R, fq) == 1);
    CHECK(is_zero(R, mul(R, fq, fq)));
}

TEST_CASE("product ring componentwise ops")
{
    GroundRing Z = GroundRing::integers();
    GroundRing R = GroundRing::product(
        {GroundRing::quotient(Z, zi(2), 2), GroundRing::quotient(Z, zi(3), 2)});
    Elem a = ring_from_int(R, 7); // (3 mod 4, 7 mod 9)
    CHECK(product_part(R, a, 0).z == 3);
    CHECK(product_part(R, a, 1).z == 7);
    CHECK(is_unit(R, a));
    Elem b = mul(R, a, inverse(R, a));
    CHECK(b == ring_one(R));
    Elem two = ring_from_int(R, 2);
    CHECK_FALSE(is_unit(R, two)); // zero divisor-ish: unit mod 9, not mod 4
    CHECK_THROWS_AS(canonical_split(R, a), DomainError);
}

TEST_CASE("exgcd over both PIDs")
{
    GroundRing Z = GroundRing::integers();
    auto eg = exgcd(Z, zi(12), zi(18));
    CHECK(eg.g.z == 6);
    CHECK(add(Z, mul(Z, eg.s, zi(12)), mul(Z, eg.t, zi(18))) == eg.g);

    GroundRing F5x = GroundRing::fpx(5);
    Elem a, b;
    a.poly = {4, 0, 1}; // x^2+4 = (x+1)(x+4) mod 5
    b.poly = {1, 1};    // x+1
    auto eh = exgcd(F5x, a, b);
    CHECK(eh.g.poly == Poly{1, 1});
    CHECK(add(F5x, mul(F5x, eh.s, a), mul(F5x, eh.t, b)) == eh.g);
}

TEST_CASE("factorization")
{
    GroundRing Z = GroundRing::integers();
    auto f = factor(Z, zi(360));
    REQUIRE(f.size() == 3);
    CHECK(f[0].first.z == 2);
    CHECK(f[0].second == 3);
    CHECK(f[1].first.z == 3);
    CHECK(f[1].second == 2);
    CHECK(f[2].first.z == 5);
    CHECK(f[2].second == 1);

    GroundRing F2x = GroundRing::fpx(2);
    Elem g;
    g.poly = {0, 1, 0, 1, 0, 1}; // x(x^2+x+1)^2 = x^5+x^3+x over F_2
    auto h = factor(F2x, g);
    REQUIRE(h.size() == 2);
    CHECK(h[0].first.poly == Poly{0, 1});
    CHECK(h[0].second == 1);
    CHECK(h[1].first.poly == Poly{1, 1, 1});
    CHECK(h[1].second == 2);
}

TEST_CASE("canonical associates")
{
    GroundRing Z = GroundRing::integers();
    auto cs = canonical_split(Z, zi(-6));
    CHECK(cs.canon.z == 6);
    CHECK(cs.unit.z == -1);

    GroundRing F3x = GroundRing::fpx(3);
    Elem a;
    a.poly = {1, 2}; // 2x+1
    auto ct = canonical_split(F3x, a);
    CHECK(ct.canon.poly == Poly{2, 1}); // monic: x+2
    CHECK(mul(F3x, ct.unit, ct.canon) == a);
}

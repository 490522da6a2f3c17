#include "doctest.h"

#include <random>

#include "cofib/json_io.hpp"
#include "cofib/random_gen.hpp"

using namespace cofib;

namespace {

GroundRing Z = GroundRing::integers();
std::mt19937_64 rng(112233);

Elem zi(long v) { return ring_from_int(Z, v); }

} // namespace

TEST_CASE("ring serialization round trips")
{
    std::vector<GroundRing> rings = {
        Z,
        GroundRing::fpx(7),
        GroundRing::quotient(Z, zi(2), 3),
        GroundRing::product({GroundRing::quotient(Z, zi(2), 2),
                             GroundRing::quotient(Z, zi(3), 2)}),
    };
    for (const auto& R : rings) {
        CHECK(ring_from_json(ring_to_json(R)) == R);
    }
}

TEST_CASE("element serialization: strings, numbers, polys, products")
{
    // big integers as decimal strings
    mpz_class big("123456789012345678901234567890");
    Elem x = ring_from_mpz(Z, big);
    json j = elem_to_json(Z, x);
    CHECK(j.is_string());
    CHECK(elem_from_json(Z, j) == x);
    // plain numbers accepted on input
    CHECK(elem_from_json(Z, json(42)).z == 42);

    GroundRing F = GroundRing::fpx(3);
    Elem p;
    p.poly = {1, 0, 2};
    CHECK(elem_from_json(F, elem_to_json(F, p)) == p);

    GroundRing R = GroundRing::product({GroundRing::quotient(Z, zi(2), 2),
                                        GroundRing::quotient(Z, zi(3), 1)});
    Elem pr = ring_from_int(R, 5);
    CHECK(elem_from_json(R, elem_to_json(R, pr)) == pr);
}

TEST_CASE("matrix and complex round trips")
{
    for (int it = 0; it < 10; it++) {
        PerfectComplex X = random_torsion_complex(rng, {2, 3}, 3, 2);
        json j = complex_to_json(X);
        PerfectComplex Y = complex_from_json(j);
        CHECK(X == Y);
    }
    // malformed: differential with wrong shape
    json bad = complex_to_json(moore(Z, zi(2)));
    bad["ranks"] = json::array({2, 1});
    CHECK_THROWS_AS(complex_from_json(bad), DomainError);
}

TEST_CASE("chain map round trip validates")
{
    PerfectComplex X = moore(Z, zi(2)), Y = moore(Z, zi(4));
    ChainMap f = random_chain_map(X, Y, rng);
    ChainMap g = chain_map_from_json(chain_map_to_json(f));
    CHECK(g.source == f.source);
    CHECK(g.components == f.components);
}

TEST_CASE("support and subgroup round trips")
{
    auto S = ThickSupport::max_set({zi(2), zi(5)});
    CHECK(support_from_json(Z, support_to_json(Z, S)) == S);
    CHECK(support_from_json(Z, json("Full")) == ThickSupport::full());
    // composite entries rejected
    CHECK_THROWS_AS(support_from_json(Z, json{{"max", {"6"}}}), DomainError);

    SubgroupSpec H = subgroup_from_generators(Z, S, {{2, 0}, {0, 5}});
    SubgroupSpec H2 = subgroup_from_json(Z, subgroup_to_json(Z, H));
    CHECK(H == H2);
}

TEST_CASE("certificate round trip")
{
    Certificate cert = plan(moore(Z, zi(8)), ThickSupport::max_set({zi(2)}));
    json j = certificate_to_json(cert);
    Certificate back = certificate_from_json(j);
    CHECK(back.atoms == cert.atoms);
    CHECK(back.steps == cert.steps);
    CHECK(back.final_id == cert.final_id);
    CHECK(back.claimed == cert.claimed);
    CHECK(verify(back).ok);
    // structural tampering in the document is caught on parse or verify
    json j2 = j;
    j2["final"] = "missing";
    Certificate t = certificate_from_json(j2);
    CHECK_FALSE(verify(t).ok);
}

TEST_CASE("fp complex documents")
{
    json doc = {
        {"p", 3},
        {"groups", {{"0", {2, 1}}, {"1", {1}}}},
        {"diff", {{"1", {{3}, {1}}}}},
    };
    FpComplex C = fp_complex_from_json(doc);
    CHECK(C.p == 3);
    CHECK(C.group(0).exponents == std::vector<long>{2, 1});
    CHECK(C.group(1).exponents == std::vector<long>{1});
    CHECK(C.d(1).rows == 2);
    json back = fp_complex_to_json(C);
    FpComplex C2 = fp_complex_from_json(back);
    CHECK(C2.groups == C.groups);

    json bad = doc;
    bad["p"] = 6;
    CHECK_THROWS_AS(fp_complex_from_json(bad), DomainError);
}

TEST_CASE("profile round trip")
{
    PerfectComplex X = random_torsion_complex(rng, {2, 3, 5}, 4, 2);
    auto H = homology(X);
    CHECK(profile_from_json(Z, profile_to_json(Z, H)) == H);
}

TEST_CASE("stable dump is byte-identical across calls")
{
    PerfectComplex X = random_torsion_complex(rng, {2, 3}, 3, 2);
    json j = complex_to_json(X);
    std::string a = json_dump_stable(j);
    std::string b = json_dump_stable(complex_to_json(X));
    CHECK(a == b);
    CHECK(a.back() == '\n');
}

TEST_CASE("parse failures raise MalformedInput")
{
    CHECK_THROWS_AS(ring_from_json(json{{"kind", "nope"}}), DomainError);
    CHECK_THROWS_AS(elem_from_json(Z, json{{"oops", 1}}), DomainError);
    CHECK_THROWS_AS(mat_from_json(Z, json{{"rows", 2}}), DomainError);
    try {
        ring_from_json(json{{"kind", "nope"}});
    } catch (const DomainError& e) {
        CHECK(e.name() == "MalformedInput");
    }
}

#ifndef COFIB_PGROUP_HPP
#define COFIB_PGROUP_HPP

#include <map>
#include <random>

#include "cofib/snf.hpp"

namespace cofib {

// Finite abelian p-group, exponents of the cyclic summands descending:
// (a1 >= a2 >= ...) stands for Z/p^a1 + Z/p^a2 + ...
struct FpAbGroup {
    long p = 2;
    std::vector<long> exponents;

    long gens() const { return (long)exponents.size(); }
    long log_order() const; // log_p of the order
    bool trivial() const { return exponents.empty(); }
    bool operator==(const FpAbGroup& o) const = default;
    std::string str() const;
};

// Bounded complex of finite abelian p-groups; maps given by integer
// matrices acting on the chosen cyclic generators. Valid when each entry
// respects the orders (p^bj | m_ji p^ai) and consecutive maps compose to
// zero in the target group.
struct FpComplex {
    long p = 2;
    int lo = 0, hi = -1;
    std::map<int, FpAbGroup> groups;
    std::map<int, Mat> diffs; // diffs[n] : groups[n] -> groups[n-1], entries over Z

    FpAbGroup group(int n) const;
    Mat d(int n) const;
};

void validate_fp(const FpComplex& C); // throws NotPerfect

std::map<int, FpAbGroup> fp_homology(const FpComplex& C);

// Alternating sum of log_p orders of a graded collection of p-groups.
long chi_p(long p, const std::map<int, FpAbGroup>& groups);

// The exactness bookkeeping identity: the alternating length of the
// complex equals the alternating length of its homology.
struct LengthCheck {
    long from_terms = 0, from_homology = 0;
    bool equal = false;
};
LengthCheck length_identity_check(const FpComplex& C);

// Exhaustive oracle for tiny groups: enumerates the degree-n group, its
// kernel and the image elementwise and recovers the exponent multiset of
// the quotient from element-order counts. Nullopt when the groups at n or
// n+1 exceed `max_order` elements.
std::optional<std::vector<long>> fp_homology_degree_bruteforce(const FpComplex& C,
                                                               int n,
                                                               long max_order = 4096);

FpComplex random_fp_complex(long p, std::mt19937_64& rng, int max_positions = 4,
                            int max_gens = 3, int max_exp = 3);

} // namespace cofib

#endif

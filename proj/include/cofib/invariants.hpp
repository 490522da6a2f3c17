#ifndef COFIB_INVARIANTS_HPP
#define COFIB_INVARIANTS_HPP

#include <set>

#include "cofib/complex.hpp"

namespace cofib {

// Homological support, recorded as one of three shapes:
//  - Full: the support meets the generic point (PID ambient, free homology);
//  - MaxSet: a finite set of closed points of Spec of a PID;
//  - ComponentSet: a set of factor indices of a product ring.
struct ThickSupport {
    enum class Kind { Full, MaxSet, ComponentSet };

    Kind kind = Kind::Full;
    std::set<Elem> primes;   // MaxSet: canonical prime elements
    std::set<int> components; // ComponentSet

    static ThickSupport full() { return {}; }
    static ThickSupport max_set(std::set<Elem> ps)
    {
        return {Kind::MaxSet, std::move(ps), {}};
    }
    static ThickSupport component_set(std::set<int> cs)
    {
        return {Kind::ComponentSet, {}, std::move(cs)};
    }

    bool contains(const ThickSupport& other) const;
    bool operator==(const ThickSupport& o) const = default;
    std::string str(const GroundRing& R) const;
};

ThickSupport supp(const PerfectComplex& X);

// Euler characteristic with respect to the fraction field (PID ambient):
// alternating sum of homology free ranks = alternating sum of term ranks.
long chi_F(const PerfectComplex& X);

// p-local Euler characteristic of a torsion complex over a PID: alternating
// sum of p-lengths of homology. Throws NonTorsionInput when the support
// meets the generic point.
long lambda_p(const PerfectComplex& X, const Elem& p);

// Length-based Euler characteristic of one factor of a product-ring complex:
// alternating sum of residue-field dimensions of component homology.
long lambda_artin(const PerfectComplex& X, int comp);

// A K-theory class expressed in the canonical basis attached to a support.
struct K0Element {
    ThickSupport ambient;
    long chi = 0;                 // Full ambient payload
    std::map<Elem, long> coords;  // MaxSet ambient: prime -> p-length
    std::map<int, long> comp_coords; // ComponentSet ambient

    std::vector<mpz_class> vector() const; // coordinates in basis order
    bool operator==(const K0Element& o) const = default;
};

// Class of X in the K-group attached to the support window S; requires
// supp(X) inside S (UnsupportedSupport otherwise).
K0Element k0_class(const PerfectComplex& X, const ThickSupport& S);

// Returns the alternating rank sum of the terms after asserting it equals
// the alternating free rank of homology (the additivity bookkeeping).
long k0_module_roundtrip(const PerfectComplex& X);

// Rank of a matrix over the residue field base/(q) of one local factor.
long residue_rank(const QuotSpec& spec, const Mat& M);

} // namespace cofib

#endif

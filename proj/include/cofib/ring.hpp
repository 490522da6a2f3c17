#ifndef COFIB_RING_HPP
#define COFIB_RING_HPP

#include <compare>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cofib/error.hpp"

namespace cofib {

// Polynomial over F_p: ascending coefficients in [0,p), no trailing zeros.
using Poly = std::vector<long>;

// A ring element. Exactly one payload is meaningful, selected by the owning
// GroundRing: `z` for Z and quotients of Z, `poly` for F_p[x] and quotients
// of F_p[x], `comp` for product rings.
struct Elem {
    mpz_class z;
    Poly poly;
    std::vector<Elem> comp;

    bool operator==(const Elem& o) const;
    bool operator<(const Elem& o) const; // total order, for canonical containers
};

// One Artin local factor: base/(q^e) with base = Z or F_p[x].
struct QuotSpec {
    bool poly_base = false;
    long p = 0; // base characteristic when poly_base
    Elem q;     // canonical prime element of the base
    long e = 1;

    bool operator==(const QuotSpec& o) const;
};

struct GroundRing {
    enum class Kind { Z, Fpx, Quot, Product };

    Kind kind = Kind::Z;
    long p = 0;                  // Fpx
    QuotSpec quot;               // Quot
    std::vector<QuotSpec> comps; // Product, nonempty

    static GroundRing integers();
    static GroundRing fpx(long p);
    static GroundRing quotient(const GroundRing& base, const Elem& q, long e);
    static GroundRing product(const std::vector<GroundRing>& locals);

    bool is_pid() const { return kind == Kind::Z || kind == Kind::Fpx; }
    bool poly_flavor() const; // payload lives in `poly`
    GroundRing base_ring() const;      // Quot only
    GroundRing component(int i) const; // Product only: the i-th local ring
    std::string describe() const;

    bool operator==(const GroundRing& o) const;
    bool operator!=(const GroundRing& o) const { return !(*this == o); }
};

// A point of Spec(R) as the classifications use it.
struct PrimeId {
    enum class Kind { Generic, Max, Component };
    Kind kind = Kind::Generic;
    Elem gen;     // Max: canonical prime element of the ambient PID
    int comp = 0; // Component index, Product ambient

    static PrimeId generic() { return {}; }
    static PrimeId max(Elem g) { return {Kind::Max, std::move(g), 0}; }
    static PrimeId component(int i) { return {Kind::Component, {}, i}; }

    bool operator==(const PrimeId& o) const;
    bool operator<(const PrimeId& o) const;
    std::string str() const;
};

// --- element constructors and arithmetic -----------------------------------

Elem ring_zero(const GroundRing& R);
Elem ring_one(const GroundRing& R);
Elem ring_from_int(const GroundRing& R, long v);
Elem ring_from_mpz(const GroundRing& R, const mpz_class& v);

// Canonical representative (residues reduced, trailing zero coeffs stripped).
Elem reduce(const GroundRing& R, const Elem& x);

Elem add(const GroundRing& R, const Elem& a, const Elem& b);
Elem sub(const GroundRing& R, const Elem& a, const Elem& b);
Elem neg(const GroundRing& R, const Elem& a);
Elem mul(const GroundRing& R, const Elem& a, const Elem& b);
Elem pow_elem(const GroundRing& R, const Elem& a, long n);

bool is_zero(const GroundRing& R, const Elem& a);
bool is_unit(const GroundRing& R, const Elem& a);

// Multiplicative inverse of a unit.
Elem inverse(const GroundRing& R, const Elem& a);

// Euclidean division over a PID: a = q*b + r with size(r) < size(b).
struct DivMod {
    Elem quot, rem;
};
DivMod divmod(const GroundRing& R, const Elem& a, const Elem& b);
bool divides(const GroundRing& R, const Elem& a, const Elem& b); // a | b
Elem exact_div(const GroundRing& R, const Elem& a, const Elem& b);

// Euclidean size for pivoting: |a| over Z, degree over F_p[x].
mpz_class euclid_size(const GroundRing& R, const Elem& a);

// gcd with Bezout coefficients: g = s*a + t*b, g canonical.
struct ExtGcd {
    Elem g, s, t;
};
ExtGcd exgcd(const GroundRing& R, const Elem& a, const Elem& b);
Elem gcd_elem(const GroundRing& R, const Elem& a, const Elem& b);

// x = unit * canonical; returns {canonical, unit}. Canonical associates are
// nonnegative over Z, monic over F_p[x].
struct CanonSplit {
    Elem canon, unit;
};
CanonSplit canonical_split(const GroundRing& R, const Elem& x);

// --- local quotient helpers -------------------------------------------------

// q-adic valuation of a residue; returns e for zero.
long quot_valuation(const GroundRing& R, const Elem& x);
// x = unit * q^val; returns the unit part (a unit of the quotient ring).
Elem quot_unit_part(const GroundRing& R, const Elem& x);
// canonical q^v as a residue.
Elem quot_q_power(const GroundRing& R, long v);

// --- product helpers ---------------------------------------------------------

Elem product_pack(const GroundRing& R, std::vector<Elem> parts);
Elem product_part(const GroundRing& R, const Elem& x, int i);

// --- primes and factorization -----------------------------------------------

// True iff x generates a maximal ideal of the PID R.
bool is_prime_elem(const GroundRing& R, const Elem& x);

// Prime factorization of a nonzero element of a PID; canonical primes in
// ascending order, unit part discarded. Desk-scale only.
std::vector<std::pair<Elem, long>> factor(const GroundRing& R, const Elem& x);

// --- misc --------------------------------------------------------------------

std::string elem_str(const GroundRing& R, const Elem& x);
std::string poly_str(const Poly& f);

// degree of a polynomial, -1 for zero
inline long poly_deg(const Poly& f) { return static_cast<long>(f.size()) - 1; }

} // namespace cofib

#endif

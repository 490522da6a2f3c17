#ifndef COFIB_KTHEORY_HPP
#define COFIB_KTHEORY_HPP

#include "cofib/invariants.hpp"

namespace cofib {

// The K-group attached to a support window is free abelian on a canonical
// basis; this is the presentation handed to callers and printed by the CLI.
struct K0Presentation {
    long rank = 0;
    std::vector<std::string> basis; // labels in coordinate order
};

K0Presentation k0_group(const GroundRing& R, const ThickSupport& S);

// A subgroup of the K-group attached to a support window. Constraints are
// spelled out on a finite ordered carrier of coordinates; coordinates at
// support points outside the carrier follow `outside` (pinned to zero or
// unconstrained). A Full window has a rank-one K-group and an empty carrier.
struct SubgroupSpec {
    enum class Outside { Zero, Free };

    ThickSupport support;
    std::vector<Elem> carrier;     // MaxSet window: ordered primes inside support
    std::vector<int> comp_carrier; // ComponentSet window
    IntLattice lattice;            // ambient dim = carrier size (1 for Full)
    Outside outside = Outside::Zero;

    bool operator==(const SubgroupSpec& o) const = default;
};

// Carrier spanning the whole (finite) window, generators in its coordinates.
SubgroupSpec subgroup_from_generators(const GroundRing& R, const ThickSupport& S,
                                      const std::vector<std::vector<mpz_class>>& gens);

// True iff supp(X) lies inside the window and the class of X satisfies the
// carrier lattice and the outside constraint.
bool is_member(const PerfectComplex& X, const SubgroupSpec& H);

// Subgroup generated by the classes of the given complexes: carrier is the
// union of their supports, outside coordinates pinned to zero.
SubgroupSpec image_subgroup(const std::vector<PerfectComplex>& gens,
                            const ThickSupport& S);

// Ring-theoretic flags of the dense subcategory attached to H.
//  - ideal: H is a submodule for the K0-ring action (idempotent closure in
//    the componentwise case; automatic over a window of closed points);
//  - prime / maximal: meaningful when the K-group carries a ring structure
//    (Full window over a PID, or componentwise over a product); both are
//    reported false for a MaxSet window, whose K-group is only a module.
struct SubgroupFlags {
    bool ideal = false, prime = false, maximal = false;
};

SubgroupFlags classify_subgroup(const GroundRing& R, const SubgroupSpec& H);

// Per-coordinate divisibility test: can Y be assembled from finite direct
// sums, shifts and cones on the generators? Verdict = support containment
// plus one divisibility row per relevant point.
struct GenDecision {
    bool verdict = false;
    bool support_ok = false;
    struct Row {
        std::string point;
        mpz_class required;  // gcd of generator coordinates
        mpz_class candidate; // coordinate of the target
        bool divides = false;
    };
    std::vector<Row> rows;
};

GenDecision can_generate(const std::vector<PerfectComplex>& gens,
                         const PerfectComplex& Y);

} // namespace cofib

#endif

#ifndef COFIB_GENERATION_HPP
#define COFIB_GENERATION_HPP

#include "cofib/invariants.hpp"

namespace cofib {

// A certificate is a straight-line program: atoms (shifted unit or Moore
// complexes), then cone steps, each taking a chain map between shifts of
// previously built objects. Replay is purely mechanical; `verify` rebuilds
// everything, rechecks every chain-map condition and compares the homology
// of the final object against the claimed profile.

struct AtomSpec {
    bool unit = true; // false: Moore complex of `p`
    Elem p;
    int shift = 0;

    bool operator==(const AtomSpec& o) const = default;
};

struct ObjRef {
    std::string id; // empty id refers to the zero complex
    int shift = 0;

    bool operator==(const ObjRef& o) const = default;
};

struct CertStep {
    std::string id; // name of the cone being built
    ObjRef src, dst;
    std::map<int, Mat> components; // the chain map src -> dst

    bool operator==(const CertStep& o) const = default;
};

struct Certificate {
    GroundRing ring;
    std::vector<AtomSpec> atoms; // named a0, a1, ... in order
    std::vector<CertStep> steps;
    std::string final_id; // empty means the zero complex
    HomologyProfile claimed;
};

// Lowest-degree torsion killing: a chain map alpha from a shifted Moore
// complex of p into X whose cone has p-length one less than X. X must be
// torsion with p in its support at the bottom torsion degree.
struct KillResult {
    ChainMap alpha;           // shift(moore(p), k) -> X
    PerfectComplex residual;  // cone(alpha)
    Elem prime;
    int degree = 0;           // k, the degree of the killed class
};

KillResult kill_bottom_class(const PerfectComplex& X, const Elem& p);

enum class PlanStrategy { Formality, KillBottom };

// Produce a certificate building a complex quasi-isomorphic to Y from the
// atoms allowed by the window S. Step count is bounded by
// 2 * (torsion length) + (number of homology summands).
Certificate plan(const PerfectComplex& Y, const ThickSupport& S,
                 PlanStrategy strategy = PlanStrategy::Formality);

// Certificate synthesis is only effective from the standard atoms; for any
// other generator set the sufficiency argument is non-constructive, so the
// planner refuses (UnsupportedGenerators) even when can_generate says yes.
Certificate plan_from_generators(const PerfectComplex& Y,
                                 const std::vector<PerfectComplex>& gens);

struct VerifyReport {
    bool ok = false;
    std::string failing_step; // empty on success
    std::string reason;
};

VerifyReport verify(const Certificate& cert);

// Replay the certificate and return the object a reference denotes.
PerfectComplex replay(const Certificate& cert, const ObjRef& ref);

} // namespace cofib

#endif

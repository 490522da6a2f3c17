#ifndef COFIB_COMPLEX_HPP
#define COFIB_COMPLEX_HPP

#include <map>

#include "cofib/snf.hpp"

namespace cofib {

// Quasi-isomorphism class of one homology module: free rank plus the
// invariant-factor divisor chain t1 | t2 | ... (canonical non-unit, nonzero).
struct ModuleClass {
    long free_rank = 0;
    std::vector<Elem> factors;

    bool trivial() const { return free_rank == 0 && factors.empty(); }
    bool operator==(const ModuleClass& o) const = default;
};

// degree -> ModuleClass, trivial degrees omitted
using HomologyProfile = std::map<int, ModuleClass>;

// Bounded complex of finite free modules; d lowers degree by one.
struct PerfectComplex {
    GroundRing ring;
    int lo = 0, hi = -1; // empty complex when hi < lo
    std::map<int, int> ranks;
    std::map<int, Mat> diff; // diff[n] : rank(n) -> rank(n-1)

    bool empty() const { return hi < lo; }
    int rank(int n) const;
    Mat d(int n) const; // zero matrix of the right shape when absent

    bool operator==(const PerfectComplex& o) const = default;
};

struct ChainMap {
    PerfectComplex source, target;
    std::map<int, Mat> components; // f[n] : source rank(n) -> target rank(n)

    Mat at(int n) const;
};

// --- constructors -------------------------------------------------------------

PerfectComplex zero_complex(const GroundRing& R);
// R concentrated in degree 0.
PerfectComplex unit_complex(const GroundRing& R);
// R ->x R in degrees 1,0.
PerfectComplex moore(const GroundRing& R, const Elem& x);
PerfectComplex make_complex(const GroundRing& R, int lo, const std::vector<int>& ranks,
                            const std::vector<Mat>& diffs);

// --- validation ---------------------------------------------------------------

// Confirms shapes, boundedness and d*d = 0; throws NotPerfect otherwise.
void validate(const PerfectComplex& X);
void validate(const ChainMap& f);

// --- triangulated operations --------------------------------------------------

PerfectComplex shift(const PerfectComplex& X, int k);
PerfectComplex direct_sum(const PerfectComplex& X, const PerfectComplex& Y);
PerfectComplex cone(const ChainMap& f);
PerfectComplex tensor(const PerfectComplex& X, const PerfectComplex& Y);

ChainMap identity_map(const PerfectComplex& X);
ChainMap zero_map(const PerfectComplex& X, const PerfectComplex& Y);
ChainMap shift_map(const ChainMap& f, int k);
// cone(f) -> source[1], the canonical projection.
ChainMap cone_projection(const ChainMap& f, const PerfectComplex& cone_of_f);
// target -> cone(f), the canonical inclusion.
ChainMap cone_inclusion(const ChainMap& f, const PerfectComplex& cone_of_f);
ChainMap compose(const ChainMap& g, const ChainMap& f); // g after f

// --- homology -----------------------------------------------------------------

HomologyProfile homology(const PerfectComplex& X);

// PID-only presentation data for one degree: column i of `gens` generates the
// i-th cyclic summand (order `orders[i]`, zero meaning free) in C_n coordinates.
struct DegreePresentation {
    Mat gens;
    std::vector<Elem> orders;
};
DegreePresentation homology_presentation(const PerfectComplex& X, int n);

// Quasi-isomorphism class comparison over a PID (homology determines the
// class in global dimension <= 1); refuses non-hereditary rings.
bool quasi_class_equal(const PerfectComplex& X, const PerfectComplex& Y);

// --- products -----------------------------------------------------------------

std::vector<PerfectComplex> split_product(const PerfectComplex& X);
// Inverse direction: assemble a product-ring complex from component complexes.
PerfectComplex assemble_product(const GroundRing& R,
                                const std::vector<PerfectComplex>& parts);

// --- misc ---------------------------------------------------------------------

std::string profile_str(const GroundRing& R, const HomologyProfile& H);
long total_torsion_length(const PerfectComplex& X); // sum over primes and degrees

} // namespace cofib

#endif

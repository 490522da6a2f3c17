#ifndef COFIB_RANDOM_GEN_HPP
#define COFIB_RANDOM_GEN_HPP

#include <random>

#include "cofib/complex.hpp"

namespace cofib {

// Deterministic generators for randomized suites. Complexes are built as
// direct sums of elementary pieces (unit shifts and Moore complexes) and then
// conjugated degreewise by random invertible matrices, so d*d = 0 holds by
// construction while the matrices look generic.

struct RandomComplexOptions {
    int max_summands = 4;
    int min_degree = -2, max_degree = 2;
    bool allow_free = true;                 // unit summands
    std::vector<Elem> torsion_elements;     // pool for Moore summands
    int scramble_ops = 6;                   // elementary conjugation moves
};

PerfectComplex random_complex(const GroundRing& R, std::mt19937_64& rng,
                              const RandomComplexOptions& opt);

// Torsion complex over Z with support inside the given primes.
PerfectComplex random_torsion_complex(std::mt19937_64& rng,
                                      const std::vector<long>& primes,
                                      int max_summands = 4, int max_exp = 3);

// Invertible matrix over R together with its inverse.
std::pair<Mat, Mat> random_invertible(const GroundRing& R, int n, std::mt19937_64& rng,
                                      int ops = 8);

// Uniformly-ish random genuine chain map X -> Y over a PID: a small random
// integer combination of a basis of the solution space of d f = f d.
ChainMap random_chain_map(const PerfectComplex& X, const PerfectComplex& Y,
                          std::mt19937_64& rng);

// Basis of the module of chain maps X -> Y over a PID.
std::vector<ChainMap> chain_map_basis(const PerfectComplex& X, const PerfectComplex& Y);

} // namespace cofib

#endif

#ifndef COFIB_SNF_HPP
#define COFIB_SNF_HPP

#include <optional>

#include "cofib/matrix.hpp"

namespace cofib {

// Smith normal form: U*M*V = D with U, V invertible over the ring and D
// diagonal with canonical entries d1 | d2 | ... . Supported over Z, F_p[x]
// (euclidean elimination) and local quotients (valuation pivoting).
// Product rings are rejected; split them first.
struct SnfResult {
    Mat U, D, V;
    int rank = 0; // number of nonzero diagonal entries
    std::vector<Elem> diag() const;
};

SnfResult snf(const GroundRing& R, const Mat& M);

// Column-style Hermite form over a PID: column operations only, zero columns
// dropped. Pivot rows strictly increase left to right, pivots are canonical
// associates, entries above a pivot are zero and entries to its left are
// reduced modulo it (nonnegative over Z, lower degree over F_p[x]).
Mat hnf_cols(const GroundRing& R, const Mat& A);

// Free basis of ker(M) over a PID, as columns (possibly zero columns -> 0-wide).
Mat kernel_basis(const GroundRing& R, const Mat& M);

// Solve M x = b over a PID; nullopt when no solution exists.
std::optional<std::vector<Elem>> solve_linear(const GroundRing& R, const Mat& M,
                                              const std::vector<Elem>& b);
// Columnwise: M X = B.
std::optional<Mat> solve_linear_mat(const GroundRing& R, const Mat& M, const Mat& B);

// Determinant (square matrices over a PID); used by tests on U, V.
Elem determinant(const GroundRing& R, const Mat& M);

// --- integer lattices ---------------------------------------------------------

struct IntLattice {
    int ambient = 0;
    Mat basis; // ambient x rank, column-style HNF over Z

    int rank() const { return basis.cols; }
    bool operator==(const IntLattice& o) const = default;
};

IntLattice lattice_from_generators(int n, const std::vector<std::vector<mpz_class>>& vecs);
bool lattice_contains(const IntLattice& L, const std::vector<mpz_class>& v);

} // namespace cofib

#endif

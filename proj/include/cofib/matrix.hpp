#ifndef COFIB_MATRIX_HPP
#define COFIB_MATRIX_HPP

#include <vector>

#include "cofib/ring.hpp"

namespace cofib {

// Dense row-major matrix over one GroundRing. The ring is carried by the
// caller, not the matrix; mixing rings is guarded at operation entry points.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<Elem> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}

    Elem& at(int i, int j) { return a[(size_t)i * cols + j]; }
    const Elem& at(int i, int j) const { return a[(size_t)i * cols + j]; }

    bool operator==(const Mat& o) const = default;
};

Mat mat_zero(const GroundRing& R, int r, int c);
Mat mat_identity(const GroundRing& R, int n);

Mat mat_add(const GroundRing& R, const Mat& A, const Mat& B);
Mat mat_neg(const GroundRing& R, const Mat& A);
Mat mat_scale(const GroundRing& R, const Elem& c, const Mat& A);

// Serial reference product; always available, used as the test oracle.
Mat mat_mul_serial(const GroundRing& R, const Mat& A, const Mat& B);
// OpenMP product over output rows; falls back to serial below a size cutoff.
Mat mat_mul(const GroundRing& R, const Mat& A, const Mat& B);

Mat mat_transpose(const Mat& A);
Mat mat_hstack(const GroundRing& R, const Mat& A, const Mat& B);
Mat mat_vstack(const GroundRing& R, const Mat& A, const Mat& B);
// Block diagonal sum.
Mat mat_block_diag(const GroundRing& R, const Mat& A, const Mat& B);
// Kronecker product, row-major blocks.
Mat mat_kron(const GroundRing& R, const Mat& A, const Mat& B);

Mat mat_submatrix(const Mat& A, int r0, int c0, int r, int c);
std::vector<Elem> mat_col(const Mat& A, int j);
Mat mat_from_cols(const GroundRing& R, int rows, const std::vector<std::vector<Elem>>& cols);
std::vector<Elem> mat_apply(const GroundRing& R, const Mat& A, const std::vector<Elem>& v);

bool mat_is_zero(const GroundRing& R, const Mat& A);
Mat mat_reduce(const GroundRing& R, const Mat& A);

std::string mat_str(const GroundRing& R, const Mat& A);

} // namespace cofib

#endif

#include "cofib/matrix.hpp"

#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cofib {

Mat mat_zero(const GroundRing& R, int r, int c)
{
    Mat M(r, c);
    for (auto& x : M.a) x = ring_zero(R);
    return M;
}

Mat mat_identity(const GroundRing& R, int n)
{
    Mat M = mat_zero(R, n, n);
    for (int i = 0; i < n; i++) M.at(i, i) = ring_one(R);
    return M;
}

static void check_shape(const Mat& A, const Mat& B, bool same)
{
    if (same) {
        if (A.rows != B.rows || A.cols != B.cols) fail("DimensionMismatch", "matrix shapes");
    } else {
        if (A.cols != B.rows) fail("DimensionMismatch", "matrix product shapes");
    }
}

Mat mat_add(const GroundRing& R, const Mat& A, const Mat& B)
{
    check_shape(A, B, true);
    Mat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); i++) C.a[i] = add(R, A.a[i], B.a[i]);
    return C;
}

Mat mat_neg(const GroundRing& R, const Mat& A)
{
    Mat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); i++) C.a[i] = neg(R, A.a[i]);
    return C;
}

Mat mat_scale(const GroundRing& R, const Elem& c, const Mat& A)
{
    Mat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); i++) C.a[i] = mul(R, c, A.a[i]);
    return C;
}

Mat mat_mul_serial(const GroundRing& R, const Mat& A, const Mat& B)
{
    check_shape(A, B, false);
    Mat C = mat_zero(R, A.rows, B.cols);
    for (int i = 0; i < A.rows; i++) {
        for (int k = 0; k < A.cols; k++) {
            const Elem& aik = A.at(i, k);
            if (is_zero(R, aik)) continue;
            for (int j = 0; j < B.cols; j++) {
                C.at(i, j) = add(R, C.at(i, j), mul(R, aik, B.at(k, j)));
            }
        }
    }
    return C;
}

Mat mat_mul(const GroundRing& R, const Mat& A, const Mat& B)
{
#ifdef _OPENMP
    check_shape(A, B, false);
    if ((long)A.rows * A.cols * B.cols >= 8192) {
        Mat C = mat_zero(R, A.rows, B.cols);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < A.rows; i++) {
            for (int k = 0; k < A.cols; k++) {
                const Elem& aik = A.at(i, k);
                if (is_zero(R, aik)) continue;
                for (int j = 0; j < B.cols; j++) {
                    C.at(i, j) = add(R, C.at(i, j), mul(R, aik, B.at(k, j)));
                }
            }
        }
        return C;
    }
#endif
    return mat_mul_serial(R, A, B);
}

Mat mat_transpose(const Mat& A)
{
    Mat C(A.cols, A.rows);
    for (int i = 0; i < A.rows; i++) {
        for (int j = 0; j < A.cols; j++) C.at(j, i) = A.at(i, j);
    }
    return C;
}

Mat mat_hstack(const GroundRing& R, const Mat& A, const Mat& B)
{
    if (A.rows != B.rows) fail("DimensionMismatch", "hstack rows");
    Mat C = mat_zero(R, A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; i++) {
        for (int j = 0; j < A.cols; j++) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; j++) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

Mat mat_vstack(const GroundRing& R, const Mat& A, const Mat& B)
{
    if (A.cols != B.cols) fail("DimensionMismatch", "vstack cols");
    Mat C = mat_zero(R, A.rows + B.rows, A.cols);
    for (int i = 0; i < A.rows; i++) {
        for (int j = 0; j < A.cols; j++) C.at(i, j) = A.at(i, j);
    }
    for (int i = 0; i < B.rows; i++) {
        for (int j = 0; j < B.cols; j++) C.at(A.rows + i, j) = B.at(i, j);
    }
    return C;
}

Mat mat_block_diag(const GroundRing& R, const Mat& A, const Mat& B)
{
    Mat C = mat_zero(R, A.rows + B.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; i++) {
        for (int j = 0; j < A.cols; j++) C.at(i, j) = A.at(i, j);
    }
    for (int i = 0; i < B.rows; i++) {
        for (int j = 0; j < B.cols; j++) C.at(A.rows + i, A.cols + j) = B.at(i, j);
    }
    return C;
}

Mat mat_kron(const GroundRing& R, const Mat& A, const Mat& B)
{
    Mat C = mat_zero(R, A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; i++) {
        for (int j = 0; j < A.cols; j++) {
            if (is_zero(R, A.at(i, j))) continue;
            for (int k = 0; k < B.rows; k++) {
                for (int l = 0; l < B.cols; l++) {
                    C.at(i * B.rows + k, j * B.cols + l) = mul(R, A.at(i, j), B.at(k, l));
                }
            }
        }
    }
    return C;
}

Mat mat_submatrix(const Mat& A, int r0, int c0, int r, int c)
{
    Mat C(r, c);
    for (int i = 0; i < r; i++) {
        for (int j = 0; j < c; j++) C.at(i, j) = A.at(r0 + i, c0 + j);
    }
    return C;
}

std::vector<Elem> mat_col(const Mat& A, int j)
{
    std::vector<Elem> v(A.rows);
    for (int i = 0; i < A.rows; i++) v[i] = A.at(i, j);
    return v;
}

Mat mat_from_cols(const GroundRing& R, int rows, const std::vector<std::vector<Elem>>& cols)
{
    Mat C = mat_zero(R, rows, (int)cols.size());
    for (size_t j = 0; j < cols.size(); j++) {
        if ((int)cols[j].size() != rows) fail("DimensionMismatch", "column length");
        for (int i = 0; i < rows; i++) C.at(i, (int)j) = cols[j][i];
    }
    return C;
}

std::vector<Elem> mat_apply(const GroundRing& R, const Mat& A, const std::vector<Elem>& v)
{
    if ((int)v.size() != A.cols) fail("DimensionMismatch", "matrix-vector shapes");
    std::vector<Elem> out(A.rows, ring_zero(R));
    for (int i = 0; i < A.rows; i++) {
        for (int j = 0; j < A.cols; j++) {
            out[i] = add(R, out[i], mul(R, A.at(i, j), v[j]));
        }
    }
    return out;
}

bool mat_is_zero(const GroundRing& R, const Mat& A)
{
    for (const auto& x : A.a) {
        if (!is_zero(R, x)) return false;
    }
    return true;
}

Mat mat_reduce(const GroundRing& R, const Mat& A)
{
    Mat C = A;
    for (auto& x : C.a) x = reduce(R, x);
    return C;
}

std::string mat_str(const GroundRing& R, const Mat& A)
{
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < A.rows; i++) {
        os << (i ? "; " : "");
        for (int j = 0; j < A.cols; j++) {
            os << (j ? " " : "") << elem_str(R, A.at(i, j));
        }
    }
    os << "]";
    return os.str();
}

} // namespace cofib

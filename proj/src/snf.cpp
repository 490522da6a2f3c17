#include "cofib/snf.hpp"

namespace cofib {

std::vector<Elem> SnfResult::diag() const
{
    std::vector<Elem> d;
    for (int i = 0; i < std::min(D.rows, D.cols); i++) d.push_back(D.at(i, i));
    return d;
}

namespace {

struct Work {
    const GroundRing& R;
    Mat D, U, V;

    Work(const GroundRing& R_, const Mat& M)
        : R(R_), D(mat_reduce(R_, M)), U(mat_identity(R_, M.rows)),
          V(mat_identity(R_, M.cols))
    {
    }

    void swap_rows(int i, int j)
    {
        if (i == j) return;
        for (int c = 0; c < D.cols; c++) std::swap(D.at(i, c), D.at(j, c));
        for (int c = 0; c < U.cols; c++) std::swap(U.at(i, c), U.at(j, c));
    }
    void swap_cols(int i, int j)
    {
        if (i == j) return;
        for (int r = 0; r < D.rows; r++) std::swap(D.at(r, i), D.at(r, j));
        for (int r = 0; r < V.rows; r++) std::swap(V.at(r, i), V.at(r, j));
    }
    // row_i -= c * row_j
    void row_sub(int i, const Elem& c, int j)
    {
        for (int k = 0; k < D.cols; k++) {
            D.at(i, k) = sub(R, D.at(i, k), mul(R, c, D.at(j, k)));
        }
        for (int k = 0; k < U.cols; k++) {
            U.at(i, k) = sub(R, U.at(i, k), mul(R, c, U.at(j, k)));
        }
    }
    // col_i -= c * col_j
    void col_sub(int i, const Elem& c, int j)
    {
        for (int k = 0; k < D.rows; k++) {
            D.at(k, i) = sub(R, D.at(k, i), mul(R, c, D.at(k, j)));
        }
        for (int k = 0; k < V.rows; k++) {
            V.at(k, i) = sub(R, V.at(k, i), mul(R, c, V.at(k, j)));
        }
    }
    void row_scale(int i, const Elem& u)
    {
        for (int k = 0; k < D.cols; k++) D.at(i, k) = mul(R, u, D.at(i, k));
        for (int k = 0; k < U.cols; k++) U.at(i, k) = mul(R, u, U.at(i, k));
    }
    // row_i += row_j
    void row_add(int i, int j)
    {
        for (int k = 0; k < D.cols; k++) {
            D.at(i, k) = add(R, D.at(i, k), D.at(j, k));
        }
        for (int k = 0; k < U.cols; k++) {
            U.at(i, k) = add(R, U.at(i, k), U.at(j, k));
        }
    }
};

void snf_euclidean(Work& w)
{
    const GroundRing& R = w.R;
    int n = std::min(w.D.rows, w.D.cols);
    for (int t = 0; t < n; t++) {
        while (true) {
            // smallest nonzero entry of the trailing submatrix
            int pi = -1, pj = -1;
            mpz_class best;
            for (int i = t; i < w.D.rows; i++) {
                for (int j = t; j < w.D.cols; j++) {
                    if (is_zero(R, w.D.at(i, j))) continue;
                    mpz_class s = euclid_size(R, w.D.at(i, j));
                    if (pi < 0 || s < best) {
                        pi = i;
                        pj = j;
                        best = s;
                    }
                }
            }
            if (pi < 0) return; // trailing block is zero
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            bool clean = true;
            for (int i = t + 1; i < w.D.rows; i++) {
                if (is_zero(R, w.D.at(i, t))) continue;
                auto d = divmod(R, w.D.at(i, t), w.D.at(t, t));
                w.row_sub(i, d.quot, t);
                if (!is_zero(R, w.D.at(i, t))) clean = false;
            }
            for (int j = t + 1; j < w.D.cols; j++) {
                if (is_zero(R, w.D.at(t, j))) continue;
                auto d = divmod(R, w.D.at(t, j), w.D.at(t, t));
                w.col_sub(j, d.quot, t);
                if (!is_zero(R, w.D.at(t, j))) clean = false;
            }
            if (!clean) continue;

            // enforce d_t | every trailing entry
            bool divisible = true;
            for (int i = t + 1; i < w.D.rows && divisible; i++) {
                for (int j = t + 1; j < w.D.cols; j++) {
                    if (!divides(R, w.D.at(t, t), w.D.at(i, j))) {
                        w.row_add(t, i);
                        divisible = false;
                        break;
                    }
                }
            }
            if (divisible) break;
        }
        auto cs = canonical_split(R, w.D.at(t, t));
        if (!is_zero(R, w.D.at(t, t))) w.row_scale(t, inverse(R, cs.unit));
    }
}

void snf_valuation(Work& w)
{
    const GroundRing& R = w.R;
    int n = std::min(w.D.rows, w.D.cols);
    for (int t = 0; t < n; t++) {
        // minimum q-adic valuation; ties to lowest row, then lowest column
        int pi = -1, pj = -1;
        long best = 0;
        for (int i = t; i < w.D.rows; i++) {
            for (int j = t; j < w.D.cols; j++) {
                if (is_zero(R, w.D.at(i, j))) continue;
                long v = quot_valuation(R, w.D.at(i, j));
                if (pi < 0 || v < best) {
                    pi = i;
                    pj = j;
                    best = v;
                }
            }
        }
        if (pi < 0) return;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        const Elem pivot = w.D.at(t, t);
        for (int i = t + 1; i < w.D.rows; i++) {
            if (is_zero(R, w.D.at(i, t))) continue;
            w.row_sub(i, exact_div(R, w.D.at(i, t), pivot), t);
        }
        for (int j = t + 1; j < w.D.cols; j++) {
            if (is_zero(R, w.D.at(t, j))) continue;
            w.col_sub(j, exact_div(R, w.D.at(t, j), pivot), t);
        }
        w.row_scale(t, inverse(R, quot_unit_part(R, pivot)));
    }
}

} // namespace

SnfResult snf(const GroundRing& R, const Mat& M)
{
    if (R.kind == GroundRing::Kind::Product) {
        fail("RingMismatch", "SNF over a product ring; split components first");
    }
    Work w(R, M);
    if (R.is_pid()) snf_euclidean(w);
    else snf_valuation(w);
    SnfResult out{std::move(w.U), std::move(w.D), std::move(w.V), 0};
    int n = std::min(out.D.rows, out.D.cols);
    for (int i = 0; i < n; i++) {
        if (!is_zero(R, out.D.at(i, i))) out.rank++;
    }
    return out;
}

// --- column Hermite form ------------------------------------------------------

namespace {

// floor-style reduction keeps canonical HNF entries: 0 <= r < pivot over Z,
// deg r < deg pivot over F_p[x]
Elem hnf_reduce_quot(const GroundRing& R, const Elem& a, const Elem& b)
{
    if (R.kind == GroundRing::Kind::Z) {
        Elem q;
        mpz_fdiv_q(q.z.get_mpz_t(), a.z.get_mpz_t(), b.z.get_mpz_t());
        return q;
    }
    return divmod(R, a, b).quot;
}

} // namespace

Mat hnf_cols(const GroundRing& R, const Mat& A0)
{
    if (!R.is_pid()) fail("RingMismatch", "hermite form needs a PID");
    Mat A = mat_reduce(R, A0);
    int next = 0; // next pivot column slot
    for (int row = 0; row < A.rows && next < A.cols; row++) {
        // clear row across columns >= next down to a single pivot at `next`
        int found = -1;
        for (int j = next; j < A.cols; j++) {
            if (!is_zero(R, A.at(row, j))) {
                found = j;
                break;
            }
        }
        if (found < 0) continue;
        if (found != next) {
            for (int r = 0; r < A.rows; r++) std::swap(A.at(r, next), A.at(r, found));
        }
        for (int j = next + 1; j < A.cols; j++) {
            if (is_zero(R, A.at(row, j))) continue;
            Elem a = A.at(row, next), b = A.at(row, j);
            auto eg = exgcd(R, a, b);
            Elem am = exact_div(R, a, eg.g), bm = exact_div(R, b, eg.g);
            // [c_next, c_j] <- [c_next, c_j] * [[s, -b/g], [t, a/g]], det = 1
            for (int r = 0; r < A.rows; r++) {
                Elem x = A.at(r, next), y = A.at(r, j);
                A.at(r, next) = add(R, mul(R, eg.s, x), mul(R, eg.t, y));
                A.at(r, j) = sub(R, mul(R, am, y), mul(R, bm, x));
            }
        }
        auto cs = canonical_split(R, A.at(row, next));
        Elem uinv = inverse(R, cs.unit);
        for (int r = 0; r < A.rows; r++) A.at(r, next) = mul(R, uinv, A.at(r, next));
        // reduce entries to the left of the pivot
        for (int j = 0; j < next; j++) {
            if (is_zero(R, A.at(row, j))) continue;
            Elem q = hnf_reduce_quot(R, A.at(row, j), A.at(row, next));
            for (int r = 0; r < A.rows; r++) {
                A.at(r, j) = sub(R, A.at(r, j), mul(R, q, A.at(r, next)));
            }
        }
        next++;
    }
    return mat_submatrix(A, 0, 0, A.rows, next);
}

Mat kernel_basis(const GroundRing& R, const Mat& M)
{
    if (!R.is_pid()) fail("RingMismatch", "kernel basis needs a PID");
    auto s = snf(R, M);
    std::vector<std::vector<Elem>> cols;
    for (int j = 0; j < M.cols; j++) {
        bool zero_col = j >= std::min(M.rows, M.cols) || is_zero(R, s.D.at(j, j));
        if (zero_col) cols.push_back(mat_col(s.V, j));
    }
    return mat_from_cols(R, M.cols, cols);
}

std::optional<std::vector<Elem>> solve_linear(const GroundRing& R, const Mat& M,
                                              const std::vector<Elem>& b)
{
    Mat B = mat_from_cols(R, (int)b.size(), {b});
    auto X = solve_linear_mat(R, M, B);
    if (!X) return std::nullopt;
    return mat_col(*X, 0);
}

std::optional<Mat> solve_linear_mat(const GroundRing& R, const Mat& M, const Mat& B)
{
    if (!R.is_pid()) fail("RingMismatch", "linear solve needs a PID");
    if (B.rows != M.rows) fail("DimensionMismatch", "solve shapes");
    auto s = snf(R, M);
    Mat Ub = mat_mul(R, s.U, B);
    Mat Y = mat_zero(R, M.cols, B.cols);
    int n = std::min(M.rows, M.cols);
    for (int c = 0; c < B.cols; c++) {
        for (int i = 0; i < M.rows; i++) {
            if (i < n && !is_zero(R, s.D.at(i, i))) {
                auto d = divmod(R, Ub.at(i, c), s.D.at(i, i));
                if (!is_zero(R, d.rem)) return std::nullopt;
                Y.at(i, c) = d.quot;
            } else if (!is_zero(R, Ub.at(i, c))) {
                return std::nullopt;
            }
        }
    }
    return mat_mul(R, s.V, Y);
}

Elem determinant(const GroundRing& R, const Mat& M)
{
    if (M.rows != M.cols) fail("DimensionMismatch", "determinant of non-square");
    if (!R.is_pid()) fail("RingMismatch", "determinant needs a PID");
    if (M.rows == 0) return ring_one(R);
    // fraction-free Gaussian elimination (Bareiss)
    Mat A = mat_reduce(R, M);
    Elem sign = ring_one(R);
    Elem prev = ring_one(R);
    int n = A.rows;
    for (int t = 0; t < n - 1; t++) {
        if (is_zero(R, A.at(t, t))) {
            int piv = -1;
            for (int i = t + 1; i < n; i++) {
                if (!is_zero(R, A.at(i, t))) {
                    piv = i;
                    break;
                }
            }
            if (piv < 0) return ring_zero(R);
            for (int j = 0; j < n; j++) std::swap(A.at(t, j), A.at(piv, j));
            sign = neg(R, sign);
        }
        for (int i = t + 1; i < n; i++) {
            for (int j = t + 1; j < n; j++) {
                Elem v = sub(R, mul(R, A.at(t, t), A.at(i, j)),
                             mul(R, A.at(i, t), A.at(t, j)));
                A.at(i, j) = exact_div(R, v, prev);
            }
            A.at(i, t) = ring_zero(R);
        }
        prev = A.at(t, t);
    }
    return mul(R, sign, A.at(n - 1, n - 1));
}

// --- integer lattices ---------------------------------------------------------

IntLattice lattice_from_generators(int n, const std::vector<std::vector<mpz_class>>& vecs)
{
    GroundRing Z = GroundRing::integers();
    for (const auto& v : vecs) {
        if ((int)v.size() != n) fail("DimensionMismatch", "generator length");
    }
    Mat A = mat_zero(Z, n, (int)vecs.size());
    for (size_t j = 0; j < vecs.size(); j++) {
        for (int i = 0; i < n; i++) A.at(i, (int)j).z = vecs[j][i];
    }
    return IntLattice{n, hnf_cols(Z, A)};
}

bool lattice_contains(const IntLattice& L, const std::vector<mpz_class>& v)
{
    if ((int)v.size() != L.ambient) fail("DimensionMismatch", "vector length");
    std::vector<mpz_class> w = v;
    for (int j = 0; j < L.basis.cols; j++) {
        int pr = -1;
        for (int i = 0; i < L.ambient; i++) {
            if (L.basis.at(i, j).z != 0) {
                pr = i;
                break;
            }
        }
        if (pr < 0) continue;
        mpz_class piv = L.basis.at(pr, j).z;
        if (w[pr] % piv != 0) return false;
        mpz_class c = w[pr] / piv;
        for (int i = 0; i < L.ambient; i++) w[i] -= c * L.basis.at(i, j).z;
    }
    for (const auto& x : w) {
        if (x != 0) return false;
    }
    return true;
}

} // namespace cofib

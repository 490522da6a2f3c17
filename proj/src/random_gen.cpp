#include "cofib/random_gen.hpp"

namespace cofib {

namespace {

long pick(std::mt19937_64& rng, long lo, long hi)
{
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng);
}

} // namespace

std::pair<Mat, Mat> random_invertible(const GroundRing& R, int n, std::mt19937_64& rng,
                                      int ops)
{
    Mat P = mat_identity(R, n), Pinv = mat_identity(R, n);
    if (n < 2) return {P, Pinv};
    for (int k = 0; k < ops; k++) {
        int i = (int)pick(rng, 0, n - 1), j = (int)pick(rng, 0, n - 1);
        if (i == j) continue;
        Elem c = ring_from_int(R, pick(rng, -2, 2));
        // row_i += c * row_j on P; row_j -= c * row_i order on the inverse
        for (int t = 0; t < n; t++) {
            P.at(i, t) = add(R, P.at(i, t), mul(R, c, P.at(j, t)));
        }
        // inverse accumulates the inverse operation on the other side
        for (int t = 0; t < n; t++) {
            Pinv.at(t, j) = sub(R, Pinv.at(t, j), mul(R, c, Pinv.at(t, i)));
        }
    }
    return {P, Pinv};
}

PerfectComplex random_complex(const GroundRing& R, std::mt19937_64& rng,
                              const RandomComplexOptions& opt)
{
    int count = (int)pick(rng, 1, opt.max_summands);
    PerfectComplex X = zero_complex(R);
    for (int k = 0; k < count; k++) {
        int sh = (int)pick(rng, opt.min_degree, opt.max_degree);
        bool use_free = opt.allow_free &&
                        (opt.torsion_elements.empty() || pick(rng, 0, 1) == 0);
        PerfectComplex piece;
        if (use_free) {
            piece = unit_complex(R);
        } else {
            // two-term R ->t R piece; works over any ground ring
            const Elem& t =
                opt.torsion_elements[(size_t)pick(rng, 0, (long)opt.torsion_elements.size() - 1)];
            Mat d(1, 1);
            d.at(0, 0) = reduce(R, t);
            piece = make_complex(R, 0, {1, 1}, {d});
        }
        X = direct_sum(X, shift(piece, sh));
    }
    // degreewise change of basis: d' = P_{n-1} d P_n^{-1}
    std::map<int, std::pair<Mat, Mat>> bases;
    for (int n = X.lo; n <= X.hi; n++) {
        bases[n] = random_invertible(R, X.rank(n), rng, opt.scramble_ops);
    }
    if (X.empty()) return X;
    std::vector<int> ranks;
    std::vector<Mat> diffs;
    for (int n = X.lo; n <= X.hi; n++) ranks.push_back(X.rank(n));
    for (int n = X.lo + 1; n <= X.hi; n++) {
        diffs.push_back(
            mat_mul(R, bases[n - 1].first, mat_mul(R, X.d(n), bases[n].second)));
    }
    return make_complex(R, X.lo, ranks, diffs);
}

PerfectComplex random_torsion_complex(std::mt19937_64& rng,
                                      const std::vector<long>& primes,
                                      int max_summands, int max_exp)
{
    GroundRing Z = GroundRing::integers();
    RandomComplexOptions opt;
    opt.max_summands = max_summands;
    opt.allow_free = false;
    for (long p : primes) {
        for (int e = 1; e <= max_exp; e++) {
            mpz_class pe;
            mpz_ui_pow_ui(pe.get_mpz_t(), (unsigned long)p, (unsigned long)e);
            opt.torsion_elements.push_back(ring_from_mpz(Z, pe));
        }
    }
    return random_complex(Z, rng, opt);
}

std::vector<ChainMap> chain_map_basis(const PerfectComplex& X, const PerfectComplex& Y)
{
    const GroundRing& R = X.ring;
    if (!R.is_pid()) fail("NotHereditary", "chain map solver needs a PID");
    if (Y.ring != R) fail("RingMismatch", "chain map between different rings");

    // unknowns: entries of f_n for degrees where both complexes are nonzero
    std::vector<int> degs;
    std::map<int, int> offset;
    int nvars = 0;
    for (int n = std::max(X.lo, Y.lo); n <= std::min(X.hi, Y.hi); n++) {
        if (X.rank(n) > 0 && Y.rank(n) > 0) {
            degs.push_back(n);
            offset[n] = nvars;
            nvars += X.rank(n) * Y.rank(n);
        }
    }
    auto var = [&](int n, int i, int j) { // f_n entry (i,j), i in Y, j in X
        return offset.at(n) + i * X.rank(n) + j;
    };

    // equations: d^Y_n f_n - f_{n-1} d^X_n = 0, one row per output entry
    std::vector<std::vector<Elem>> rows;
    for (int n = std::min(X.lo, Y.lo); n <= std::max(X.hi, Y.hi) + 1; n++) {
        int r = Y.rank(n - 1), c = X.rank(n);
        if (r == 0 || c == 0) continue;
        Mat dY = Y.d(n), dX = X.d(n);
        bool has_fn = offset.count(n), has_fm = offset.count(n - 1);
        if (!has_fn && !has_fm) continue;
        for (int i = 0; i < r; i++) {
            for (int j = 0; j < c; j++) {
                std::vector<Elem> row(nvars, ring_zero(R));
                if (has_fn) {
                    for (int k = 0; k < Y.rank(n); k++) {
                        row[var(n, k, j)] = add(R, row[var(n, k, j)], dY.at(i, k));
                    }
                }
                if (has_fm) {
                    for (int k = 0; k < X.rank(n - 1); k++) {
                        row[var(n - 1, i, k)] =
                            sub(R, row[var(n - 1, i, k)], dX.at(k, j));
                    }
                }
                rows.push_back(std::move(row));
            }
        }
    }

    Mat A = mat_zero(R, (int)rows.size(), nvars);
    for (int i = 0; i < (int)rows.size(); i++) {
        for (int j = 0; j < nvars; j++) A.at(i, j) = rows[i][j];
    }
    Mat K = kernel_basis(R, A);

    std::vector<ChainMap> basis;
    for (int b = 0; b < K.cols; b++) {
        ChainMap f{X, Y, {}};
        for (int n : degs) {
            Mat fn = mat_zero(R, Y.rank(n), X.rank(n));
            for (int i = 0; i < Y.rank(n); i++) {
                for (int j = 0; j < X.rank(n); j++) fn.at(i, j) = K.at(var(n, i, j), b);
            }
            f.components[n] = fn;
        }
        basis.push_back(std::move(f));
    }
    return basis;
}

ChainMap random_chain_map(const PerfectComplex& X, const PerfectComplex& Y,
                          std::mt19937_64& rng)
{
    auto basis = chain_map_basis(X, Y);
    const GroundRing& R = X.ring;
    ChainMap f = zero_map(X, Y);
    for (const auto& b : basis) {
        Elem c = ring_from_int(R, pick(rng, -2, 2));
        for (const auto& [n, comp] : b.components) {
            Mat cur = f.components.count(n) ? f.components[n]
                                            : mat_zero(R, Y.rank(n), X.rank(n));
            f.components[n] = mat_add(R, cur, mat_scale(R, c, comp));
        }
    }
    return f;
}

} // namespace cofib

#include "cofib/pgroup.hpp"

#include <algorithm>
#include <set>

namespace cofib {

namespace {

const GroundRing Z = GroundRing::integers();

mpz_class ppow(long p, long e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)p, (unsigned long)e);
    return r;
}

Mat order_diag(long p, const FpAbGroup& G)
{
    Mat D = mat_zero(Z, (int)G.gens(), (int)G.gens());
    for (int i = 0; i < (int)G.gens(); i++) D.at(i, i).z = ppow(p, G.exponents[i]);
    return D;
}

} // namespace

long FpAbGroup::log_order() const
{
    long s = 0;
    for (long e : exponents) s += e;
    return s;
}

std::string FpAbGroup::str() const
{
    if (trivial()) return "0";
    std::string s;
    for (size_t i = 0; i < exponents.size(); i++) {
        if (i) s += " + ";
        s += "Z/" + std::to_string(p) + "^" + std::to_string(exponents[i]);
    }
    return s;
}

FpAbGroup FpComplex::group(int n) const
{
    auto it = groups.find(n);
    if (it != groups.end()) return it->second;
    return FpAbGroup{p, {}};
}

Mat FpComplex::d(int n) const
{
    auto it = diffs.find(n);
    if (it != diffs.end()) return it->second;
    return mat_zero(Z, (int)group(n - 1).gens(), (int)group(n).gens());
}

void validate_fp(const FpComplex& C)
{
    mpz_class pz = C.p;
    if (C.p < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0) {
        fail("NotPerfect", "characteristic must be a prime");
    }
    for (const auto& [n, G] : C.groups) {
        if (G.p != C.p) fail("NotPerfect", "mixed characteristics");
        for (size_t i = 0; i < G.exponents.size(); i++) {
            if (G.exponents[i] < 1) fail("NotPerfect", "non-positive exponent");
            if (i && G.exponents[i] > G.exponents[i - 1]) {
                fail("NotPerfect", "exponents not descending");
            }
        }
    }
    for (const auto& [n, M] : C.diffs) {
        FpAbGroup src = C.group(n), dst = C.group(n - 1);
        if (M.rows != (int)dst.gens() || M.cols != (int)src.gens()) {
            fail("NotPerfect", "map shape at degree " + std::to_string(n));
        }
        // p^bj must divide M_ji * p^ai for the entry to define a map
        for (int j = 0; j < M.rows; j++) {
            for (int i = 0; i < M.cols; i++) {
                mpz_class v = M.at(j, i).z * ppow(C.p, src.exponents[i]);
                mpz_class o = ppow(C.p, dst.exponents[j]);
                if (!mpz_divisible_p(v.get_mpz_t(), o.get_mpz_t())) {
                    fail("NotPerfect", "entry does not respect the orders");
                }
            }
        }
    }
    for (int n = C.lo + 2; n <= C.hi; n++) {
        // the composite must send every generator to zero in the target group
        Mat dd = mat_mul(Z, C.d(n - 1), C.d(n));
        FpAbGroup dst = C.group(n - 2);
        for (int j = 0; j < dd.rows; j++) {
            for (int i = 0; i < dd.cols; i++) {
                mpz_class o = ppow(C.p, dst.exponents[j]);
                if (!mpz_divisible_p(dd.at(j, i).z.get_mpz_t(), o.get_mpz_t())) {
                    fail("NotPerfect", "d*d != 0 at degree " + std::to_string(n));
                }
            }
        }
    }
}

std::map<int, FpAbGroup> fp_homology(const FpComplex& C)
{
    std::map<int, FpAbGroup> H;
    for (int n = C.lo; n <= C.hi; n++) {
        FpAbGroup G = C.group(n);
        int r = (int)G.gens();
        if (r == 0) continue;
        FpAbGroup Gdown = C.group(n - 1);
        Mat Ln = order_diag(C.p, G);

        // kernel of the induced map: x with d(n) x = 0 in the target group
        Mat K;
        if (Gdown.gens() == 0) {
            K = mat_identity(Z, r);
        } else {
            Mat G2 = mat_hstack(Z, C.d(n), order_diag(C.p, Gdown));
            Mat Kfull = kernel_basis(Z, G2);
            K = hnf_cols(Z, mat_submatrix(Kfull, 0, 0, r, Kfull.cols));
        }
        // kill the image together with the order relations
        Mat gens = mat_hstack(Z, C.d(n + 1), Ln);
        auto W = solve_linear_mat(Z, K, gens);
        if (!W) fail("NotPerfect", "image escapes the kernel");
        auto sw = snf(Z, *W);
        std::vector<long> exps;
        for (int i = 0; i < std::min(sw.D.rows, sw.D.cols); i++) {
            mpz_class d = sw.D.at(i, i).z;
            if (d == 0) fail("NotPerfect", "infinite homology summand");
            long e = 0;
            while (mpz_divisible_ui_p(d.get_mpz_t(), (unsigned long)C.p)) {
                d /= C.p;
                e++;
            }
            if (abs(d) != 1) fail("NotPerfect", "summand order not a p-power");
            if (e > 0) exps.push_back(e);
        }
        std::sort(exps.rbegin(), exps.rend());
        if (!exps.empty()) H[n] = FpAbGroup{C.p, std::move(exps)};
    }
    return H;
}

long chi_p(long p, const std::map<int, FpAbGroup>& groups)
{
    (void)p;
    long s = 0;
    for (const auto& [n, G] : groups) {
        s += (n % 2 == 0 ? 1 : -1) * G.log_order();
    }
    return s;
}

LengthCheck length_identity_check(const FpComplex& C)
{
    LengthCheck lc;
    for (const auto& [n, G] : C.groups) {
        lc.from_terms += (n % 2 == 0 ? 1 : -1) * G.log_order();
    }
    lc.from_homology = chi_p(C.p, fp_homology(C));
    lc.equal = lc.from_terms == lc.from_homology;
    return lc;
}

std::optional<std::vector<long>> fp_homology_degree_bruteforce(const FpComplex& C,
                                                               int n,
                                                               long max_order)
{
    FpAbGroup G = C.group(n), Gdown = C.group(n - 1), Gup = C.group(n + 1);
    auto order_of = [&](const FpAbGroup& g) {
        mpz_class o = 1;
        for (long e : g.exponents) o *= ppow(C.p, e);
        return o;
    };
    if (order_of(G) > max_order || order_of(Gup) > max_order) return std::nullopt;

    int r = (int)G.gens();
    std::vector<long> mods(r);
    for (int i = 0; i < r; i++) mods[i] = mpz_get_si(ppow(C.p, G.exponents[i]).get_mpz_t());

    auto enumerate = [&](const FpAbGroup& g) {
        std::vector<std::vector<long>> out;
        std::vector<long> cur((size_t)g.gens(), 0);
        std::vector<long> m((size_t)g.gens());
        for (size_t i = 0; i < m.size(); i++) {
            m[i] = mpz_get_si(ppow(C.p, g.exponents[i]).get_mpz_t());
        }
        while (true) {
            out.push_back(cur);
            size_t i = 0;
            while (i < cur.size() && ++cur[i] == m[i]) cur[i++] = 0;
            if (i == cur.size()) break;
            if (cur.empty()) break;
        }
        return out;
    };

    Mat Mdown = C.d(n), Mup = C.d(n + 1);
    auto in_kernel = [&](const std::vector<long>& x) {
        for (int j = 0; j < (int)Gdown.gens(); j++) {
            mpz_class acc = 0;
            for (int i = 0; i < r; i++) acc += Mdown.at(j, i).z * x[i];
            if (!mpz_divisible_p(acc.get_mpz_t(),
                                 ppow(C.p, Gdown.exponents[j]).get_mpz_t())) {
                return false;
            }
        }
        return true;
    };

    std::set<std::vector<long>> image;
    for (const auto& y : enumerate(Gup)) {
        std::vector<long> v(r);
        for (int j = 0; j < r; j++) {
            mpz_class acc = 0;
            for (int i = 0; i < (int)Gup.gens(); i++) acc += Mup.at(j, i).z * y[i];
            mpz_class red = acc % mods[j];
            if (red < 0) red += mods[j];
            v[j] = mpz_get_si(red.get_mpz_t());
        }
        image.insert(v);
    }

    std::vector<std::vector<long>> kernel;
    for (const auto& x : enumerate(G)) {
        if (in_kernel(x)) kernel.push_back(x);
    }

    // D_k = #(order <= p^k elements of the quotient); count via p^k x in image
    long max_e = G.exponents.empty() ? 0 : G.exponents[0];
    std::vector<long> D(max_e + 1, 0);
    for (const auto& x : kernel) {
        for (long k = 0; k <= max_e; k++) {
            std::vector<long> v(r);
            mpz_class pk = ppow(C.p, k);
            for (int i = 0; i < r; i++) {
                mpz_class red = (pk * x[i]) % mods[i];
                v[i] = mpz_get_si(red.get_mpz_t());
            }
            if (image.count(v)) D[k]++;
        }
    }
    // log_p(D_k / D_{k-1}) counts summands with exponent >= k
    auto logp = [&](long v) {
        long e = 0;
        while (v > 1) {
            v /= C.p;
            e++;
        }
        return e;
    };
    std::vector<long> atleast(max_e + 1, 0);
    for (long k = 1; k <= max_e; k++) {
        atleast[k] = logp(D[k] / D[0]) - logp(D[k - 1] / D[0]);
    }
    std::vector<long> exps;
    for (long k = max_e; k >= 1; k--) {
        long exact = atleast[k] - (k + 1 <= max_e ? atleast[k + 1] : 0);
        for (long c = 0; c < exact; c++) exps.push_back(k);
    }
    std::sort(exps.rbegin(), exps.rend());
    return exps;
}

FpComplex random_fp_complex(long p, std::mt19937_64& rng, int max_positions,
                            int max_gens, int max_exp)
{
    auto pick = [&](long lo, long hi) {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(rng);
    };
    FpComplex C;
    C.p = p;
    C.lo = 0;
    C.hi = (int)pick(1, max_positions) - 1;
    for (int n = C.lo; n <= C.hi; n++) {
        FpAbGroup G{p, {}};
        long g = pick(0, max_gens);
        for (long i = 0; i < g; i++) G.exponents.push_back(pick(1, max_exp));
        std::sort(G.exponents.rbegin(), G.exponents.rend());
        if (!G.trivial()) C.groups[n] = G;
    }
    // staggered two-term pieces keep d*d = 0 exactly
    for (int n = C.lo + 1; n <= C.hi; n++) {
        FpAbGroup src = C.group(n), dst = C.group(n - 1);
        Mat M = mat_zero(Z, (int)dst.gens(), (int)src.gens());
        if (n % 2 == 1) { // only odd layers get maps; composites vanish
            for (int j = 0; j < M.rows; j++) {
                for (int i = 0; i < M.cols; i++) {
                    long need = std::max(0L, dst.exponents[j] - src.exponents[i]);
                    M.at(j, i).z = pick(-2, 2) * ppow(p, need);
                }
            }
        }
        if (M.rows > 0 && M.cols > 0) C.diffs[n] = M;
    }
    // conjugate by random transvections (group automorphisms)
    for (int n = C.lo; n <= C.hi; n++) {
        FpAbGroup G = C.group(n);
        int g = (int)G.gens();
        if (g < 2) continue;
        for (int it = 0; it < 4; it++) {
            int u = (int)pick(0, g - 1), v = (int)pick(0, g - 1);
            if (u == v) continue;
            mpz_class c =
                pick(-1, 1) * ppow(p, std::max(0L, G.exponents[u] - G.exponents[v]));
            if (c == 0) continue;
            // d(n) <- d(n) * (I - c E_uv), d(n+1) <- (I + c E_uv) * d(n+1)
            if (C.diffs.count(n)) {
                Mat& M = C.diffs[n];
                for (int j = 0; j < M.rows; j++) M.at(j, v).z -= c * M.at(j, u).z;
            }
            if (C.diffs.count(n + 1)) {
                Mat& M = C.diffs[n + 1];
                for (int i = 0; i < M.cols; i++) M.at(u, i).z += c * M.at(v, i).z;
            }
        }
    }
    validate_fp(C);
    return C;
}

} // namespace cofib

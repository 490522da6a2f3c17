#include "cofib/complex.hpp"

#include <sstream>

namespace cofib {

int PerfectComplex::rank(int n) const
{
    auto it = ranks.find(n);
    return it == ranks.end() ? 0 : it->second;
}

Mat PerfectComplex::d(int n) const
{
    auto it = diff.find(n);
    if (it != diff.end()) return it->second;
    return mat_zero(ring, rank(n - 1), rank(n));
}

Mat ChainMap::at(int n) const
{
    auto it = components.find(n);
    if (it != components.end()) return it->second;
    return mat_zero(source.ring, target.rank(n), source.rank(n));
}

namespace {

// Drop zero ranks at the window edges and zero-shaped differentials.
PerfectComplex normalize(PerfectComplex X)
{
    std::map<int, int> ranks;
    for (auto& [n, r] : X.ranks) {
        if (r > 0) ranks[n] = r;
    }
    X.ranks = std::move(ranks);
    if (X.ranks.empty()) {
        X.lo = 0;
        X.hi = -1;
        X.diff.clear();
        return X;
    }
    X.lo = X.ranks.begin()->first;
    X.hi = X.ranks.rbegin()->first;
    std::map<int, Mat> diff;
    for (auto& [n, M] : X.diff) {
        if (M.rows > 0 && M.cols > 0 && !mat_is_zero(X.ring, M)) {
            diff[n] = mat_reduce(X.ring, M);
        }
    }
    X.diff = std::move(diff);
    return X;
}

} // namespace

PerfectComplex zero_complex(const GroundRing& R)
{
    PerfectComplex X;
    X.ring = R;
    return X;
}

PerfectComplex unit_complex(const GroundRing& R)
{
    PerfectComplex X;
    X.ring = R;
    X.lo = X.hi = 0;
    X.ranks[0] = 1;
    return X;
}

PerfectComplex moore(const GroundRing& R, const Elem& x)
{
    if (!R.is_pid()) fail("RingMismatch", "Moore complexes live over a PID");
    PerfectComplex X;
    X.ring = R;
    X.lo = 0;
    X.hi = 1;
    X.ranks[0] = X.ranks[1] = 1;
    Mat d(1, 1);
    d.at(0, 0) = reduce(R, x);
    X.diff[1] = d;
    return normalize(X);
}

PerfectComplex make_complex(const GroundRing& R, int lo, const std::vector<int>& ranks,
                            const std::vector<Mat>& diffs)
{
    PerfectComplex X;
    X.ring = R;
    X.lo = lo;
    X.hi = lo + (int)ranks.size() - 1;
    for (size_t i = 0; i < ranks.size(); i++) X.ranks[lo + (int)i] = ranks[i];
    for (size_t i = 0; i < diffs.size(); i++) X.diff[lo + (int)i + 1] = diffs[i];
    X = normalize(X);
    validate(X);
    return X;
}

void validate(const PerfectComplex& X)
{
    for (auto& [n, r] : X.ranks) {
        if (r < 0) fail("NotPerfect", "negative rank at degree " + std::to_string(n));
        if (r > 0 && (n < X.lo || n > X.hi)) {
            fail("NotPerfect", "rank outside window at degree " + std::to_string(n));
        }
    }
    for (auto& [n, M] : X.diff) {
        if (M.rows != X.rank(n - 1) || M.cols != X.rank(n)) {
            fail("NotPerfect", "differential shape at degree " + std::to_string(n));
        }
    }
    for (int n = X.lo + 2; n <= X.hi; n++) {
        Mat dd = mat_mul(X.ring, X.d(n - 1), X.d(n));
        if (!mat_is_zero(X.ring, dd)) {
            fail("NotPerfect", "d*d != 0 at degree " + std::to_string(n));
        }
    }
}

void validate(const ChainMap& f)
{
    if (f.source.ring != f.target.ring) fail("RingMismatch", "chain map rings");
    validate(f.source);
    validate(f.target);
    const GroundRing& R = f.source.ring;
    for (auto& [n, M] : f.components) {
        if (M.rows != f.target.rank(n) || M.cols != f.source.rank(n)) {
            fail("NotPerfect", "chain map shape at degree " + std::to_string(n));
        }
    }
    int lo = std::min(f.source.lo, f.target.lo);
    int hi = std::max(f.source.hi, f.target.hi);
    for (int n = lo; n <= hi + 1; n++) {
        Mat lhs = mat_mul(R, f.target.d(n), f.at(n));
        Mat rhs = mat_mul(R, f.at(n - 1), f.source.d(n));
        if (!(mat_reduce(R, lhs) == mat_reduce(R, rhs))) {
            fail("NotPerfect", "chain map does not commute at degree " + std::to_string(n));
        }
    }
}

PerfectComplex shift(const PerfectComplex& X, int k)
{
    PerfectComplex Y;
    Y.ring = X.ring;
    if (X.empty()) return Y;
    Y.lo = X.lo + k;
    Y.hi = X.hi + k;
    for (auto& [n, r] : X.ranks) Y.ranks[n + k] = r;
    bool flip = (k % 2) != 0;
    for (auto& [n, M] : X.diff) {
        Y.diff[n + k] = flip ? mat_neg(X.ring, M) : M;
    }
    return normalize(Y);
}

PerfectComplex direct_sum(const PerfectComplex& X, const PerfectComplex& Y)
{
    if (X.ring != Y.ring) fail("RingMismatch", "direct sum rings");
    if (X.empty()) return Y;
    if (Y.empty()) return X;
    PerfectComplex Z;
    Z.ring = X.ring;
    Z.lo = std::min(X.lo, Y.lo);
    Z.hi = std::max(X.hi, Y.hi);
    for (int n = Z.lo; n <= Z.hi; n++) {
        int r = X.rank(n) + Y.rank(n);
        if (r > 0) Z.ranks[n] = r;
    }
    for (int n = Z.lo + 1; n <= Z.hi; n++) {
        Z.diff[n] = mat_block_diag(Z.ring, X.d(n), Y.d(n));
    }
    return normalize(Z);
}

ChainMap identity_map(const PerfectComplex& X)
{
    ChainMap f;
    f.source = f.target = X;
    for (auto& [n, r] : X.ranks) f.components[n] = mat_identity(X.ring, r);
    return f;
}

ChainMap zero_map(const PerfectComplex& X, const PerfectComplex& Y)
{
    if (X.ring != Y.ring) fail("RingMismatch", "zero map rings");
    ChainMap f;
    f.source = X;
    f.target = Y;
    return f;
}

ChainMap shift_map(const ChainMap& f, int k)
{
    ChainMap g;
    g.source = shift(f.source, k);
    g.target = shift(f.target, k);
    for (auto& [n, M] : f.components) g.components[n + k] = M;
    return g;
}

PerfectComplex cone(const ChainMap& f)
{
    if (f.source.ring != f.target.ring) fail("RingMismatch", "cone rings");
    const GroundRing& R = f.source.ring;
    PerfectComplex C;
    C.ring = R;
    int lo = std::min(f.source.lo + 1, f.target.lo);
    int hi = std::max(f.source.hi + 1, f.target.hi);
    if (f.source.empty()) {
        lo = f.target.lo;
        hi = f.target.hi;
    }
    if (f.target.empty() && !f.source.empty()) {
        lo = f.source.lo + 1;
        hi = f.source.hi + 1;
    }
    if (f.source.empty() && f.target.empty()) return C;
    C.lo = lo;
    C.hi = hi;
    for (int n = lo; n <= hi; n++) {
        int r = f.source.rank(n - 1) + f.target.rank(n);
        if (r > 0) C.ranks[n] = r;
    }
    // d(a, b) = (-d_src a, d_tgt b - f a)
    for (int n = lo + 1; n <= hi; n++) {
        int sc = f.source.rank(n - 1), tc = f.target.rank(n);
        int sr = f.source.rank(n - 2), tr = f.target.rank(n - 1);
        Mat M = mat_zero(R, sr + tr, sc + tc);
        Mat ds = mat_neg(R, f.source.d(n - 1));
        Mat ff = mat_neg(R, f.at(n - 1));
        Mat dt = f.target.d(n);
        for (int i = 0; i < sr; i++) {
            for (int j = 0; j < sc; j++) M.at(i, j) = ds.at(i, j);
        }
        for (int i = 0; i < tr; i++) {
            for (int j = 0; j < sc; j++) M.at(sr + i, j) = ff.at(i, j);
            for (int j = 0; j < tc; j++) M.at(sr + i, sc + j) = dt.at(i, j);
        }
        C.diff[n] = M;
    }
    return normalize(C);
}

ChainMap cone_projection(const ChainMap& f, const PerfectComplex& cone_of_f)
{
    const GroundRing& R = f.source.ring;
    ChainMap p;
    p.source = cone_of_f;
    p.target = shift(f.source, 1);
    for (int n = cone_of_f.lo; n <= cone_of_f.hi; n++) {
        int sc = f.source.rank(n - 1), tc = f.target.rank(n);
        Mat M = mat_zero(R, sc, sc + tc);
        for (int i = 0; i < sc; i++) M.at(i, i) = ring_one(R);
        p.components[n] = M;
    }
    return p;
}

ChainMap cone_inclusion(const ChainMap& f, const PerfectComplex& cone_of_f)
{
    const GroundRing& R = f.source.ring;
    ChainMap inc;
    inc.source = f.target;
    inc.target = cone_of_f;
    for (int n = cone_of_f.lo; n <= cone_of_f.hi; n++) {
        int sc = f.source.rank(n - 1), tc = f.target.rank(n);
        Mat M = mat_zero(R, sc + tc, tc);
        for (int i = 0; i < tc; i++) M.at(sc + i, i) = ring_one(R);
        inc.components[n] = M;
    }
    return inc;
}

ChainMap compose(const ChainMap& g, const ChainMap& f)
{
    if (!(f.target == g.source)) fail("NotPerfect", "compose: middle complexes differ");
    ChainMap h;
    h.source = f.source;
    h.target = g.target;
    int lo = f.source.lo, hi = f.source.hi;
    for (int n = lo; n <= hi; n++) {
        if (f.source.rank(n) == 0 || g.target.rank(n) == 0) continue;
        h.components[n] = mat_mul(f.source.ring, g.at(n), f.at(n));
    }
    return h;
}

PerfectComplex tensor(const PerfectComplex& X, const PerfectComplex& Y)
{
    if (X.ring != Y.ring) fail("RingMismatch", "tensor rings");
    const GroundRing& R = X.ring;
    PerfectComplex T;
    T.ring = R;
    if (X.empty() || Y.empty()) return T;
    T.lo = X.lo + Y.lo;
    T.hi = X.hi + Y.hi;

    // block offsets: degree n -> list of (i, offset, width) with j = n - i
    auto blocks = [&](int n) {
        std::vector<std::array<int, 3>> out;
        int off = 0;
        for (int i = X.lo; i <= X.hi; i++) {
            int w = X.rank(i) * Y.rank(n - i);
            if (w > 0) out.push_back({i, off, w});
            off += w;
        }
        return out;
    };
    for (int n = T.lo; n <= T.hi; n++) {
        int total = 0;
        for (auto& b : blocks(n)) total += b[2];
        if (total > 0) T.ranks[n] = total;
    }
    for (int n = T.lo + 1; n <= T.hi; n++) {
        auto src = blocks(n), dst = blocks(n - 1);
        Mat M = mat_zero(R, T.rank(n - 1), T.rank(n));
        auto dst_off = [&](int i) -> int {
            for (auto& b : dst) {
                if (b[0] == i) return b[1];
            }
            return -1;
        };
        for (auto& b : src) {
            int i = b[0], off = b[1];
            int j = n - i;
            // d_X (x) 1 : block (i,j) -> (i-1, j)
            if (X.rank(i - 1) > 0 && Y.rank(j) > 0) {
                int o2 = dst_off(i - 1);
                Mat K = mat_kron(R, X.d(i), mat_identity(R, Y.rank(j)));
                for (int r = 0; r < K.rows; r++) {
                    for (int c = 0; c < K.cols; c++) {
                        M.at(o2 + r, off + c) = add(R, M.at(o2 + r, off + c), K.at(r, c));
                    }
                }
            }
            // (-1)^i 1 (x) d_Y : block (i,j) -> (i, j-1)
            if (Y.rank(j - 1) > 0 && X.rank(i) > 0) {
                int o2 = dst_off(i);
                Mat K = mat_kron(R, mat_identity(R, X.rank(i)), Y.d(j));
                bool flip = (i % 2) != 0;
                for (int r = 0; r < K.rows; r++) {
                    for (int c = 0; c < K.cols; c++) {
                        Elem v = flip ? neg(R, K.at(r, c)) : K.at(r, c);
                        M.at(o2 + r, off + c) = add(R, M.at(o2 + r, off + c), v);
                    }
                }
            }
        }
        T.diff[n] = M;
    }
    return normalize(T);
}

// --- homology -----------------------------------------------------------------

namespace {

ModuleClass class_from_orders(const GroundRing& R, const std::vector<Elem>& orders)
{
    ModuleClass mc;
    for (const auto& t : orders) {
        if (is_zero(R, t)) mc.free_rank++;
        else if (!is_unit(R, t)) mc.factors.push_back(t);
    }
    return mc;
}

// kernel/image presentation over a PID at one degree
DegreePresentation presentation_pid(const PerfectComplex& X, int n)
{
    const GroundRing& R = X.ring;
    Mat A = X.d(n);
    Mat K = kernel_basis(R, A); // rank(n) x s
    int s = K.cols;
    DegreePresentation out;
    if (s == 0) {
        out.gens = mat_zero(R, X.rank(n), 0);
        return out;
    }
    Mat B = X.d(n + 1);
    auto W = solve_linear_mat(R, K, B);
    if (!W) fail("NotPerfect", "image not inside kernel at degree " + std::to_string(n));
    auto sw = snf(R, *W);
    auto Uinv = solve_linear_mat(R, sw.U, mat_identity(R, s));
    if (!Uinv) fail("NotPerfect", "non-invertible SNF transform");
    out.gens = mat_mul(R, K, *Uinv);
    for (int i = 0; i < s; i++) {
        if (i < std::min(sw.D.rows, sw.D.cols)) out.orders.push_back(sw.D.at(i, i));
        else out.orders.push_back(ring_zero(R));
    }
    return out;
}

// homology over base/(q^e) by lifting free modules to the base PID
ModuleClass homology_quot_degree(const PerfectComplex& X, int n)
{
    const GroundRing& R = X.ring;
    GroundRing base = R.base_ring();
    long e = R.quot.e;
    Elem qe = ring_one(base);
    for (long i = 0; i < e; i++) qe = mul(base, qe, R.quot.q);

    int rn = X.rank(n), rlo = X.rank(n - 1), rhi = X.rank(n + 1);
    if (rn == 0) return {};
    // lift: residues are canonical base representatives already
    Mat M = X.d(n);     // entries base-liftable
    Mat Mup = X.d(n + 1);

    // kernel of the induced map: x with M x in q^e * base^rlo
    Mat K;
    if (rlo == 0) {
        K = mat_identity(base, rn);
    } else {
        Mat G = mat_hstack(base, M, mat_scale(base, qe, mat_identity(base, rlo)));
        Mat Kfull = kernel_basis(base, G);
        Mat proj = mat_submatrix(Kfull, 0, 0, rn, Kfull.cols);
        K = hnf_cols(base, proj);
    }
    int s = K.cols;
    if (s == 0) return {};
    // image generators: columns of d(n+1) plus q^e * identity
    Mat gens = mat_hstack(base, Mup, mat_scale(base, qe, mat_identity(base, rn)));
    auto W = solve_linear_mat(base, K, gens);
    if (!W) fail("NotPerfect", "image not inside kernel at degree " + std::to_string(n));
    auto sw = snf(base, *W);
    ModuleClass mc;
    for (int i = 0; i < s; i++) {
        Elem di = (i < std::min(sw.D.rows, sw.D.cols)) ? sw.D.at(i, i) : ring_zero(base);
        if (is_zero(base, di)) fail("NotPerfect", "infinite summand over local quotient");
        if (is_unit(base, di)) continue;
        // d_i is an associate of q^j
        long j = 0;
        Elem t = di;
        while (true) {
            auto dm = divmod(base, t, R.quot.q);
            if (!is_zero(base, dm.rem)) break;
            t = dm.quot;
            j++;
        }
        if (!is_unit(base, t)) fail("NotPerfect", "summand order is not a q-power");
        if (j >= e) mc.free_rank++;
        else mc.factors.push_back(quot_q_power(R, j));
    }
    return mc;
}

} // namespace

DegreePresentation homology_presentation(const PerfectComplex& X, int n)
{
    if (!X.ring.is_pid()) fail("RingMismatch", "presentation needs a PID");
    return presentation_pid(X, n);
}

HomologyProfile homology(const PerfectComplex& X)
{
    if (X.ring.kind == GroundRing::Kind::Product) {
        fail("RingMismatch", "homology over a product ring; split components first");
    }
    HomologyProfile H;
    for (int n = X.lo; n <= X.hi; n++) {
        ModuleClass mc;
        if (X.ring.is_pid()) {
            auto pres = presentation_pid(X, n);
            mc = class_from_orders(X.ring, pres.orders);
        } else {
            mc = homology_quot_degree(X, n);
        }
        if (!mc.trivial()) H[n] = mc;
    }
    return H;
}

bool quasi_class_equal(const PerfectComplex& X, const PerfectComplex& Y)
{
    if (X.ring != Y.ring) fail("RingMismatch", "quasi-class comparison rings");
    if (!X.ring.is_pid()) {
        fail("NotHereditary", "homology does not determine the class over " +
                                  X.ring.describe());
    }
    return homology(X) == homology(Y);
}

std::vector<PerfectComplex> split_product(const PerfectComplex& X)
{
    if (X.ring.kind != GroundRing::Kind::Product) {
        fail("RingMismatch", "split_product needs a product ring");
    }
    std::vector<PerfectComplex> out;
    for (int i = 0; i < (int)X.ring.comps.size(); i++) {
        GroundRing Ri = X.ring.component(i);
        PerfectComplex C;
        C.ring = Ri;
        C.lo = X.lo;
        C.hi = X.hi;
        C.ranks = X.ranks;
        for (auto& [n, M] : X.diff) {
            Mat Mi(M.rows, M.cols);
            for (size_t k = 0; k < M.a.size(); k++) {
                Mi.a[k] = product_part(X.ring, M.a[k], i);
            }
            C.diff[n] = Mi;
        }
        out.push_back(normalize(C));
    }
    return out;
}

PerfectComplex assemble_product(const GroundRing& R,
                                const std::vector<PerfectComplex>& parts)
{
    if (R.kind != GroundRing::Kind::Product) fail("RingMismatch", "assemble_product ring");
    if (parts.size() != R.comps.size()) fail("RingMismatch", "component count");
    PerfectComplex X;
    X.ring = R;
    int lo = 0, hi = -1;
    bool any = false;
    for (auto& P : parts) {
        if (P.empty()) continue;
        if (!any) {
            lo = P.lo;
            hi = P.hi;
            any = true;
        } else {
            lo = std::min(lo, P.lo);
            hi = std::max(hi, P.hi);
        }
    }
    if (!any) return X;
    // slotwise inverse of split_product: all parts must share one rank profile
    for (auto& P : parts) {
        for (int n = lo; n <= hi; n++) {
            if (P.rank(n) != parts[0].rank(n)) {
                fail("DimensionMismatch", "assemble_product needs equal rank profiles");
            }
        }
    }
    X.lo = lo;
    X.hi = hi;
    for (int n = lo; n <= hi; n++) {
        if (parts[0].rank(n) > 0) X.ranks[n] = parts[0].rank(n);
    }
    for (int n = lo + 1; n <= hi; n++) {
        int rows = X.rank(n - 1), cols = X.rank(n);
        if (rows == 0 || cols == 0) continue;
        Mat M = mat_zero(R, rows, cols);
        for (int r = 0; r < rows; r++) {
            for (int c = 0; c < cols; c++) {
                std::vector<Elem> packed(R.comps.size());
                for (size_t k = 0; k < R.comps.size(); k++) {
                    packed[k] = parts[k].d(n).at(r, c);
                }
                M.at(r, c) = product_pack(R, packed);
            }
        }
        M = mat_reduce(R, M);
        if (!mat_is_zero(R, M)) X.diff[n] = M;
    }
    return normalize(X);
}

std::string profile_str(const GroundRing& R, const HomologyProfile& H)
{
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto& [n, mc] : H) {
        if (!first) os << ", ";
        first = false;
        os << n << ": free " << mc.free_rank << " [";
        for (size_t i = 0; i < mc.factors.size(); i++) {
            if (i) os << ",";
            os << elem_str(R, mc.factors[i]);
        }
        os << "]";
    }
    os << "}";
    return os.str();
}

long total_torsion_length(const PerfectComplex& X)
{
    if (!X.ring.is_pid()) fail("RingMismatch", "torsion length needs a PID");
    long len = 0;
    for (auto& [n, mc] : homology(X)) {
        for (auto& t : mc.factors) {
            for (auto& [p, e] : factor(X.ring, t)) len += e;
        }
    }
    return len;
}

} // namespace cofib

#include "cofib/invariants.hpp"

namespace cofib {

bool ThickSupport::contains(const ThickSupport& other) const
{
    if (kind == Kind::ComponentSet || other.kind == Kind::ComponentSet) {
        if (kind != other.kind) {
            fail("RingMismatch", "comparing supports over unrelated spectra");
        }
        for (int i : other.components) {
            if (!components.count(i)) return false;
        }
        return true;
    }
    if (kind == Kind::Full) return true;
    if (other.kind == Kind::Full) return false;
    for (const auto& p : other.primes) {
        if (!primes.count(p)) return false;
    }
    return true;
}

std::string ThickSupport::str(const GroundRing& R) const
{
    if (kind == Kind::Full) return "Full";
    std::string s = "{";
    bool first = true;
    if (kind == Kind::MaxSet) {
        for (const auto& p : primes) {
            if (!first) s += ", ";
            s += "(" + elem_str(R.is_pid() ? R : R.base_ring(), p) + ")";
            first = false;
        }
    } else {
        for (int i : components) {
            if (!first) s += ", ";
            s += "c" + std::to_string(i);
            first = false;
        }
    }
    return s + "}";
}

ThickSupport supp(const PerfectComplex& X)
{
    const GroundRing& R = X.ring;
    if (R.is_pid()) {
        HomologyProfile H = homology(X);
        std::set<Elem> primes;
        for (const auto& [n, cls] : H) {
            if (cls.free_rank > 0) return ThickSupport::full();
            for (const auto& t : cls.factors) {
                for (const auto& [p, e] : factor(R, t)) primes.insert(p);
            }
        }
        return ThickSupport::max_set(std::move(primes));
    }
    if (R.kind == GroundRing::Kind::Quot) {
        return homology(X).empty() ? ThickSupport::component_set({})
                                   : ThickSupport::component_set({0});
    }
    // product ring: a component is in the support iff its slice has homology
    std::set<int> comps;
    auto parts = split_product(X);
    for (int i = 0; i < (int)parts.size(); i++) {
        if (!homology(parts[i]).empty()) comps.insert(i);
    }
    return ThickSupport::component_set(std::move(comps));
}

long chi_F(const PerfectComplex& X)
{
    if (!X.ring.is_pid()) fail("RingMismatch", "chi_F needs a fraction field");
    long chi = 0;
    for (int n = X.lo; n <= X.hi; n++) {
        chi += (n % 2 == 0 ? 1 : -1) * (long)X.rank(n);
    }
    return chi;
}

long lambda_p(const PerfectComplex& X, const Elem& p)
{
    const GroundRing& R = X.ring;
    if (!R.is_pid()) fail("RingMismatch", "lambda_p needs a PID");
    Elem pc = canonical_split(R, p).canon;
    if (!is_prime_elem(R, pc)) fail("MalformedInput", "lambda_p at a non-prime");
    HomologyProfile H = homology(X);
    long acc = 0;
    for (const auto& [n, cls] : H) {
        if (cls.free_rank > 0) {
            fail("NonTorsionInput", "lambda_p of a complex with free homology");
        }
        long len = 0;
        for (Elem t : cls.factors) {
            while (divides(R, pc, t)) {
                t = exact_div(R, t, pc);
                len++;
            }
        }
        acc += (n % 2 == 0 ? len : -len);
    }
    return acc;
}

long residue_rank(const QuotSpec& spec, const Mat& M)
{
    GroundRing B = spec.poly_base ? GroundRing::fpx(spec.p) : GroundRing::integers();
    auto red = [&](const Elem& x) { return divmod(B, reduce(B, x), spec.q).rem; };
    auto inv = [&](const Elem& x) {
        auto eg = exgcd(B, x, spec.q); // gcd is 1: q prime, x nonzero mod q
        return red(eg.s);
    };
    Mat A(M.rows, M.cols);
    for (size_t i = 0; i < A.a.size(); i++) A.a[i] = red(M.a[i]);
    long rank = 0;
    int row = 0;
    for (int col = 0; col < A.cols && row < A.rows; col++) {
        int piv = -1;
        for (int i = row; i < A.rows; i++) {
            if (!is_zero(B, A.at(i, col))) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        for (int j = 0; j < A.cols; j++) std::swap(A.at(row, j), A.at(piv, j));
        Elem s = inv(A.at(row, col));
        for (int j = col; j < A.cols; j++) A.at(row, j) = red(mul(B, s, A.at(row, j)));
        for (int i = 0; i < A.rows; i++) {
            if (i == row || is_zero(B, A.at(i, col))) continue;
            Elem c = A.at(i, col);
            for (int j = col; j < A.cols; j++) {
                A.at(i, j) = red(sub(B, A.at(i, j), mul(B, c, A.at(row, j))));
            }
        }
        rank++;
        row++;
    }
    return rank;
}

long lambda_artin(const PerfectComplex& X, int comp)
{
    const GroundRing& R = X.ring;
    QuotSpec spec;
    PerfectComplex part;
    if (R.kind == GroundRing::Kind::Quot) {
        if (comp != 0) fail("MalformedInput", "local ring has a single component");
        spec = R.quot;
        part = X;
    } else if (R.kind == GroundRing::Kind::Product) {
        if (comp < 0 || comp >= (int)R.comps.size()) {
            fail("MalformedInput", "component index out of range");
        }
        spec = R.comps[comp];
        part = split_product(X)[comp];
    } else {
        fail("RingMismatch", "lambda_artin needs an Artin ring");
    }
    // Euler characteristic of the residue-field reduction:
    // dim H_t = r_t - rank(d_t) - rank(d_{t+1})
    long acc = 0;
    for (int n = part.lo; n <= part.hi; n++) {
        long dim = (long)part.rank(n) - residue_rank(spec, part.d(n)) -
                   residue_rank(spec, part.d(n + 1));
        acc += (n % 2 == 0 ? dim : -dim);
    }
    return acc;
}

std::vector<mpz_class> K0Element::vector() const
{
    std::vector<mpz_class> v;
    switch (ambient.kind) {
    case ThickSupport::Kind::Full: v.emplace_back(chi); break;
    case ThickSupport::Kind::MaxSet:
        for (const auto& p : ambient.primes) {
            auto it = coords.find(p);
            v.emplace_back(it == coords.end() ? 0 : it->second);
        }
        break;
    case ThickSupport::Kind::ComponentSet:
        for (int i : ambient.components) {
            auto it = comp_coords.find(i);
            v.emplace_back(it == comp_coords.end() ? 0 : it->second);
        }
        break;
    }
    return v;
}

K0Element k0_class(const PerfectComplex& X, const ThickSupport& S)
{
    ThickSupport sX = supp(X);
    if (!S.contains(sX)) {
        fail("UnsupportedSupport", "class requested in a window not containing supp");
    }
    K0Element cls;
    cls.ambient = S;
    switch (S.kind) {
    case ThickSupport::Kind::Full: cls.chi = chi_F(X); break;
    case ThickSupport::Kind::MaxSet:
        for (const auto& p : S.primes) cls.coords[p] = lambda_p(X, p);
        break;
    case ThickSupport::Kind::ComponentSet:
        for (int i : S.components) cls.comp_coords[i] = lambda_artin(X, i);
        break;
    }
    return cls;
}

long k0_module_roundtrip(const PerfectComplex& X)
{
    if (!X.ring.is_pid()) fail("RingMismatch", "roundtrip check needs a PID");
    long from_homology = 0;
    for (const auto& [n, cls] : homology(X)) {
        from_homology += (n % 2 == 0 ? 1 : -1) * cls.free_rank;
    }
    long from_terms = chi_F(X);
    if (from_terms != from_homology) {
        fail("NotPerfect", "alternating rank sum disagrees with homology");
    }
    return from_terms;
}

} // namespace cofib

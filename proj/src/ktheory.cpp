#include "cofib/ktheory.hpp"

#include <algorithm>

namespace cofib {

namespace {

void check_window_ring(const GroundRing& R, const ThickSupport& S)
{
    bool pid_window = S.kind != ThickSupport::Kind::ComponentSet;
    if (pid_window != R.is_pid()) {
        fail("RingMismatch", "support window does not match the ring");
    }
}

bool mpz_is_prime(const mpz_class& m)
{
    Elem e;
    e.z = abs(m);
    return is_prime_elem(GroundRing::integers(), e);
}

// gcd-convention divisibility: 0 | w iff w == 0
bool div_mpz(const mpz_class& d, const mpz_class& w)
{
    if (d == 0) return w == 0;
    return mpz_divisible_p(w.get_mpz_t(), d.get_mpz_t()) != 0;
}

void check_subgroup_shape(const GroundRing& R, const SubgroupSpec& H)
{
    check_window_ring(R, H.support);
    switch (H.support.kind) {
    case ThickSupport::Kind::Full:
        if (!H.carrier.empty() || !H.comp_carrier.empty() || H.lattice.ambient != 1) {
            fail("MalformedInput", "Full-window subgroup must be a subgroup of Z");
        }
        break;
    case ThickSupport::Kind::MaxSet: {
        std::set<Elem> seen;
        for (const auto& p : H.carrier) {
            if (!H.support.primes.count(p) || !seen.insert(p).second) {
                fail("MalformedInput", "carrier must list distinct support primes");
            }
        }
        if (!H.comp_carrier.empty() || H.lattice.ambient != (int)H.carrier.size()) {
            fail("MalformedInput", "lattice dimension must match the carrier");
        }
        break;
    }
    case ThickSupport::Kind::ComponentSet: {
        std::set<int> seen;
        for (int i : H.comp_carrier) {
            if (!H.support.components.count(i) || !seen.insert(i).second) {
                fail("MalformedInput", "carrier must list distinct components");
            }
        }
        if (!H.carrier.empty() || H.lattice.ambient != (int)H.comp_carrier.size()) {
            fail("MalformedInput", "lattice dimension must match the carrier");
        }
        break;
    }
    }
}

} // namespace

K0Presentation k0_group(const GroundRing& R, const ThickSupport& S)
{
    check_window_ring(R, S);
    K0Presentation P;
    switch (S.kind) {
    case ThickSupport::Kind::Full:
        P.rank = 1;
        P.basis = {"[R]"};
        break;
    case ThickSupport::Kind::MaxSet:
        for (const auto& p : S.primes) {
            P.basis.push_back("[M(" + elem_str(R, p) + ")]");
        }
        P.rank = (long)P.basis.size();
        break;
    case ThickSupport::Kind::ComponentSet:
        for (int i : S.components) P.basis.push_back("[R_" + std::to_string(i) + "]");
        P.rank = (long)P.basis.size();
        break;
    }
    return P;
}

SubgroupSpec subgroup_from_generators(const GroundRing& R, const ThickSupport& S,
                                      const std::vector<std::vector<mpz_class>>& gens)
{
    SubgroupSpec H;
    H.support = S;
    long dim = 1;
    if (S.kind == ThickSupport::Kind::MaxSet) {
        H.carrier.assign(S.primes.begin(), S.primes.end());
        dim = (long)H.carrier.size();
    } else if (S.kind == ThickSupport::Kind::ComponentSet) {
        H.comp_carrier.assign(S.components.begin(), S.components.end());
        dim = (long)H.comp_carrier.size();
    }
    for (const auto& g : gens) {
        if ((long)g.size() != dim) {
            fail("MalformedInput", "subgroup generator has wrong length");
        }
    }
    H.lattice = lattice_from_generators((int)dim, gens);
    check_subgroup_shape(R, H);
    return H;
}

bool is_member(const PerfectComplex& X, const SubgroupSpec& H)
{
    check_subgroup_shape(X.ring, H);
    const ThickSupport& S = H.support;
    ThickSupport sX = supp(X);
    if (!S.contains(sX)) return false;

    if (S.kind == ThickSupport::Kind::Full) {
        return lattice_contains(H.lattice, {mpz_class(chi_F(X))});
    }
    K0Element cls = k0_class(X, S);
    if (S.kind == ThickSupport::Kind::MaxSet) {
        std::vector<mpz_class> v;
        std::set<Elem> in_carrier(H.carrier.begin(), H.carrier.end());
        for (const auto& p : H.carrier) v.emplace_back(cls.coords.at(p));
        if (!lattice_contains(H.lattice, v)) return false;
        if (H.outside == SubgroupSpec::Outside::Zero) {
            for (const auto& p : S.primes) {
                if (!in_carrier.count(p) && cls.coords.at(p) != 0) return false;
            }
        }
        return true;
    }
    std::vector<mpz_class> v;
    std::set<int> in_carrier(H.comp_carrier.begin(), H.comp_carrier.end());
    for (int i : H.comp_carrier) v.emplace_back(cls.comp_coords.at(i));
    if (!lattice_contains(H.lattice, v)) return false;
    if (H.outside == SubgroupSpec::Outside::Zero) {
        for (int i : S.components) {
            if (!in_carrier.count(i) && cls.comp_coords.at(i) != 0) return false;
        }
    }
    return true;
}

SubgroupSpec image_subgroup(const std::vector<PerfectComplex>& gens,
                            const ThickSupport& S)
{
    SubgroupSpec H;
    H.support = S;
    H.outside = SubgroupSpec::Outside::Zero;

    if (S.kind == ThickSupport::Kind::Full) {
        std::vector<std::vector<mpz_class>> vecs;
        for (const auto& X : gens) vecs.push_back({mpz_class(k0_class(X, S).chi)});
        H.lattice = lattice_from_generators(1, vecs);
        return H;
    }
    if (S.kind == ThickSupport::Kind::MaxSet) {
        std::set<Elem> used;
        for (const auto& X : gens) {
            ThickSupport s = supp(X);
            if (!S.contains(s)) fail("UnsupportedSupport", "generator outside window");
            used.insert(s.primes.begin(), s.primes.end());
        }
        H.carrier.assign(used.begin(), used.end());
        ThickSupport W = ThickSupport::max_set(used);
        std::vector<std::vector<mpz_class>> vecs;
        for (const auto& X : gens) vecs.push_back(k0_class(X, W).vector());
        H.lattice = lattice_from_generators((int)H.carrier.size(), vecs);
        return H;
    }
    std::set<int> used;
    for (const auto& X : gens) {
        ThickSupport s = supp(X);
        if (!S.contains(s)) fail("UnsupportedSupport", "generator outside window");
        used.insert(s.components.begin(), s.components.end());
    }
    H.comp_carrier.assign(used.begin(), used.end());
    ThickSupport W = ThickSupport::component_set(used);
    std::vector<std::vector<mpz_class>> vecs;
    for (const auto& X : gens) vecs.push_back(k0_class(X, W).vector());
    H.lattice = lattice_from_generators((int)H.comp_carrier.size(), vecs);
    return H;
}

SubgroupFlags classify_subgroup(const GroundRing& R, const SubgroupSpec& H)
{
    check_subgroup_shape(R, H);
    SubgroupFlags f;
    const IntLattice& L = H.lattice;

    if (H.support.kind == ThickSupport::Kind::Full) {
        // K0 = Z as a ring; H = mZ
        mpz_class m = L.rank() == 0 ? mpz_class(0) : abs(L.basis.at(0, 0).z);
        f.ideal = true;
        f.prime = (m == 0) || mpz_is_prime(m);
        f.maximal = mpz_is_prime(m);
        return f;
    }
    if (H.support.kind == ThickSupport::Kind::MaxSet) {
        // torsion window: the K-group is a module over the ambient K0-ring;
        // every subgroup is a submodule, the spectrum notions do not apply
        f.ideal = true;
        return f;
    }

    // componentwise ring Z^S: ideal iff closed under coordinate idempotents
    f.ideal = true;
    for (int j = 0; j < L.rank() && f.ideal; j++) {
        for (int k = 0; k < L.ambient && f.ideal; k++) {
            std::vector<mpz_class> proj(L.ambient, 0);
            proj[k] = L.basis.at(k, j).z;
            if (!lattice_contains(L, proj)) f.ideal = false;
        }
    }
    if (!f.ideal) return f;

    // coordinate orders over the whole window: carrier coordinates carry the
    // gcd of the basis entries, outside ones follow the default
    std::vector<mpz_class> m;
    {
        std::map<int, int> idx; // window coordinate -> carrier column
        int c = 0;
        for (int i : H.comp_carrier) idx[i] = c++;
        for (int i : H.support.components) {
            if (idx.count(i)) {
                mpz_class g = 0;
                for (int j = 0; j < L.rank(); j++) {
                    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(),
                            L.basis.at(idx[i], j).z.get_mpz_t());
                }
                m.push_back(g);
            } else {
                m.push_back(H.outside == SubgroupSpec::Outside::Zero ? 0 : 1);
            }
        }
    }
    // quotient is prod Z/m_k: a domain iff one factor is nontrivial and that
    // factor is Z or Z/p; a field iff that factor is Z/p
    int nontrivial = 0;
    mpz_class the_m = 1;
    for (const auto& mk : m) {
        if (mk != 1) {
            nontrivial++;
            the_m = mk;
        }
    }
    if (nontrivial == 1) {
        f.prime = (the_m == 0) || mpz_is_prime(the_m);
        f.maximal = mpz_is_prime(the_m);
    }
    return f;
}

GenDecision can_generate(const std::vector<PerfectComplex>& gens,
                         const PerfectComplex& Y)
{
    const GroundRing& R = Y.ring;
    for (const auto& g : gens) {
        if (g.ring != R) fail("RingMismatch", "generators over a different ring");
    }
    GenDecision dec;
    ThickSupport sY = supp(Y);

    if (R.is_pid()) {
        bool any_full = false;
        std::set<Elem> union_primes;
        for (const auto& g : gens) {
            ThickSupport s = supp(g);
            if (s.kind == ThickSupport::Kind::Full) any_full = true;
            else union_primes.insert(s.primes.begin(), s.primes.end());
        }
        if (any_full) {
            dec.support_ok = true; // a Full window contains everything
            mpz_class req = 0, cand = chi_F(Y);
            for (const auto& g : gens) {
                mpz_class c = chi_F(g);
                mpz_gcd(req.get_mpz_t(), req.get_mpz_t(), c.get_mpz_t());
            }
            GenDecision::Row row{"(0)", req, cand, div_mpz(req, cand)};
            dec.rows.push_back(row);
            dec.verdict = row.divides;
            return dec;
        }
        ThickSupport U = ThickSupport::max_set(union_primes);
        dec.support_ok = sY.kind != ThickSupport::Kind::Full && U.contains(sY);
        if (!dec.support_ok) return dec;
        bool all = true;
        for (const auto& p : union_primes) {
            mpz_class req = 0, cand = lambda_p(Y, p);
            for (const auto& g : gens) {
                mpz_class c = lambda_p(g, p);
                mpz_gcd(req.get_mpz_t(), req.get_mpz_t(), c.get_mpz_t());
            }
            GenDecision::Row row{"(" + elem_str(R, p) + ")", req, cand,
                                 div_mpz(req, cand)};
            all = all && row.divides;
            dec.rows.push_back(std::move(row));
        }
        dec.verdict = all;
        return dec;
    }

    if (R.kind != GroundRing::Kind::Product) {
        fail("RingMismatch", "generation decisions need a PID or a product ring");
    }
    std::set<int> union_comps;
    for (const auto& g : gens) {
        ThickSupport s = supp(g);
        union_comps.insert(s.components.begin(), s.components.end());
    }
    ThickSupport U = ThickSupport::component_set(union_comps);
    dec.support_ok = U.contains(sY);
    if (!dec.support_ok) return dec;
    bool all = true;
    for (int i : union_comps) {
        mpz_class req = 0, cand = lambda_artin(Y, i);
        for (const auto& g : gens) {
            mpz_class c = lambda_artin(g, i);
            mpz_gcd(req.get_mpz_t(), req.get_mpz_t(), c.get_mpz_t());
        }
        GenDecision::Row row{"c" + std::to_string(i), req, cand, div_mpz(req, cand)};
        all = all && row.divides;
        dec.rows.push_back(std::move(row));
    }
    dec.verdict = all;
    return dec;
}

} // namespace cofib

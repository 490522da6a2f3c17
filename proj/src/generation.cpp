#include "cofib/generation.hpp"

namespace cofib {

namespace {

PerfectComplex atom_complex(const GroundRing& R, const AtomSpec& a)
{
    if (a.unit) return shift(unit_complex(R), a.shift);
    if (!is_prime_elem(R, a.p)) {
        fail("MalformedCertificate", "Moore atom at a non-prime");
    }
    return shift(moore(R, a.p), a.shift);
}

struct Builder {
    Certificate cert;
    std::map<std::string, PerfectComplex> objs;
    int next_step = 0;

    explicit Builder(const GroundRing& R) { cert.ring = R; }

    PerfectComplex resolve(const ObjRef& r) const
    {
        if (r.id.empty()) return zero_complex(cert.ring);
        auto it = objs.find(r.id);
        if (it == objs.end()) fail("MalformedCertificate", "unknown object " + r.id);
        return shift(it->second, r.shift);
    }

    std::string add_atom(bool unit, const Elem& p, int sh)
    {
        std::string id = "a" + std::to_string(cert.atoms.size());
        cert.atoms.push_back({unit, p, sh});
        objs[id] = atom_complex(cert.ring, cert.atoms.back());
        return id;
    }

    // f must have source == resolve(src) and target == resolve(dst)
    std::string add_cone(const ObjRef& src, const ObjRef& dst, const ChainMap& f)
    {
        std::string id = "s" + std::to_string(next_step++);
        cert.steps.push_back({id, src, dst, f.components});
        objs[id] = cone(f);
        return id;
    }
};

// A complex with H_n = R/(p) realized inside the certificate: a Moore atom
// when Moore atoms are allowed, otherwise the cone of p on two unit atoms.
std::string moore_object(Builder& b, const Elem& p, int n, bool unit_window)
{
    const GroundRing& R = b.cert.ring;
    if (!unit_window) return b.add_atom(false, p, n);
    std::string u1 = b.add_atom(true, {}, n);
    std::string u2 = b.add_atom(true, {}, n);
    ChainMap f;
    f.source = b.objs.at(u1);
    f.target = b.objs.at(u2);
    Mat m(1, 1);
    m.at(0, 0) = reduce(R, p);
    f.components[n] = m;
    return b.add_cone({u1, 0}, {u2, 0}, f);
}

// Generator column of the p-power cyclic H_n of the tower stage.
Mat torsion_generator(const PerfectComplex& T, int n)
{
    const GroundRing& R = T.ring;
    auto pres = homology_presentation(T, n);
    for (size_t i = 0; i < pres.orders.size(); i++) {
        const Elem& t = pres.orders[i];
        if (!is_zero(R, t) && !is_unit(R, t)) {
            return mat_from_cols(R, pres.gens.rows, {mat_col(pres.gens, i)});
        }
    }
    fail("NotPerfect", "tower stage lost its torsion class");
}

// Tower realizing R/(p^e) in degree n by e-1 cones on Moore pieces.
std::string build_tower(Builder& b, const Elem& p, long e, int n, bool unit_window)
{
    const GroundRing& R = b.cert.ring;
    std::string cur = moore_object(b, p, n, unit_window);
    for (long i = 1; i < e; i++) {
        std::string src = moore_object(b, p, n - 1, unit_window);
        ChainMap g;
        g.source = b.objs.at(src);
        g.target = b.objs.at(cur);
        g.components[n] = torsion_generator(g.target, n);
        cur = b.add_cone({src, 0}, {cur, 0}, g);
    }
    return cur;
}

// acc (+) next, expressed as one cone on the zero map
std::string join(Builder& b, const std::string& acc, const std::string& next)
{
    if (acc.empty()) return next;
    ChainMap z = zero_map(shift(b.objs.at(acc), -1), b.objs.at(next));
    return b.add_cone({acc, -1}, {next, 0}, z);
}

// alpha: M -> X killing an order-p class at the lowest degree where p
// divides an invariant factor; M must be a two-term complex with
// H_k = R/(p) placed at that degree (its differential entry is +-p).
ChainMap kill_with(const PerfectComplex& X, const Elem& p, const PerfectComplex& M,
                   int k)
{
    const GroundRing& R = X.ring;
    auto pres = homology_presentation(X, k);
    int idx = -1;
    for (size_t i = 0; i < pres.orders.size(); i++) {
        const Elem& t = pres.orders[i];
        if (!is_zero(R, t) && !is_unit(R, t) && divides(R, p, t)) {
            idx = (int)i;
            break;
        }
    }
    if (idx < 0) fail("UnsupportedSupport", "no p-torsion at the requested degree");
    Elem scale = exact_div(R, pres.orders[idx], p);
    std::vector<Elem> z(pres.gens.rows);
    for (int i = 0; i < pres.gens.rows; i++) {
        z[i] = mul(R, scale, pres.gens.at(i, idx));
    }
    // chain condition: d y = m * z with m the differential entry of M
    Elem m = M.d(k + 1).at(0, 0);
    std::vector<Elem> rhs(z.size());
    for (size_t i = 0; i < z.size(); i++) rhs[i] = mul(R, m, z[i]);
    auto y = solve_linear(R, X.d(k + 1), rhs);
    if (!y) fail("NotPerfect", "order-p class is not killable");

    ChainMap alpha;
    alpha.source = M;
    alpha.target = X;
    alpha.components[k] = mat_from_cols(R, (int)z.size(), {z});
    alpha.components[k + 1] = mat_from_cols(R, (int)y->size(), {*y});
    validate(alpha);
    return alpha;
}

// lowest degree carrying torsion divisible by p (or any torsion for null p)
int bottom_torsion_degree(const GroundRing& R, const HomologyProfile& H,
                          const Elem* p)
{
    for (const auto& [n, cls] : H) {
        for (const auto& t : cls.factors) {
            if (!p || divides(R, *p, t)) return n;
        }
    }
    fail("UnsupportedSupport", "no matching torsion class");
}

} // namespace

KillResult kill_bottom_class(const PerfectComplex& X, const Elem& p)
{
    const GroundRing& R = X.ring;
    if (!R.is_pid()) fail("RingMismatch", "killing classes needs a PID");
    Elem pc = canonical_split(R, p).canon;
    if (!is_prime_elem(R, pc)) fail("MalformedInput", "kill at a non-prime");
    HomologyProfile H = homology(X);
    for (const auto& [n, cls] : H) {
        if (cls.free_rank > 0) fail("NonTorsionInput", "free class below the torsion");
    }
    int k = bottom_torsion_degree(R, H, &pc);
    PerfectComplex M = shift(moore(R, pc), k);
    KillResult res;
    res.alpha = kill_with(X, pc, M, k);
    res.residual = cone(res.alpha);
    res.prime = pc;
    res.degree = k;
    return res;
}

namespace {

Certificate plan_formality(const PerfectComplex& Y, const ThickSupport& S)
{
    const GroundRing& R = Y.ring;
    bool unit_window = S.kind == ThickSupport::Kind::Full;
    Builder b(R);
    b.cert.claimed = homology(Y);

    std::string acc;
    for (const auto& [n, cls] : b.cert.claimed) {
        for (long r = 0; r < cls.free_rank; r++) {
            acc = join(b, acc, b.add_atom(true, {}, n));
        }
        for (const auto& t : cls.factors) {
            if (unit_window) {
                // any cyclic torsion module is one cone away from units
                std::string u1 = b.add_atom(true, {}, n);
                std::string u2 = b.add_atom(true, {}, n);
                ChainMap f;
                f.source = b.objs.at(u1);
                f.target = b.objs.at(u2);
                Mat m(1, 1);
                m.at(0, 0) = reduce(R, t);
                f.components[n] = m;
                acc = join(b, acc, b.add_cone({u1, 0}, {u2, 0}, f));
            } else {
                for (const auto& [p, e] : factor(R, t)) {
                    acc = join(b, acc, build_tower(b, p, e, n, false));
                }
            }
        }
    }
    b.cert.final_id = acc;
    return b.cert;
}

Certificate plan_kill(const PerfectComplex& Y, const ThickSupport& S)
{
    const GroundRing& R = Y.ring;
    bool unit_window = S.kind == ThickSupport::Kind::Full;
    Builder b(R);
    b.cert.claimed = homology(Y);

    // forward pass: repeatedly kill the bottom torsion class
    struct Stage {
        Elem p;
        int k = 0;
        ChainMap alpha;        // M -> X_{j-1}
        PerfectComplex before; // X_{j-1}
        PerfectComplex after;  // X_j = cone(alpha)
    };
    std::vector<Stage> stages;
    PerfectComplex X = Y;
    auto has_torsion = [](const HomologyProfile& H) {
        for (const auto& [n, cls] : H) {
            if (!cls.factors.empty()) return true;
        }
        return false;
    };
    while (true) {
        HomologyProfile H = homology(X);
        if (!has_torsion(H)) break;
        int k = bottom_torsion_degree(R, H, nullptr);
        Elem p = factor(R, H.at(k).factors[0])[0].first;
        Stage st;
        st.p = p;
        st.k = k;
        st.before = X;
        // the model the certificate will rebuild for this Moore piece
        PerfectComplex M;
        if (unit_window) {
            ChainMap f;
            f.source = shift(unit_complex(R), k);
            f.target = f.source;
            Mat m(1, 1);
            m.at(0, 0) = reduce(R, p);
            f.components[k] = m;
            M = cone(f);
        } else {
            M = shift(moore(R, p), k);
        }
        st.alpha = kill_with(X, p, M, k);
        st.after = cone(st.alpha);
        X = st.after;
        stages.push_back(std::move(st));
    }

    // backward pass seed: the torsion-free residue is matched by unit atoms
    // hitting its free generator classes (nothing to do when X is acyclic)
    std::string bid; // empty = zero complex
    PerfectComplex B = zero_complex(R);
    ChainMap phi = zero_map(B, X);
    for (const auto& [n, cls] : homology(X)) {
        auto pres = homology_presentation(X, n);
        for (size_t i = 0; i < pres.orders.size(); i++) {
            if (!is_zero(R, pres.orders[i])) continue;
            std::string uid = b.add_atom(true, {}, n);
            const PerfectComplex& U = b.objs.at(uid);
            // join: B' = cone(0: B[-1] -> U) = B (+) U, phi extended by the
            // cycle generating this free summand
            ChainMap z = zero_map(shift(B, -1), U);
            std::string nid = b.add_cone({bid, -1}, {uid, 0}, z);
            PerfectComplex Bnew = b.objs.at(nid);
            ChainMap phi2;
            phi2.source = Bnew;
            phi2.target = X;
            for (int m = Bnew.lo; m <= Bnew.hi; m++) {
                if (Bnew.rank(m) == 0 || X.rank(m) == 0) continue;
                Mat right = m == n
                                ? mat_from_cols(R, pres.gens.rows,
                                                {mat_col(pres.gens, (int)i)})
                                : mat_zero(R, X.rank(m), U.rank(m));
                phi2.components[m] = mat_hstack(R, phi.at(m), right);
            }
            validate(phi2);
            B = Bnew;
            bid = nid;
            phi = phi2;
        }
    }

    // backward pass: rebuild Y from the contractible end, transporting a
    // quasi-isomorphism phi: B -> X_j as each cone is peeled off
    for (int j = (int)stages.size() - 1; j >= 0; j--) {
        const Stage& st = stages[j];
        std::string mid = moore_object(b, st.p, st.k, unit_window);
        const PerfectComplex& M = b.objs.at(mid);
        ChainMap delta = shift_map(cone_projection(st.alpha, st.after), -1);
        ChainMap psi = compose(delta, shift_map(phi, -1));
        std::string nid = b.add_cone({bid, -1}, {mid, 0}, psi);
        PerfectComplex Bnew = b.objs.at(nid);

        // phi'(u, m) = proj(phi(u)) - alpha(m), projection onto the cone target
        ChainMap phi2;
        phi2.source = Bnew;
        phi2.target = st.before;
        for (int n = Bnew.lo; n <= Bnew.hi; n++) {
            int bw = B.rank(n), mw = M.rank(n);
            if (bw + mw == 0 || st.before.rank(n) == 0) continue;
            int mrows = M.rank(n - 1); // leading block of cone(alpha) at degree n
            Mat left = mat_submatrix(phi.at(n), mrows, 0, st.before.rank(n), bw);
            Mat right = mat_neg(R, st.alpha.at(n));
            phi2.components[n] = mat_hstack(R, left, right);
        }
        validate(phi2);
        B = Bnew;
        bid = nid;
        phi = phi2;
    }
    b.cert.final_id = bid;
    return b.cert;
}

} // namespace

Certificate plan(const PerfectComplex& Y, const ThickSupport& S,
                 PlanStrategy strategy)
{
    if (!Y.ring.is_pid()) fail("RingMismatch", "certificates live over a PID");
    validate(Y);
    if (!S.contains(supp(Y))) {
        fail("UnsupportedSupport", "target lies outside the window");
    }
    Certificate cert = strategy == PlanStrategy::Formality ? plan_formality(Y, S)
                                                           : plan_kill(Y, S);
    return cert;
}

Certificate plan_from_generators(const PerfectComplex& Y,
                                 const std::vector<PerfectComplex>& gens)
{
    for (const auto& g : gens) {
        bool unit_atom = g == unit_complex(g.ring);
        bool moore_atom = false;
        if (g.ring.is_pid() && g.lo == 0 && g.hi == 1 && g.rank(0) == 1 &&
            g.rank(1) == 1) {
            moore_atom = is_prime_elem(g.ring, g.d(1).at(0, 0));
        }
        if (!unit_atom && !moore_atom) {
            fail("UnsupportedGenerators",
                 "certificate synthesis is only effective from standard atoms");
        }
    }
    // all generators are standard atoms: delegate to the window planner
    bool any_unit = false;
    std::set<Elem> primes;
    for (const auto& g : gens) {
        if (g == unit_complex(g.ring)) any_unit = true;
        else primes.insert(canonical_split(g.ring, g.d(1).at(0, 0)).canon);
    }
    ThickSupport S = any_unit ? ThickSupport::full() : ThickSupport::max_set(primes);
    return plan(Y, S);
}

PerfectComplex replay(const Certificate& cert, const ObjRef& ref)
{
    Builder b(cert.ring);
    for (size_t i = 0; i < cert.atoms.size(); i++) {
        b.objs["a" + std::to_string(i)] = atom_complex(cert.ring, cert.atoms[i]);
    }
    for (const auto& st : cert.steps) {
        if (st.id.empty() || b.objs.count(st.id)) {
            fail("MalformedCertificate", "bad step id " + st.id);
        }
        ChainMap f;
        f.source = b.resolve(st.src);
        f.target = b.resolve(st.dst);
        f.components = st.components;
        b.objs[st.id] = cone(f);
    }
    return b.resolve(ref);
}

VerifyReport verify(const Certificate& cert)
{
    VerifyReport rep;
    try {
        if (!cert.ring.is_pid()) {
            fail("MalformedCertificate", "certificates live over a PID");
        }
        Builder b(cert.ring);
        for (size_t i = 0; i < cert.atoms.size(); i++) {
            b.objs["a" + std::to_string(i)] = atom_complex(cert.ring, cert.atoms[i]);
        }
        for (const auto& st : cert.steps) {
            rep.failing_step = st.id;
            if (st.id.empty() || b.objs.count(st.id)) {
                fail("MalformedCertificate", "bad step id " + st.id);
            }
            ChainMap f;
            f.source = b.resolve(st.src);
            f.target = b.resolve(st.dst);
            f.components = st.components;
            validate(f); // shapes and the chain condition
            b.objs[st.id] = cone(f);
        }
        rep.failing_step = "final";
        PerfectComplex out = b.resolve({cert.final_id, 0});
        if (!(homology(out) == cert.claimed)) {
            rep.reason = "homology does not match the claimed profile";
            return rep;
        }
        rep.ok = true;
        rep.failing_step.clear();
    } catch (const DomainError& e) {
        rep.ok = false;
        rep.reason = e.what();
    }
    return rep;
}

} // namespace cofib

#include "cofib/json_io.hpp"

namespace cofib {

namespace {

const json& field(const json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name)) {
        fail("MalformedInput", std::string("missing field '") + name + "'");
    }
    return j.at(name);
}

long get_long(const json& j, const char* what)
{
    if (!j.is_number_integer()) {
        fail("MalformedInput", std::string(what) + " must be an integer");
    }
    return j.get<long>();
}

std::string get_string(const json& j, const char* what)
{
    if (!j.is_string()) fail("MalformedInput", std::string(what) + " must be a string");
    return j.get<std::string>();
}

mpz_class mpz_from_json(const json& j)
{
    if (j.is_number_integer()) return mpz_class(j.get<long>());
    std::string s = get_string(j, "integer");
    if (s.empty()) fail("MalformedInput", "empty integer literal");
    try {
        return mpz_class(s, 10);
    } catch (const std::invalid_argument&) {
        fail("MalformedInput", "bad integer literal '" + s + "'");
    }
}

json mpz_to_json(const mpz_class& v)
{
    return v.get_str();
}

Poly poly_from_json(const json& j)
{
    if (!j.is_array()) fail("MalformedInput", "polynomial must be an array");
    Poly f;
    for (const auto& c : j) f.push_back(get_long(c, "coefficient"));
    return f;
}

} // namespace

json ring_to_json(const GroundRing& R)
{
    json j;
    switch (R.kind) {
    case GroundRing::Kind::Z: j["kind"] = "Z"; break;
    case GroundRing::Kind::Fpx:
        j["kind"] = "Fpx";
        j["p"] = R.p;
        break;
    case GroundRing::Kind::Quot: {
        j["kind"] = "quotient";
        GroundRing B = R.base_ring();
        j["base"] = ring_to_json(B);
        j["q"] = elem_to_json(B, R.quot.q);
        j["e"] = R.quot.e;
        break;
    }
    case GroundRing::Kind::Product: {
        j["kind"] = "product";
        json comps = json::array();
        for (int i = 0; i < (int)R.comps.size(); i++) {
            comps.push_back(ring_to_json(R.component(i)));
        }
        j["components"] = comps;
        break;
    }
    }
    return j;
}

GroundRing ring_from_json(const json& j)
{
    std::string kind = get_string(field(j, "kind"), "ring kind");
    if (kind == "Z") return GroundRing::integers();
    if (kind == "Fpx") return GroundRing::fpx(get_long(field(j, "p"), "p"));
    if (kind == "quotient") {
        GroundRing base = ring_from_json(field(j, "base"));
        if (!base.is_pid()) fail("MalformedInput", "quotient base must be Z or F_p[x]");
        Elem q = elem_from_json(base, field(j, "q"));
        return GroundRing::quotient(base, q, get_long(field(j, "e"), "e"));
    }
    if (kind == "product") {
        const json& comps = field(j, "components");
        if (!comps.is_array() || comps.empty()) {
            fail("MalformedInput", "product needs a nonempty component list");
        }
        std::vector<GroundRing> locals;
        for (const auto& c : comps) locals.push_back(ring_from_json(c));
        return GroundRing::product(locals);
    }
    fail("MalformedInput", "unknown ring kind '" + kind + "'");
}

json elem_to_json(const GroundRing& R, const Elem& x)
{
    if (R.kind == GroundRing::Kind::Product) {
        json arr = json::array();
        for (int i = 0; i < (int)R.comps.size(); i++) {
            arr.push_back(elem_to_json(R.component(i), product_part(R, x, i)));
        }
        return arr;
    }
    if (R.poly_flavor()) return json(x.poly);
    return mpz_to_json(x.z);
}

Elem elem_from_json(const GroundRing& R, const json& j)
{
    if (R.kind == GroundRing::Kind::Product) {
        if (!j.is_array() || j.size() != R.comps.size()) {
            fail("MalformedInput", "product element needs one entry per component");
        }
        std::vector<Elem> parts;
        for (size_t i = 0; i < R.comps.size(); i++) {
            parts.push_back(elem_from_json(R.component((int)i), j[i]));
        }
        return product_pack(R, parts);
    }
    Elem x;
    if (R.poly_flavor()) x.poly = poly_from_json(j);
    else x.z = mpz_from_json(j);
    return reduce(R, x);
}

json mat_to_json(const GroundRing& R, const Mat& M)
{
    json rows = json::array();
    for (int i = 0; i < M.rows; i++) {
        json row = json::array();
        for (int j = 0; j < M.cols; j++) row.push_back(elem_to_json(R, M.at(i, j)));
        rows.push_back(row);
    }
    json j;
    j["rows"] = M.rows;
    j["cols"] = M.cols;
    j["entries"] = rows;
    return j;
}

Mat mat_from_json(const GroundRing& R, const json& j)
{
    long r = get_long(field(j, "rows"), "rows");
    long c = get_long(field(j, "cols"), "cols");
    if (r < 0 || c < 0) fail("MalformedInput", "negative matrix dimension");
    const json& entries = field(j, "entries");
    if (!entries.is_array() || (long)entries.size() != r) {
        fail("MalformedInput", "matrix row count mismatch");
    }
    Mat M = mat_zero(R, (int)r, (int)c);
    for (long i = 0; i < r; i++) {
        const json& row = entries[i];
        if (!row.is_array() || (long)row.size() != c) {
            fail("MalformedInput", "matrix column count mismatch");
        }
        for (long k = 0; k < c; k++) M.at((int)i, (int)k) = elem_from_json(R, row[k]);
    }
    return M;
}

json complex_to_json(const PerfectComplex& X)
{
    json j;
    j["ring"] = ring_to_json(X.ring);
    j["lo"] = X.lo;
    json ranks = json::array(), diffs = json::array();
    for (int n = X.lo; n <= X.hi; n++) ranks.push_back(X.rank(n));
    for (int n = X.lo + 1; n <= X.hi; n++) diffs.push_back(mat_to_json(X.ring, X.d(n)));
    j["ranks"] = ranks;
    j["diffs"] = diffs;
    return j;
}

PerfectComplex complex_from_json(const json& j)
{
    GroundRing R = ring_from_json(field(j, "ring"));
    long lo = get_long(field(j, "lo"), "lo");
    const json& ranks = field(j, "ranks");
    const json& diffs = field(j, "diffs");
    if (!ranks.is_array() || !diffs.is_array()) {
        fail("MalformedInput", "ranks and diffs must be arrays");
    }
    if (!ranks.empty() && diffs.size() + 1 != ranks.size()) {
        fail("MalformedInput", "need one differential between consecutive degrees");
    }
    std::vector<int> rs;
    for (const auto& r : ranks) {
        long v = get_long(r, "rank");
        if (v < 0) fail("MalformedInput", "negative rank");
        rs.push_back((int)v);
    }
    std::vector<Mat> ds;
    for (const auto& d : diffs) ds.push_back(mat_from_json(R, d));
    try {
        return make_complex(R, (int)lo, rs, ds);
    } catch (const DomainError& e) {
        fail("MalformedInput", std::string("invalid complex: ") + e.what());
    }
}

json chain_map_to_json(const ChainMap& f)
{
    json j;
    j["source"] = complex_to_json(f.source);
    j["target"] = complex_to_json(f.target);
    json comps = json::object();
    for (const auto& [n, M] : f.components) {
        comps[std::to_string(n)] = mat_to_json(f.source.ring, M);
    }
    j["components"] = comps;
    return j;
}

ChainMap chain_map_from_json(const json& j)
{
    ChainMap f;
    f.source = complex_from_json(field(j, "source"));
    f.target = complex_from_json(field(j, "target"));
    const json& comps = field(j, "components");
    if (!comps.is_object()) fail("MalformedInput", "components must be an object");
    for (auto it = comps.begin(); it != comps.end(); ++it) {
        int n;
        try {
            n = std::stoi(it.key());
        } catch (const std::exception&) {
            fail("MalformedInput", "component key must be a degree");
        }
        f.components[n] = mat_from_json(f.source.ring, it.value());
    }
    try {
        validate(f);
    } catch (const DomainError& e) {
        fail("MalformedInput", std::string("invalid chain map: ") + e.what());
    }
    return f;
}

json support_to_json(const GroundRing& R, const ThickSupport& S)
{
    if (S.kind == ThickSupport::Kind::Full) return json("Full");
    json j;
    if (S.kind == ThickSupport::Kind::MaxSet) {
        json arr = json::array();
        GroundRing B = R.is_pid() ? R : R.base_ring();
        for (const auto& p : S.primes) arr.push_back(elem_to_json(B, p));
        j["max"] = arr;
    } else {
        json arr = json::array();
        for (int i : S.components) arr.push_back(i);
        j["components"] = arr;
    }
    return j;
}

ThickSupport support_from_json(const GroundRing& R, const json& j)
{
    if (j.is_string() && j.get<std::string>() == "Full") return ThickSupport::full();
    if (j.is_object() && j.contains("max")) {
        const json& arr = j.at("max");
        if (!arr.is_array()) fail("MalformedInput", "max must be an array");
        if (!R.is_pid()) fail("MalformedInput", "closed-point support needs a PID");
        std::set<Elem> ps;
        for (const auto& e : arr) {
            Elem p = canonical_split(R, elem_from_json(R, e)).canon;
            if (!is_prime_elem(R, p)) {
                fail("MalformedInput", "support point is not prime");
            }
            ps.insert(p);
        }
        return ThickSupport::max_set(std::move(ps));
    }
    if (j.is_object() && j.contains("components")) {
        const json& arr = j.at("components");
        if (!arr.is_array()) fail("MalformedInput", "components must be an array");
        std::set<int> cs;
        for (const auto& e : arr) cs.insert((int)get_long(e, "component"));
        return ThickSupport::component_set(std::move(cs));
    }
    fail("MalformedInput", "unrecognized support");
}

json subgroup_to_json(const GroundRing& R, const SubgroupSpec& H)
{
    json j;
    j["support"] = support_to_json(R, H.support);
    json carrier = json::array();
    if (H.support.kind == ThickSupport::Kind::ComponentSet) {
        for (int i : H.comp_carrier) carrier.push_back(i);
    } else {
        GroundRing B = R.is_pid() ? R : R.base_ring();
        for (const auto& p : H.carrier) carrier.push_back(elem_to_json(B, p));
    }
    j["carrier"] = carrier;
    json basis = json::array();
    for (int c = 0; c < H.lattice.rank(); c++) {
        json v = json::array();
        for (int r = 0; r < H.lattice.ambient; r++) {
            v.push_back(mpz_to_json(H.lattice.basis.at(r, c).z));
        }
        basis.push_back(v);
    }
    j["basis"] = basis;
    j["outside"] = H.outside == SubgroupSpec::Outside::Zero ? "zero" : "free";
    return j;
}

SubgroupSpec subgroup_from_json(const GroundRing& R, const json& j)
{
    SubgroupSpec H;
    H.support = support_from_json(R, field(j, "support"));
    const json& carrier = field(j, "carrier");
    if (!carrier.is_array()) fail("MalformedInput", "carrier must be an array");
    long dim;
    if (H.support.kind == ThickSupport::Kind::ComponentSet) {
        for (const auto& c : carrier) {
            H.comp_carrier.push_back((int)get_long(c, "carrier entry"));
        }
        dim = (long)H.comp_carrier.size();
    } else if (H.support.kind == ThickSupport::Kind::MaxSet) {
        for (const auto& c : carrier) {
            H.carrier.push_back(canonical_split(R, elem_from_json(R, c)).canon);
        }
        dim = (long)H.carrier.size();
    } else {
        if (!carrier.empty()) {
            fail("MalformedInput", "Full-window subgroup takes no carrier");
        }
        dim = 1;
    }
    const json& basis = field(j, "basis");
    if (!basis.is_array()) fail("MalformedInput", "basis must be an array");
    std::vector<std::vector<mpz_class>> vecs;
    for (const auto& g : basis) {
        if (!g.is_array() || (long)g.size() != dim) {
            fail("MalformedInput", "basis vector has wrong length");
        }
        std::vector<mpz_class> v;
        for (const auto& c : g) v.push_back(mpz_from_json(c));
        vecs.push_back(std::move(v));
    }
    H.lattice = lattice_from_generators((int)dim, vecs);
    if (j.contains("outside")) {
        std::string o = get_string(j.at("outside"), "outside");
        if (o == "zero") H.outside = SubgroupSpec::Outside::Zero;
        else if (o == "free") H.outside = SubgroupSpec::Outside::Free;
        else fail("MalformedInput", "outside must be 'zero' or 'free'");
    }
    return H;
}

json profile_to_json(const GroundRing& R, const HomologyProfile& H)
{
    json j = json::object();
    for (const auto& [n, cls] : H) {
        json c;
        c["free"] = cls.free_rank;
        json fs = json::array();
        for (const auto& t : cls.factors) fs.push_back(elem_to_json(R, t));
        c["factors"] = fs;
        j[std::to_string(n)] = c;
    }
    return j;
}

HomologyProfile profile_from_json(const GroundRing& R, const json& j)
{
    if (!j.is_object()) fail("MalformedInput", "profile must be an object");
    HomologyProfile H;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int n;
        try {
            n = std::stoi(it.key());
        } catch (const std::exception&) {
            fail("MalformedInput", "profile key must be a degree");
        }
        ModuleClass cls;
        cls.free_rank = get_long(field(it.value(), "free"), "free rank");
        const json& fs = field(it.value(), "factors");
        if (!fs.is_array()) fail("MalformedInput", "factors must be an array");
        for (const auto& t : fs) cls.factors.push_back(elem_from_json(R, t));
        if (!cls.trivial()) H[n] = cls;
    }
    return H;
}

namespace {

json ref_to_json(const ObjRef& r)
{
    json j;
    j["ref"] = r.id;
    j["shift"] = r.shift;
    return j;
}

ObjRef ref_from_json(const json& j)
{
    ObjRef r;
    r.id = get_string(field(j, "ref"), "ref");
    r.shift = (int)get_long(field(j, "shift"), "shift");
    return r;
}

} // namespace

json certificate_to_json(const Certificate& cert)
{
    json j;
    j["ring"] = ring_to_json(cert.ring);
    json atoms = json::array();
    for (const auto& a : cert.atoms) {
        json aj;
        aj["kind"] = a.unit ? "unit" : "moore";
        if (!a.unit) aj["p"] = elem_to_json(cert.ring, a.p);
        aj["shift"] = a.shift;
        atoms.push_back(aj);
    }
    j["atoms"] = atoms;
    json steps = json::array();
    for (const auto& st : cert.steps) {
        json cj;
        cj["src"] = ref_to_json(st.src);
        cj["dst"] = ref_to_json(st.dst);
        json comps = json::object();
        for (const auto& [n, M] : st.components) {
            comps[std::to_string(n)] = mat_to_json(cert.ring, M);
        }
        cj["components"] = comps;
        json sj;
        sj["id"] = st.id;
        sj["cone"] = cj;
        steps.push_back(sj);
    }
    j["steps"] = steps;
    j["final"] = cert.final_id;
    j["claimed"] = profile_to_json(cert.ring, cert.claimed);
    return j;
}

Certificate certificate_from_json(const json& j)
{
    Certificate cert;
    cert.ring = ring_from_json(field(j, "ring"));
    const json& atoms = field(j, "atoms");
    if (!atoms.is_array()) fail("MalformedInput", "atoms must be an array");
    for (const auto& aj : atoms) {
        AtomSpec a;
        std::string kind = get_string(field(aj, "kind"), "atom kind");
        if (kind == "unit") a.unit = true;
        else if (kind == "moore") {
            a.unit = false;
            a.p = elem_from_json(cert.ring, field(aj, "p"));
        } else {
            fail("MalformedInput", "unknown atom kind '" + kind + "'");
        }
        a.shift = (int)get_long(field(aj, "shift"), "shift");
        cert.atoms.push_back(std::move(a));
    }
    const json& steps = field(j, "steps");
    if (!steps.is_array()) fail("MalformedInput", "steps must be an array");
    for (const auto& sj : steps) {
        CertStep st;
        st.id = get_string(field(sj, "id"), "step id");
        const json& cj = field(sj, "cone");
        st.src = ref_from_json(field(cj, "src"));
        st.dst = ref_from_json(field(cj, "dst"));
        const json& comps = field(cj, "components");
        if (!comps.is_object()) fail("MalformedInput", "components must be an object");
        for (auto it = comps.begin(); it != comps.end(); ++it) {
            int n;
            try {
                n = std::stoi(it.key());
            } catch (const std::exception&) {
                fail("MalformedInput", "component key must be a degree");
            }
            st.components[n] = mat_from_json(cert.ring, it.value());
        }
        cert.steps.push_back(std::move(st));
    }
    cert.final_id = get_string(field(j, "final"), "final id");
    cert.claimed = profile_from_json(cert.ring, field(j, "claimed"));
    return cert;
}

// p-group complex document: {"p":3, "groups":{"0":[2,1],"1":[1]},
// "diff":{"1":[[3],[1]]}}; degree window inferred from the keys.
json fp_complex_to_json(const FpComplex& C)
{
    json j;
    j["p"] = C.p;
    json groups = json::object(), diff = json::object();
    for (const auto& [n, G] : C.groups) groups[std::to_string(n)] = G.exponents;
    for (const auto& [n, M] : C.diffs) {
        json rows = json::array();
        for (int r = 0; r < M.rows; r++) {
            json row = json::array();
            for (int c = 0; c < M.cols; c++) {
                long v = mpz_get_si(M.at(r, c).z.get_mpz_t());
                row.push_back(v);
            }
            rows.push_back(row);
        }
        diff[std::to_string(n)] = rows;
    }
    j["groups"] = groups;
    j["diff"] = diff;
    return j;
}

FpComplex fp_complex_from_json(const json& j)
{
    auto degree_key = [](const std::string& k) {
        try {
            return std::stoi(k);
        } catch (const std::exception&) {
            fail("MalformedInput", "key '" + k + "' must be a degree");
        }
    };
    FpComplex C;
    C.p = get_long(field(j, "p"), "p");
    const json& groups = field(j, "groups");
    const json& diff = field(j, "diff");
    if (!groups.is_object() || !diff.is_object()) {
        fail("MalformedInput", "groups and diff must be objects");
    }
    for (auto it = groups.begin(); it != groups.end(); ++it) {
        int n = degree_key(it.key());
        FpAbGroup G{C.p, {}};
        if (!it.value().is_array()) fail("MalformedInput", "exponents must be an array");
        for (const auto& e : it.value()) G.exponents.push_back(get_long(e, "exponent"));
        if (!G.exponents.empty()) C.groups[n] = std::move(G);
    }
    if (!C.groups.empty()) {
        C.lo = C.groups.begin()->first;
        C.hi = C.groups.rbegin()->first;
    }
    for (auto it = diff.begin(); it != diff.end(); ++it) {
        int n = degree_key(it.key());
        const json& rows = it.value();
        if (!rows.is_array()) fail("MalformedInput", "map must be an array of rows");
        FpAbGroup src = C.group(n), dst = C.group(n - 1);
        Mat M = mat_zero(GroundRing::integers(), (int)dst.gens(), (int)src.gens());
        if ((long)rows.size() != dst.gens()) {
            fail("MalformedInput", "map row count mismatch");
        }
        for (long r = 0; r < (long)rows.size(); r++) {
            const json& row = rows[r];
            if (!row.is_array() || (long)row.size() != src.gens()) {
                fail("MalformedInput", "map column count mismatch");
            }
            for (long c = 0; c < (long)row.size(); c++) {
                M.at((int)r, (int)c).z = mpz_from_json(row[c]);
            }
        }
        C.diffs[n] = M;
    }
    try {
        validate_fp(C);
    } catch (const DomainError& e) {
        fail("MalformedInput", std::string("invalid torsion complex: ") + e.what());
    }
    return C;
}

json k0_element_to_json(const GroundRing& R, const K0Element& cls)
{
    json j;
    j["support"] = support_to_json(R, cls.ambient);
    json v = json::array();
    for (const auto& c : cls.vector()) v.push_back(mpz_to_json(c));
    j["coordinates"] = v;
    j["basis"] = k0_group(R, cls.ambient).basis;
    return j;
}

json decision_to_json(const GenDecision& dec)
{
    json j;
    j["verdict"] = dec.verdict;
    j["support_ok"] = dec.support_ok;
    json rows = json::array();
    for (const auto& r : dec.rows) {
        json rj;
        rj["point"] = r.point;
        rj["required"] = mpz_to_json(r.required);
        rj["candidate"] = mpz_to_json(r.candidate);
        rj["divides"] = r.divides;
        rows.push_back(rj);
    }
    j["table"] = rows;
    return j;
}

json verify_report_to_json(const VerifyReport& rep)
{
    json j;
    j["ok"] = rep.ok;
    if (!rep.ok) {
        j["failing_step"] = rep.failing_step;
        j["reason"] = rep.reason;
    }
    return j;
}

std::string json_dump_stable(const json& j)
{
    return j.dump(2) + "\n";
}

} // namespace cofib

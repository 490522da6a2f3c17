#include "cofib/ring.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace cofib {

// --- Elem ordering -----------------------------------------------------------

bool Elem::operator==(const Elem& o) const
{
    return z == o.z && poly == o.poly && comp == o.comp;
}

bool Elem::operator<(const Elem& o) const
{
    if (z != o.z) return z < o.z;
    if (poly != o.poly) {
        if (poly.size() != o.poly.size()) return poly.size() < o.poly.size();
        return std::lexicographical_compare(poly.begin(), poly.end(), o.poly.begin(),
                                            o.poly.end());
    }
    if (comp.size() != o.comp.size()) return comp.size() < o.comp.size();
    for (size_t i = 0; i < comp.size(); i++) {
        if (!(comp[i] == o.comp[i])) return comp[i] < o.comp[i];
    }
    return false;
}

bool QuotSpec::operator==(const QuotSpec& o) const
{
    return poly_base == o.poly_base && p == o.p && q == o.q && e == o.e;
}

// --- polynomial arithmetic over F_p ------------------------------------------

namespace {

long mod_p(long v, long p)
{
    long r = v % p;
    return r < 0 ? r + p : r;
}

void poly_normalize(Poly& f, long p)
{
    for (auto& c : f) c = mod_p(c, p);
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b, long p)
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); i++) r[i] += a[i];
    for (size_t i = 0; i < b.size(); i++) r[i] += b[i];
    poly_normalize(r, p);
    return r;
}

Poly poly_neg(const Poly& a, long p)
{
    Poly r = a;
    for (auto& c : r) c = mod_p(-c, p);
    poly_normalize(r, p);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b, long p)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < b.size(); j++) {
            r[i + j] = mod_p(r[i + j] + a[i] * b[j], p);
        }
    }
    poly_normalize(r, p);
    return r;
}

long inv_mod_p(long a, long p)
{
    long t = 0, newt = 1, r = p, newr = mod_p(a, p);
    while (newr != 0) {
        long q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) fail("RingMismatch", "non-invertible residue mod p");
    return mod_p(t, p);
}

// a = q*b + r with deg r < deg b
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b, long p)
{
    if (b.empty()) fail("DivisionByZero", "polynomial division by zero");
    Poly rem = a, quot;
    long db = poly_deg(b);
    long lb_inv = inv_mod_p(b.back(), p);
    while (poly_deg(rem) >= db) {
        long shift = poly_deg(rem) - db;
        long c = mod_p(rem.back() * lb_inv, p);
        if ((long)quot.size() < shift + 1) quot.resize(shift + 1, 0);
        quot[shift] = mod_p(quot[shift] + c, p);
        for (long i = 0; i <= db; i++) {
            rem[i + shift] = mod_p(rem[i + shift] - c * b[i], p);
        }
        poly_normalize(rem, p);
    }
    poly_normalize(quot, p);
    return {quot, rem};
}

Poly poly_monic(const Poly& f, long p)
{
    if (f.empty()) return f;
    long inv = inv_mod_p(f.back(), p);
    Poly r = f;
    for (auto& c : r) c = mod_p(c * inv, p);
    return r;
}

Poly poly_gcd(Poly a, Poly b, long p)
{
    while (!b.empty()) {
        a = poly_divmod(a, b, p).second;
        std::swap(a, b);
    }
    return poly_monic(a, p);
}

Poly poly_powmod(const Poly& base, const mpz_class& exp, const Poly& mod, long p)
{
    Poly result{1};
    Poly b = poly_divmod(base, mod, p).second;
    mpz_class n = exp;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) {
            result = poly_divmod(poly_mul(result, b, p), mod, p).second;
        }
        b = poly_divmod(poly_mul(b, b, p), mod, p).second;
        n >>= 1;
    }
    return result;
}

} // namespace

// --- GroundRing --------------------------------------------------------------

GroundRing GroundRing::integers()
{
    return {};
}

GroundRing GroundRing::fpx(long p)
{
    if (p < 2) fail("RingMismatch", "F_p[x] needs a prime p");
    GroundRing R;
    R.kind = Kind::Fpx;
    R.p = p;
    if (!is_prime_elem(integers(), ring_from_int(integers(), p))) {
        fail("RingMismatch", "F_p[x] needs a prime p");
    }
    return R;
}

GroundRing GroundRing::quotient(const GroundRing& base, const Elem& q, long e)
{
    if (!base.is_pid()) fail("RingMismatch", "quotient base must be Z or F_p[x]");
    if (e < 1) fail("RingMismatch", "quotient exponent must be >= 1");
    auto split = canonical_split(base, q);
    if (!is_prime_elem(base, split.canon)) {
        fail("RingMismatch", "quotient modulus must be a prime element");
    }
    GroundRing R;
    R.kind = Kind::Quot;
    R.quot.poly_base = (base.kind == Kind::Fpx);
    R.quot.p = base.p;
    R.quot.q = split.canon;
    R.quot.e = e;
    return R;
}

GroundRing GroundRing::product(const std::vector<GroundRing>& locals)
{
    if (locals.empty()) fail("RingMismatch", "product needs at least one component");
    GroundRing R;
    R.kind = Kind::Product;
    for (const auto& L : locals) {
        if (L.kind != Kind::Quot) {
            fail("RingMismatch", "product components must be local quotients");
        }
        R.comps.push_back(L.quot);
    }
    return R;
}

bool GroundRing::poly_flavor() const
{
    switch (kind) {
        case Kind::Z: return false;
        case Kind::Fpx: return true;
        case Kind::Quot: return quot.poly_base;
        case Kind::Product: fail("RingMismatch", "no single flavor for products");
    }
    return false;
}

GroundRing GroundRing::base_ring() const
{
    if (kind != Kind::Quot) fail("RingMismatch", "base_ring needs a quotient ring");
    return quot.poly_base ? fpx(quot.p) : integers();
}

GroundRing GroundRing::component(int i) const
{
    if (kind != Kind::Product) fail("RingMismatch", "component needs a product ring");
    if (i < 0 || i >= (int)comps.size()) fail("ComponentOutOfRange", "component index");
    GroundRing R;
    R.kind = Kind::Quot;
    R.quot = comps[i];
    return R;
}

std::string GroundRing::describe() const
{
    std::ostringstream os;
    switch (kind) {
        case Kind::Z: os << "Z"; break;
        case Kind::Fpx: os << "F_" << p << "[x]"; break;
        case Kind::Quot: {
            os << (quot.poly_base ? "F_" + std::to_string(quot.p) + "[x]" : "Z");
            os << "/(" << (quot.poly_base ? poly_str(quot.q.poly) : quot.q.z.get_str());
            if (quot.e > 1) os << ")^" << quot.e;
            else os << ")";
            break;
        }
        case Kind::Product: {
            for (size_t i = 0; i < comps.size(); i++) {
                if (i) os << " x ";
                GroundRing c;
                c.kind = Kind::Quot;
                c.quot = comps[i];
                os << c.describe();
            }
            break;
        }
    }
    return os.str();
}

bool GroundRing::operator==(const GroundRing& o) const
{
    return kind == o.kind && p == o.p && quot == o.quot && comps == o.comps;
}

// --- PrimeId -----------------------------------------------------------------

bool PrimeId::operator==(const PrimeId& o) const
{
    return kind == o.kind && gen == o.gen && comp == o.comp;
}

bool PrimeId::operator<(const PrimeId& o) const
{
    if (kind != o.kind) return (int)kind < (int)o.kind;
    if (!(gen == o.gen)) return gen < o.gen;
    return comp < o.comp;
}

std::string PrimeId::str() const
{
    switch (kind) {
        case Kind::Generic: return "(0)";
        case Kind::Max:
            return gen.poly.empty() ? gen.z.get_str() : poly_str(gen.poly);
        case Kind::Component: return "c" + std::to_string(comp);
    }
    return "?";
}

// --- constructors and reduction ----------------------------------------------

Elem ring_zero(const GroundRing& R)
{
    return reduce(R, Elem{});
}

Elem ring_one(const GroundRing& R)
{
    return ring_from_int(R, 1);
}

Elem ring_from_int(const GroundRing& R, long v)
{
    return ring_from_mpz(R, mpz_class(v));
}

Elem ring_from_mpz(const GroundRing& R, const mpz_class& v)
{
    Elem x;
    switch (R.kind) {
        case GroundRing::Kind::Z:
            x.z = v;
            break;
        case GroundRing::Kind::Fpx: {
            mpz_class r = v % R.p;
            if (r < 0) r += R.p;
            long c = r.get_si();
            if (c != 0) x.poly = {c};
            break;
        }
        case GroundRing::Kind::Quot: {
            if (R.quot.poly_base) {
                mpz_class r = v % R.quot.p;
                if (r < 0) r += R.quot.p;
                long c = r.get_si();
                if (c != 0) x.poly = {c};
            } else {
                x.z = v;
            }
            return reduce(R, x);
        }
        case GroundRing::Kind::Product: {
            for (size_t i = 0; i < R.comps.size(); i++) {
                x.comp.push_back(ring_from_mpz(R.component((int)i), v));
            }
            break;
        }
    }
    return x;
}

namespace {

// modulus q^e of a quotient ring, as a base-ring element
Elem quot_modulus(const GroundRing& R)
{
    GroundRing base = R.base_ring();
    Elem m = ring_one(base);
    for (long i = 0; i < R.quot.e; i++) m = mul(base, m, R.quot.q);
    return m;
}

} // namespace

Elem reduce(const GroundRing& R, const Elem& x)
{
    Elem r = x;
    switch (R.kind) {
        case GroundRing::Kind::Z:
            r.poly.clear();
            r.comp.clear();
            break;
        case GroundRing::Kind::Fpx:
            r.z = 0;
            r.comp.clear();
            poly_normalize(r.poly, R.p);
            break;
        case GroundRing::Kind::Quot: {
            GroundRing base = R.base_ring();
            Elem m = quot_modulus(R);
            if (R.quot.poly_base) {
                r.z = 0;
                r.comp.clear();
                poly_normalize(r.poly, R.quot.p);
                r.poly = poly_divmod(r.poly, m.poly, R.quot.p).second;
            } else {
                r.poly.clear();
                r.comp.clear();
                mpz_class mm = m.z;
                r.z = r.z % mm;
                if (r.z < 0) r.z += mm;
            }
            break;
        }
        case GroundRing::Kind::Product: {
            r.z = 0;
            r.poly.clear();
            r.comp.resize(R.comps.size());
            for (size_t i = 0; i < R.comps.size(); i++) {
                r.comp[i] = reduce(R.component((int)i), r.comp[i]);
            }
            break;
        }
    }
    return r;
}

// --- arithmetic --------------------------------------------------------------

Elem add(const GroundRing& R, const Elem& a, const Elem& b)
{
    Elem r;
    switch (R.kind) {
        case GroundRing::Kind::Z:
            r.z = a.z + b.z;
            return r;
        case GroundRing::Kind::Fpx:
            r.poly = poly_add(a.poly, b.poly, R.p);
            return r;
        case GroundRing::Kind::Quot:
            if (R.quot.poly_base) r.poly = poly_add(a.poly, b.poly, R.quot.p);
            else r.z = a.z + b.z;
            return reduce(R, r);
        case GroundRing::Kind::Product: {
            r.comp.resize(R.comps.size());
            for (size_t i = 0; i < R.comps.size(); i++) {
                const Elem& ac = i < a.comp.size() ? a.comp[i] : Elem{};
                const Elem& bc = i < b.comp.size() ? b.comp[i] : Elem{};
                r.comp[i] = add(R.component((int)i), ac, bc);
            }
            return r;
        }
    }
    return r;
}

Elem neg(const GroundRing& R, const Elem& a)
{
    Elem r;
    switch (R.kind) {
        case GroundRing::Kind::Z:
            r.z = -a.z;
            return r;
        case GroundRing::Kind::Fpx:
            r.poly = poly_neg(a.poly, R.p);
            return r;
        case GroundRing::Kind::Quot:
            if (R.quot.poly_base) r.poly = poly_neg(a.poly, R.quot.p);
            else r.z = -a.z;
            return reduce(R, r);
        case GroundRing::Kind::Product: {
            r.comp.resize(R.comps.size());
            for (size_t i = 0; i < R.comps.size(); i++) {
                const Elem& ac = i < a.comp.size() ? a.comp[i] : Elem{};
                r.comp[i] = neg(R.component((int)i), ac);
            }
            return r;
        }
    }
    return r;
}

Elem sub(const GroundRing& R, const Elem& a, const Elem& b)
{
    return add(R, a, neg(R, b));
}

Elem mul(const GroundRing& R, const Elem& a, const Elem& b)
{
    Elem r;
    switch (R.kind) {
        case GroundRing::Kind::Z:
            r.z = a.z * b.z;
            return r;
        case GroundRing::Kind::Fpx:
            r.poly = poly_mul(a.poly, b.poly, R.p);
            return r;
        case GroundRing::Kind::Quot:
            if (R.quot.poly_base) r.poly = poly_mul(a.poly, b.poly, R.quot.p);
            else r.z = a.z * b.z;
            return reduce(R, r);
        case GroundRing::Kind::Product: {
            r.comp.resize(R.comps.size());
            for (size_t i = 0; i < R.comps.size(); i++) {
                const Elem& ac = i < a.comp.size() ? a.comp[i] : Elem{};
                const Elem& bc = i < b.comp.size() ? b.comp[i] : Elem{};
                r.comp[i] = mul(R.component((int)i), ac, bc);
            }
            return r;
        }
    }
    return r;
}

Elem pow_elem(const GroundRing& R, const Elem& a, long n)
{
    Elem r = ring_one(R), b = a;
    long m = n;
    while (m > 0) {
        if (m & 1) r = mul(R, r, b);
        b = mul(R, b, b);
        m >>= 1;
    }
    return r;
}

bool is_zero(const GroundRing& R, const Elem& a)
{
    switch (R.kind) {
        case GroundRing::Kind::Z: return a.z == 0;
        case GroundRing::Kind::Fpx: return a.poly.empty();
        case GroundRing::Kind::Quot: {
            Elem r = reduce(R, a);
            return R.quot.poly_base ? r.poly.empty() : r.z == 0;
        }
        case GroundRing::Kind::Product: {
            for (size_t i = 0; i < R.comps.size(); i++) {
                if (i < a.comp.size() && !is_zero(R.component((int)i), a.comp[i])) {
                    return false;
                }
            }
            return true;
        }
    }
    return true;
}

bool is_unit(const GroundRing& R, const Elem& a)
{
    switch (R.kind) {
        case GroundRing::Kind::Z: return a.z == 1 || a.z == -1;
        case GroundRing::Kind::Fpx: return a.poly.size() == 1;
        case GroundRing::Kind::Quot: return quot_valuation(R, a) == 0;
        case GroundRing::Kind::Product: {
            for (size_t i = 0; i < R.comps.size(); i++) {
                const Elem& ac = i < a.comp.size() ? a.comp[i] : Elem{};
                if (!is_unit(R.component((int)i), ac)) return false;
            }
            return true;
        }
    }
    return false;
}

Elem inverse(const GroundRing& R, const Elem& a)
{
    switch (R.kind) {
        case GroundRing::Kind::Z: {
            if (a.z != 1 && a.z != -1) fail("NotAUnit", "integer inverse");
            return a;
        }
        case GroundRing::Kind::Fpx: {
            if (a.poly.size() != 1) fail("NotAUnit", "polynomial inverse");
            Elem r;
            r.poly = {inv_mod_p(a.poly[0], R.p)};
            return r;
        }
        case GroundRing::Kind::Quot: {
            Elem x = reduce(R, a);
            GroundRing base = R.base_ring();
            Elem m = quot_modulus(R);
            if (R.quot.poly_base) {
                // extended gcd in F_p[x] against q^e
                auto eg = exgcd(base, x, m);
                if (!is_unit(base, eg.g)) fail("NotAUnit", "quotient inverse");
                Elem s = mul(base, eg.s, inverse(base, eg.g));
                return reduce(R, s);
            }
            Elem r;
            if (mpz_invert(r.z.get_mpz_t(), x.z.get_mpz_t(), m.z.get_mpz_t()) == 0) {
                fail("NotAUnit", "quotient inverse");
            }
            return r;
        }
        case GroundRing::Kind::Product: {
            Elem r;
            r.comp.resize(R.comps.size());
            for (size_t i = 0; i < R.comps.size(); i++) {
                const Elem& ac = i < a.comp.size() ? a.comp[i] : Elem{};
                r.comp[i] = inverse(R.component((int)i), ac);
            }
            return r;
        }
    }
    fail("NotAUnit", "inverse");
}

DivMod divmod(const GroundRing& R, const Elem& a, const Elem& b)
{
    if (!R.is_pid()) fail("RingMismatch", "euclidean division needs a PID");
    if (is_zero(R, b)) fail("DivisionByZero", "division by zero");
    DivMod d;
    if (R.kind == GroundRing::Kind::Z) {
        // symmetric remainder keeps SNF intermediates small
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.z.get_mpz_t(), b.z.get_mpz_t());
        mpz_class ab = abs(b.z);
        if (2 * r > ab) {
            r -= ab;
            q += (b.z > 0) ? 1 : -1;
        }
        d.quot.z = q;
        d.rem.z = r;
    } else {
        auto [q, r] = poly_divmod(a.poly, b.poly, R.p);
        d.quot.poly = q;
        d.rem.poly = r;
    }
    return d;
}

bool divides(const GroundRing& R, const Elem& a, const Elem& b)
{
    if (is_zero(R, a)) return is_zero(R, b);
    if (R.is_pid()) return is_zero(R, divmod(R, b, a).rem);
    if (R.kind == GroundRing::Kind::Quot) {
        return quot_valuation(R, a) <= quot_valuation(R, b);
    }
    // Product: componentwise
    for (size_t i = 0; i < R.comps.size(); i++) {
        const Elem& ac = i < a.comp.size() ? a.comp[i] : Elem{};
        const Elem& bc = i < b.comp.size() ? b.comp[i] : Elem{};
        if (!divides(R.component((int)i), ac, bc)) return false;
    }
    return true;
}

Elem exact_div(const GroundRing& R, const Elem& a, const Elem& b)
{
    if (R.is_pid()) {
        auto d = divmod(R, a, b);
        if (!is_zero(R, d.rem)) fail("InexactDivision", "exact_div remainder");
        return d.quot;
    }
    if (R.kind == GroundRing::Kind::Quot) {
        long va = quot_valuation(R, a), vb = quot_valuation(R, b);
        if (va < vb) fail("InexactDivision", "valuation drop in quotient division");
        if (va >= R.quot.e) return ring_zero(R);
        Elem u = quot_unit_part(R, a);
        Elem vinv = inverse(R, quot_unit_part(R, b));
        return mul(R, mul(R, u, vinv), quot_q_power(R, va - vb));
    }
    fail("RingMismatch", "exact_div over product rings");
}

mpz_class euclid_size(const GroundRing& R, const Elem& a)
{
    if (!R.is_pid()) fail("RingMismatch", "euclidean size needs a PID");
    if (R.kind == GroundRing::Kind::Z) return abs(a.z);
    return mpz_class(poly_deg(a.poly) + 1); // 0 for the zero polynomial
}

ExtGcd exgcd(const GroundRing& R, const Elem& a, const Elem& b)
{
    if (!R.is_pid()) fail("RingMismatch", "exgcd needs a PID");
    Elem r0 = a, r1 = b;
    Elem s0 = ring_one(R), s1 = ring_zero(R);
    Elem t0 = ring_zero(R), t1 = ring_one(R);
    while (!is_zero(R, r1)) {
        auto d = divmod(R, r0, r1);
        Elem r2 = d.rem;
        Elem s2 = sub(R, s0, mul(R, d.quot, s1));
        Elem t2 = sub(R, t0, mul(R, d.quot, t1));
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    auto cs = canonical_split(R, r0);
    ExtGcd out;
    out.g = cs.canon;
    if (is_zero(R, r0)) {
        out.s = s0;
        out.t = t0;
    } else {
        Elem uinv = inverse(R, cs.unit);
        out.s = mul(R, s0, uinv);
        out.t = mul(R, t0, uinv);
    }
    return out;
}

Elem gcd_elem(const GroundRing& R, const Elem& a, const Elem& b)
{
    return exgcd(R, a, b).g;
}

CanonSplit canonical_split(const GroundRing& R, const Elem& x)
{
    CanonSplit cs;
    switch (R.kind) {
        case GroundRing::Kind::Z:
            if (x.z < 0) {
                cs.canon.z = -x.z;
                cs.unit.z = -1;
            } else {
                cs.canon.z = x.z;
                cs.unit.z = 1;
            }
            return cs;
        case GroundRing::Kind::Fpx: {
            if (x.poly.empty()) {
                cs.canon = x;
                cs.unit.poly = {1};
                return cs;
            }
            cs.unit.poly = {x.poly.back()};
            cs.canon.poly = poly_monic(x.poly, R.p);
            return cs;
        }
        case GroundRing::Kind::Quot: {
            long v = quot_valuation(R, x);
            if (v >= R.quot.e) {
                cs.canon = ring_zero(R);
                cs.unit = ring_one(R);
                return cs;
            }
            cs.canon = quot_q_power(R, v);
            cs.unit = quot_unit_part(R, x);
            return cs;
        }
        case GroundRing::Kind::Product:
            fail("RingMismatch", "canonical associates over product rings");
    }
    return cs;
}

// --- local quotient helpers ---------------------------------------------------

long quot_valuation(const GroundRing& R, const Elem& x)
{
    if (R.kind != GroundRing::Kind::Quot) fail("RingMismatch", "valuation");
    Elem r = reduce(R, x);
    GroundRing base = R.base_ring();
    if (is_zero(R, r)) return R.quot.e;
    Elem lift = r; // canonical representative lives in the base ring
    long v = 0;
    while (true) {
        auto d = divmod(base, lift, R.quot.q);
        if (!is_zero(base, d.rem)) break;
        lift = d.quot;
        v++;
    }
    return v;
}

Elem quot_unit_part(const GroundRing& R, const Elem& x)
{
    if (R.kind != GroundRing::Kind::Quot) fail("RingMismatch", "unit part");
    Elem r = reduce(R, x);
    if (is_zero(R, r)) fail("DivisionByZero", "unit part of zero");
    GroundRing base = R.base_ring();
    Elem lift = r;
    while (true) {
        auto d = divmod(base, lift, R.quot.q);
        if (!is_zero(base, d.rem)) break;
        lift = d.quot;
    }
    return reduce(R, lift);
}

Elem quot_q_power(const GroundRing& R, long v)
{
    if (R.kind != GroundRing::Kind::Quot) fail("RingMismatch", "q power");
    if (v >= R.quot.e) return ring_zero(R);
    GroundRing base = R.base_ring();
    Elem m = ring_one(base);
    for (long i = 0; i < v; i++) m = mul(base, m, R.quot.q);
    return reduce(R, m);
}

// --- product helpers ----------------------------------------------------------

Elem product_pack(const GroundRing& R, std::vector<Elem> parts)
{
    if (R.kind != GroundRing::Kind::Product) fail("RingMismatch", "product_pack");
    if (parts.size() != R.comps.size()) fail("RingMismatch", "component count");
    Elem r;
    r.comp = std::move(parts);
    return reduce(R, r);
}

Elem product_part(const GroundRing& R, const Elem& x, int i)
{
    if (R.kind != GroundRing::Kind::Product) fail("RingMismatch", "product_part");
    if (i < 0 || i >= (int)R.comps.size()) fail("ComponentOutOfRange", "component index");
    if ((size_t)i < x.comp.size()) return reduce(R.component(i), x.comp[i]);
    return ring_zero(R.component(i));
}

// --- primality and factorization ---------------------------------------------

namespace {

// Deterministic Miller-Rabin; the witness set below is known to be exact for
// n < 3.3 * 10^24, far beyond desk scale.
bool mr_is_prime(const mpz_class& n)
{
    if (n < 2) return false;
    static const long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (long s : small) {
        if (n == s) return true;
        if (n % s == 0) return false;
    }
    static const mpz_class cap("3317044064679887385961981");
    if (n >= cap) fail("DeskScale", "integer primality beyond deterministic cap");
    mpz_class d = n - 1;
    long r = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        r++;
    }
    for (long a : small) {
        mpz_class x;
        mpz_class base(a);
        mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (long i = 0; i + 1 < r; i++) {
            x = (x * x) % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

constexpr long kIrredDegCap = 20; // desk-scale cap for F_p[x] irreducibility

bool poly_irreducible(const Poly& f0, long p)
{
    Poly f = poly_monic(f0, p);
    long n = poly_deg(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    if (n > kIrredDegCap) fail("DeskScale", "irreducibility degree cap exceeded");
    // distinct-degree criterion: x^{p^n} = x mod f, and for each prime t | n
    // gcd(x^{p^{n/t}} - x, f) = 1
    Poly x{0, 1};
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), (unsigned long)p, (unsigned long)n);
    Poly xn = poly_powmod(x, pn, f, p);
    if (xn != poly_divmod(x, f, p).second) return false;
    // prime divisors of n (n <= 20)
    long m = n;
    for (long t = 2; t <= m; t++) {
        if (m % t != 0) continue;
        while (m % t == 0) m /= t;
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p, (unsigned long)(n / t));
        Poly xt = poly_powmod(x, pk, f, p);
        Poly diff = poly_add(xt, poly_neg(poly_divmod(x, f, p).second, p), p);
        Poly g = poly_gcd(f, diff, p);
        if (poly_deg(g) != 0) return false;
    }
    return true;
}

} // namespace

bool is_prime_elem(const GroundRing& R, const Elem& x)
{
    if (!R.is_pid()) fail("RingMismatch", "is_prime_elem needs Z or F_p[x]");
    if (R.kind == GroundRing::Kind::Z) return mr_is_prime(abs(x.z));
    return !x.poly.empty() && poly_irreducible(x.poly, R.p);
}

namespace {

std::vector<std::pair<Elem, long>> factor_int(const mpz_class& n0)
{
    std::vector<std::pair<Elem, long>> out;
    mpz_class n = abs(n0);
    if (n == 0) fail("DivisionByZero", "factoring zero");
    auto push = [&](const mpz_class& q, long e) {
        Elem g;
        g.z = q;
        out.push_back({g, e});
    };
    for (mpz_class d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
        if (d > 2000000) {
            if (mr_is_prime(n)) break;
            fail("DeskScale", "integer factorization beyond trial-division cap");
        }
        if (n % d == 0) {
            long e = 0;
            while (n % d == 0) {
                n /= d;
                e++;
            }
            push(d, e);
        }
    }
    if (n > 1) push(n, 1);
    return out;
}

// Monic polynomials of degree d over F_p, in lexicographic order.
Poly nth_monic(long p, long d, long idx)
{
    Poly f(d + 1, 0);
    f[d] = 1;
    long v = idx;
    for (long i = 0; i < d; i++) {
        f[i] = v % p;
        v /= p;
    }
    return f;
}

std::vector<std::pair<Elem, long>> factor_poly(const Poly& f0, long p)
{
    if (f0.empty()) fail("DivisionByZero", "factoring zero");
    std::vector<std::pair<Elem, long>> out;
    Poly f = poly_monic(f0, p);
    for (long d = 1; 2 * d <= poly_deg(f); d++) {
        double count = 1;
        for (long i = 0; i < d; i++) count *= p;
        if (count > 2e6) fail("DeskScale", "polynomial factorization cap exceeded");
        for (long idx = 0; idx < (long)count; idx++) {
            Poly g = nth_monic(p, d, idx);
            long e = 0;
            while (poly_deg(f) >= d && poly_divmod(f, g, p).second.empty()) {
                f = poly_divmod(f, g, p).first;
                e++;
            }
            if (e > 0) {
                Elem pe;
                pe.poly = g;
                out.push_back({pe, e});
            }
            if (poly_deg(f) == 0) break;
        }
        if (poly_deg(f) == 0) break;
    }
    if (poly_deg(f) >= 1) {
        Elem pe;
        pe.poly = f;
        out.push_back({pe, 1});
    }
    return out;
}

} // namespace

std::vector<std::pair<Elem, long>> factor(const GroundRing& R, const Elem& x)
{
    if (!R.is_pid()) fail("RingMismatch", "factor needs Z or F_p[x]");
    if (R.kind == GroundRing::Kind::Z) return factor_int(x.z);
    return factor_poly(x.poly, R.p);
}

// --- printing -----------------------------------------------------------------

std::string poly_str(const Poly& f)
{
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = poly_deg(f); i >= 0; i--) {
        if (f[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || f[i] != 1) os << f[i];
        if (i >= 1) {
            if (f[i] != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::string elem_str(const GroundRing& R, const Elem& x)
{
    switch (R.kind) {
        case GroundRing::Kind::Z: return x.z.get_str();
        case GroundRing::Kind::Fpx: return poly_str(x.poly);
        case GroundRing::Kind::Quot:
            return R.quot.poly_base ? poly_str(x.poly) : x.z.get_str();
        case GroundRing::Kind::Product: {
            std::string s = "(";
            for (size_t i = 0; i < R.comps.size(); i++) {
                if (i) s += ", ";
                Elem part = (i < x.comp.size()) ? x.comp[i] : Elem{};
                s += elem_str(R.component((int)i), part);
            }
            return s + ")";
        }
    }
    return "?";
}

} // namespace cofib

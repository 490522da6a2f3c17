// cofib: compute, decide, plan and verify over perfect complexes.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cofib/json_io.hpp"
#include "cofib/random_gen.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace cofib;

namespace {

json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail("MalformedInput", "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail("MalformedInput", path + ": " + e.what());
    }
}

json parse_json_text(const std::string& text, const std::string& where)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail("MalformedInput", where + ": " + e.what());
    }
}

GroundRing parse_ring(const std::string& s)
{
    if (s == "Z") return GroundRing::integers();
    if (s.rfind("Fpx:", 0) == 0) {
        try {
            return GroundRing::fpx(std::stol(s.substr(4)));
        } catch (const std::exception&) {
            fail("MalformedInput", "bad ring spec '" + s + "'");
        }
    }
    return ring_from_json(load_json(s));
}

// "7" over Z; ascending coefficient digits over F_p[x], e.g. "111" = 1+x+x^2
Elem parse_elem_literal(const GroundRing& R, const std::string& s)
{
    if (s.empty()) fail("MalformedInput", "empty element literal");
    Elem x;
    if (R.poly_flavor()) {
        for (char c : s) {
            if (c < '0' || c > '9') {
                fail("MalformedInput", "bad coefficient digit in '" + s + "'");
            }
            x.poly.push_back(c - '0');
        }
    } else {
        try {
            x.z = mpz_class(s, 10);
        } catch (const std::invalid_argument&) {
            fail("MalformedInput", "bad integer literal '" + s + "'");
        }
    }
    return reduce(R, x);
}

// inline atoms: unit[@shift], moore:<elem>[@shift]; anything else is a file
PerfectComplex parse_complex_arg(const GroundRing* R, const std::string& s)
{
    std::string body = s;
    int sh = 0;
    auto at = s.find('@');
    bool atomish = s == "unit" || s.rfind("unit@", 0) == 0 || s.rfind("moore:", 0) == 0;
    if (atomish) {
        if (at != std::string::npos) {
            try {
                sh = std::stoi(s.substr(at + 1));
            } catch (const std::exception&) {
                fail("MalformedInput", "bad shift in '" + s + "'");
            }
            body = s.substr(0, at);
        }
        if (!R) fail("MalformedInput", "inline atoms need --ring");
        if (body == "unit") return shift(unit_complex(*R), sh);
        Elem x = parse_elem_literal(*R, body.substr(6));
        return shift(moore(*R, x), sh);
    }
    PerfectComplex X = complex_from_json(load_json(s));
    if (R && X.ring != *R) fail("RingMismatch", "'" + s + "' is over a different ring");
    return X;
}

ThickSupport parse_support(const GroundRing& R, const std::string& s)
{
    if (s == "Full") return ThickSupport::full();
    std::set<Elem> primes;
    std::set<int> comps;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) fail("MalformedInput", "empty support entry");
        if (R.is_pid()) {
            Elem p = canonical_split(R, parse_elem_literal(R, tok)).canon;
            if (!is_prime_elem(R, p)) {
                fail("MalformedInput", "'" + tok + "' is not prime");
            }
            primes.insert(p);
        } else {
            try {
                comps.insert(std::stoi(tok));
            } catch (const std::exception&) {
                fail("MalformedInput", "bad component index '" + tok + "'");
            }
        }
    }
    if (R.is_pid()) return ThickSupport::max_set(std::move(primes));
    return ThickSupport::component_set(std::move(comps));
}

struct Options {
    std::string out = "text";
    bool is_json() const { return out == "json"; }
};

void emit(const Options& opt, const json& doc, const std::string& text)
{
    if (opt.is_json()) std::cout << json_dump_stable(doc);
    else std::cout << text;
}

// ---------------------------------------------------------------------------

int cmd_homology(const GroundRing* R, const std::string& file, const Options& opt)
{
    PerfectComplex X = parse_complex_arg(R, file);
    if (X.ring.kind == GroundRing::Kind::Product) {
        auto parts = split_product(X);
        json arr = json::array();
        std::string text;
        for (int i = 0; i < (int)parts.size(); i++) {
            HomologyProfile H = homology(parts[i]);
            arr.push_back(profile_to_json(parts[i].ring, H));
            text += "component " + std::to_string(i) + ": " +
                    profile_str(parts[i].ring, H) + "\n";
        }
        emit(opt, json{{"components", arr}}, text);
        return 0;
    }
    HomologyProfile H = homology(X);
    emit(opt, profile_to_json(X.ring, H), profile_str(X.ring, H) + "\n");
    return 0;
}

int cmd_invariants(const GroundRing* R, const std::string& file, const Options& opt)
{
    PerfectComplex X = parse_complex_arg(R, file);
    ThickSupport S = supp(X);
    json j;
    std::string text;
    json sp = json::array();
    if (S.kind == ThickSupport::Kind::Full) {
        sp.push_back("(0)");
    } else if (S.kind == ThickSupport::Kind::MaxSet) {
        for (const auto& p : S.primes) sp.push_back(elem_str(X.ring, p));
    } else {
        for (int i : S.components) sp.push_back(i);
    }
    j["supp"] = sp;
    text += "supp = " + S.str(X.ring) + "\n";
    if (X.ring.is_pid()) {
        long chi = chi_F(X);
        j["chi"] = chi;
        text += "chi = " + std::to_string(chi) + "\n";
        if (S.kind == ThickSupport::Kind::MaxSet) {
            json lam = json::object();
            for (const auto& p : S.primes) {
                long v = lambda_p(X, p);
                lam[elem_str(X.ring, p)] = v;
                text += "lambda_(" + elem_str(X.ring, p) + ") = " +
                        std::to_string(v) + "\n";
            }
            j["lambda"] = lam;
        }
    } else {
        json lam = json::object();
        int ncomp = X.ring.kind == GroundRing::Kind::Product
                        ? (int)X.ring.comps.size()
                        : 1;
        for (int i = 0; i < ncomp; i++) {
            long v = lambda_artin(X, i);
            lam[std::to_string(i)] = v;
            text += "Lambda_" + std::to_string(i) + " = " + std::to_string(v) + "\n";
        }
        j["Lambda"] = lam;
    }
    emit(opt, j, text);
    return 0;
}

int cmd_k0(const GroundRing& R, const std::string& support, const std::string& file,
           const Options& opt)
{
    ThickSupport S = parse_support(R, support);
    PerfectComplex X = parse_complex_arg(&R, file);
    K0Element cls = k0_class(X, S);
    K0Presentation P = k0_group(R, S);
    std::string text = "K0 window rank " + std::to_string(P.rank) + "\n";
    auto v = cls.vector();
    for (size_t i = 0; i < v.size(); i++) {
        text += P.basis[i] + ": " + v[i].get_str() + "\n";
    }
    emit(opt, k0_element_to_json(R, cls), text);
    return 0;
}

int cmd_member(const GroundRing& R, const std::string& subgroup_file,
               const std::string& file, const Options& opt)
{
    SubgroupSpec H = subgroup_from_json(R, load_json(subgroup_file));
    PerfectComplex X = parse_complex_arg(&R, file);
    bool yes = is_member(X, H);
    emit(opt, json{{"member", yes}}, std::string("member: ") + (yes ? "yes" : "no") + "\n");
    return 0;
}

int cmd_cangen(const GroundRing& R, const std::vector<std::string>& gen_args,
               const std::string& target, const Options& opt)
{
    std::vector<PerfectComplex> gens;
    for (const auto& g : gen_args) gens.push_back(parse_complex_arg(&R, g));
    PerfectComplex Y = parse_complex_arg(&R, target);
    GenDecision dec = can_generate(gens, Y);
    std::string text = std::string("verdict: ") + (dec.verdict ? "yes" : "no") + "\n";
    text += std::string("support: ") + (dec.support_ok ? "ok" : "not contained") + "\n";
    for (const auto& r : dec.rows) {
        text += "  " + r.point + ": " + r.required.get_str() + " | " +
                r.candidate.get_str() + (r.divides ? "" : "  <- fails") + "\n";
    }
    emit(opt, decision_to_json(dec), text);
    return 0;
}

int cmd_plan(const GroundRing& R, const std::string& support, const std::string& target,
             const std::string& strategy, const Options& opt)
{
    ThickSupport S = parse_support(R, support);
    PerfectComplex Y = parse_complex_arg(&R, target);
    PlanStrategy st;
    if (strategy == "formality") st = PlanStrategy::Formality;
    else if (strategy == "kill") st = PlanStrategy::KillBottom;
    else fail("MalformedInput", "strategy must be formality or kill");
    Certificate cert = plan(Y, S, st);
    // the certificate document goes to stdout either way, so that
    // `plan ... | verify` works; text mode adds a summary on stderr
    if (!opt.is_json()) {
        std::cerr << "plan: " << cert.atoms.size() << " atoms, " << cert.steps.size()
                  << " cone steps\n";
    }
    std::cout << json_dump_stable(certificate_to_json(cert));
    return 0;
}

int cmd_verify(const std::vector<std::string>& files, const Options& opt)
{
    std::vector<Certificate> certs;
    std::vector<std::string> labels;
    if (files.empty()) {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        certs.push_back(certificate_from_json(parse_json_text(buf.str(), "stdin")));
        labels.push_back("stdin");
    } else {
        for (const auto& f : files) {
            certs.push_back(certificate_from_json(load_json(f)));
            labels.push_back(f);
        }
    }
    std::vector<VerifyReport> reps(certs.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < (int)certs.size(); i++) reps[i] = verify(certs[i]);

    json arr = json::array();
    std::string text;
    bool all_ok = true;
    for (size_t i = 0; i < reps.size(); i++) {
        arr.push_back(verify_report_to_json(reps[i]));
        if (reps[i].ok) {
            text += labels[i] + ": ok\n";
        } else {
            text += labels[i] + ": FAILED at " + reps[i].failing_step + ": " +
                    reps[i].reason + "\n";
            all_ok = false;
        }
    }
    emit(opt, reps.size() == 1 ? arr[0] : json{{"reports", arr}}, text);
    return all_ok ? 0 : 2;
}

int cmd_classify(const GroundRing& R, const std::string& subgroup_file,
                 const Options& opt)
{
    SubgroupSpec H = subgroup_from_json(R, load_json(subgroup_file));
    SubgroupFlags f = classify_subgroup(R, H);
    json j{{"ideal", f.ideal}, {"prime", f.prime}, {"maximal", f.maximal}};
    std::string text = std::string("ideal: ") + (f.ideal ? "yes" : "no") + "\n" +
                       "prime: " + (f.prime ? "yes" : "no") + "\n" +
                       "maximal: " + (f.maximal ? "yes" : "no") + "\n";
    emit(opt, j, text);
    return 0;
}

int cmd_snf(const GroundRing& R, const std::string& file, const Options& opt)
{
    json doc = load_json(file);
    Mat M = mat_from_json(R, doc);
    SnfResult s = snf(R, M);
    json j;
    j["U"] = mat_to_json(R, s.U);
    j["D"] = mat_to_json(R, s.D);
    j["V"] = mat_to_json(R, s.V);
    j["rank"] = s.rank;
    std::string text = "diag:";
    for (const auto& d : s.diag()) text += " " + elem_str(R, d);
    text += "\nrank: " + std::to_string(s.rank) + "\n";
    emit(opt, j, text);
    return 0;
}

int cmd_pgroup_check(const std::string& file, const Options& opt)
{
    FpComplex C = fp_complex_from_json(load_json(file));
    LengthCheck lc = length_identity_check(C);
    json j{{"lhs", lc.from_terms}, {"rhs", lc.from_homology}, {"equal", lc.equal}};
    std::string text = "lhs = " + std::to_string(lc.from_terms) +
                       ", rhs = " + std::to_string(lc.from_homology) +
                       ", equal = " + (lc.equal ? "true" : "false") + "\n";
    emit(opt, j, text);
    return lc.equal ? 0 : 2;
}

int cmd_selftest(unsigned long long seed, const Options& opt)
{
    GroundRing Z = GroundRing::integers();
    json j;
    std::string text;
    auto record = [&](const std::string& name, int n, int failed) {
        j[name] = json{{"cases", n}, {"failed", failed}};
        text += name + ": " + std::to_string(n) + " cases, " +
                (failed == 0 ? "all ok" : std::to_string(failed) + " FAILED") + "\n";
        return failed == 0;
    };
    bool ok = true;

    { // Smith form contract
        std::mt19937_64 rng(seed * 4 + 1);
        std::uniform_int_distribution<long> d(-30, 30);
        int failed = 0;
        for (int it = 0; it < 50; it++) {
            int r = 2 + (int)(rng() % 4), c = 2 + (int)(rng() % 4);
            Mat M = mat_zero(Z, r, c);
            for (auto& x : M.a) x.z = d(rng);
            auto s = snf(Z, M);
            Mat umv = mat_mul(Z, mat_mul(Z, s.U, M), s.V);
            if (!(umv == s.D)) failed++;
        }
        ok = record("smith-contract", 50, failed) && ok;
    }
    { // Euler relation on cones
        std::mt19937_64 rng(seed * 4 + 2);
        ThickSupport S = ThickSupport::max_set(
            {ring_from_int(Z, 2), ring_from_int(Z, 3)});
        int failed = 0;
        for (int it = 0; it < 25; it++) {
            PerfectComplex X = random_torsion_complex(rng, {2, 3}, 3, 2);
            PerfectComplex Y = random_torsion_complex(rng, {2, 3}, 3, 2);
            ChainMap f = random_chain_map(X, Y, rng);
            auto a = k0_class(X, S).vector(), b = k0_class(Y, S).vector();
            auto c = k0_class(cone(f), S).vector();
            for (size_t i = 0; i < c.size(); i++) {
                if (c[i] != b[i] - a[i]) failed++;
            }
        }
        ok = record("euler-relation", 25, failed) && ok;
    }
    { // alternating length identity
        std::mt19937_64 rng(seed * 4 + 3);
        int cases = 50;
        std::vector<int> bad(cases, 0);
#pragma omp parallel for schedule(dynamic)
        for (int it = 0; it < cases; it++) {
            std::mt19937_64 local(seed * 977 + it);
            FpComplex C = random_fp_complex(it % 2 ? 2 : 3, local, 4, 3, 3);
            if (!length_identity_check(C).equal) bad[it] = 1;
        }
        int failed = 0;
        for (int b : bad) failed += b;
        ok = record("length-identity", cases, failed) && ok;
    }
    { // planner round trips
        std::mt19937_64 rng(seed * 4 + 4);
        int failed = 0;
        for (int it = 0; it < 10; it++) {
            PerfectComplex Y = random_torsion_complex(rng, {2, 3}, 3, 2);
            ThickSupport S = ThickSupport::max_set(
                {ring_from_int(Z, 2), ring_from_int(Z, 3)});
            auto strat = it % 2 ? PlanStrategy::KillBottom : PlanStrategy::Formality;
            Certificate cert = plan(Y, S, strat);
            if (!verify(cert).ok) failed++;
        }
        ok = record("plan-verify", 10, failed) && ok;
    }
    emit(opt, j, text);
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact engine for perfect complexes: homology, K-theory "
                 "classes, generation decisions and cofiber certificates"};
    app.require_subcommand(1);

    std::string ring_spec, support, subgroup_file, target, strategy = "formality";
    std::string file;
    std::vector<std::string> files, gen_args;
    unsigned long long seed = 0;
    Options opt;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--out", opt.out, "output format: text | json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    auto* homology_cmd = app.add_subcommand("homology", "homology profile of a complex");
    homology_cmd->add_option("--ring", ring_spec, "ground ring: Z | Fpx:p | file");
    homology_cmd->add_option("--file", file, "complex document or inline atom")->required();
    add_common(homology_cmd);

    auto* invariants_cmd = app.add_subcommand("invariants", "support and Euler characteristics");
    invariants_cmd->add_option("--ring", ring_spec, "ground ring");
    invariants_cmd->add_option("--file", file, "complex document or inline atom")->required();
    add_common(invariants_cmd);

    auto* k0_cmd = app.add_subcommand("k0", "K-theory class in a support window");
    k0_cmd->add_option("--ring", ring_spec, "ground ring")->required();
    k0_cmd->add_option("--support", support, "Full or comma-separated points")->required();
    k0_cmd->add_option("--file", file, "complex document or inline atom")->required();
    add_common(k0_cmd);

    auto* member_cmd = app.add_subcommand("member", "membership in a dense subcategory");
    member_cmd->add_option("--ring", ring_spec, "ground ring")->required();
    member_cmd->add_option("--subgroup", subgroup_file, "subgroup document")->required();
    member_cmd->add_option("--file", file, "complex document or inline atom")->required();
    add_common(member_cmd);

    auto* cangen_cmd = app.add_subcommand("cangen", "can the target be cofiber-generated?");
    cangen_cmd->add_option("--ring", ring_spec, "ground ring")->required();
    cangen_cmd->add_option("--gen", gen_args, "generator (repeatable)")->required();
    cangen_cmd->add_option("--target", target, "target complex")->required();
    add_common(cangen_cmd);

    auto* plan_cmd = app.add_subcommand("plan", "emit a generation certificate");
    plan_cmd->add_option("--ring", ring_spec, "ground ring")->required();
    plan_cmd->add_option("--support", support, "atom window")->required();
    plan_cmd->add_option("--target", target, "target complex")->required();
    plan_cmd->add_option("--strategy", strategy, "formality | kill");
    add_common(plan_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "replay certificates (stdin if no files)");
    verify_cmd->add_option("--file", files, "certificate document (repeatable)");
    bool batch = false; // replay is always batched; flag kept for scripting
    verify_cmd->add_flag("--batch", batch, "verify files concurrently");
    add_common(verify_cmd);

    auto* classify_cmd = app.add_subcommand("classify", "ideal/prime/maximal flags");
    classify_cmd->add_option("--ring", ring_spec, "ground ring")->required();
    classify_cmd->add_option("--subgroup", subgroup_file, "subgroup document")->required();
    add_common(classify_cmd);

    auto* snf_cmd = app.add_subcommand("snf", "Smith normal form of a matrix document");
    snf_cmd->add_option("--ring", ring_spec, "ground ring")->required();
    snf_cmd->add_option("--file", file, "matrix document")->required();
    add_common(snf_cmd);

    auto* pg_cmd = app.add_subcommand("pgroup-check", "alternating length identity");
    pg_cmd->add_option("--file", file, "p-group complex document")->required();
    add_common(pg_cmd);

    auto* self_cmd = app.add_subcommand("selftest", "deterministic property suites");
    self_cmd->add_option("--seed", seed, "suite seed");
    add_common(self_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::optional<GroundRing> R;
        if (!ring_spec.empty()) R = parse_ring(ring_spec);
        const GroundRing* Rp = R ? &*R : nullptr;
        auto need_ring = [&]() -> const GroundRing& {
            if (!R) fail("MalformedInput", "--ring is required");
            return *R;
        };

        if (homology_cmd->parsed()) return cmd_homology(Rp, file, opt);
        if (invariants_cmd->parsed()) return cmd_invariants(Rp, file, opt);
        if (k0_cmd->parsed()) return cmd_k0(need_ring(), support, file, opt);
        if (member_cmd->parsed()) return cmd_member(need_ring(), subgroup_file, file, opt);
        if (cangen_cmd->parsed()) return cmd_cangen(need_ring(), gen_args, target, opt);
        if (plan_cmd->parsed()) return cmd_plan(need_ring(), support, target, strategy, opt);
        if (verify_cmd->parsed()) return cmd_verify(files, opt);
        if (classify_cmd->parsed()) return cmd_classify(need_ring(), subgroup_file, opt);
        if (snf_cmd->parsed()) return cmd_snf(need_ring(), file, opt);
        if (pg_cmd->parsed()) return cmd_pgroup_check(file, opt);
        if (self_cmd->parsed()) return cmd_selftest(seed, opt);
        fail("UnknownCommand", "no command given");
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        bool input_fault = e.name() == "MalformedInput" ||
                           e.name() == "MalformedCertificate" ||
                           e.name() == "UnknownCommand";
        return input_fault ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << "\n";
        return 2;
    }
}

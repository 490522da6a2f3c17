#ifndef COFIB_JSON_IO_HPP
#define COFIB_JSON_IO_HPP

#include "json.hpp"

#include "cofib/generation.hpp"
#include "cofib/ktheory.hpp"
#include "cofib/pgroup.hpp"

namespace cofib {

using json = nlohmann::json;

// Conventions: unbounded integers travel as decimal strings, polynomials as
// ascending coefficient arrays, product elements as component arrays.
// Parse failures raise DomainError("MalformedInput", ...).

json ring_to_json(const GroundRing& R);
GroundRing ring_from_json(const json& j);

json elem_to_json(const GroundRing& R, const Elem& x);
Elem elem_from_json(const GroundRing& R, const json& j);

json mat_to_json(const GroundRing& R, const Mat& M);
Mat mat_from_json(const GroundRing& R, const json& j);

json complex_to_json(const PerfectComplex& X);
PerfectComplex complex_from_json(const json& j);

json chain_map_to_json(const ChainMap& f);
ChainMap chain_map_from_json(const json& j);

json support_to_json(const GroundRing& R, const ThickSupport& S);
ThickSupport support_from_json(const GroundRing& R, const json& j);

json subgroup_to_json(const GroundRing& R, const SubgroupSpec& H);
SubgroupSpec subgroup_from_json(const GroundRing& R, const json& j);

json profile_to_json(const GroundRing& R, const HomologyProfile& H);
HomologyProfile profile_from_json(const GroundRing& R, const json& j);

json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const json& j);

json fp_complex_to_json(const FpComplex& C);
FpComplex fp_complex_from_json(const json& j);

json k0_element_to_json(const GroundRing& R, const K0Element& cls);
json decision_to_json(const GenDecision& dec);
json verify_report_to_json(const VerifyReport& rep);

// Byte-stable rendering used by the CLI for --out json.
std::string json_dump_stable(const json& j);

} // namespace cofib

#endif

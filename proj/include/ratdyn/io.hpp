#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ratdyn/chaos.hpp"
#include "ratdyn/cycles.hpp"
#include "ratdyn/fixed_points.hpp"
#include "ratdyn/orbit.hpp"

namespace ratdyn {

using Json = nlohmann::json;

/// Parses "re", "re+imi", "re-imi", "imi", "i" or "-i"; scientific notation is
/// accepted in both parts. Throws ParseError.
Complexd parse_complex(std::string_view text);

/// parse_complex, plus "inf" for the point at infinity.
ExtComplexd parse_ext(std::string_view text);

/// Comma-separated alpha,beta,gamma,delta. Throws ParseError unless there are
/// exactly four components.
std::vector<Complexd> parse_complex_list(std::string_view text);
MapParamsd parse_params(std::string_view text, bool allow_degenerate = false);

/// "re+imi" with 17 significant digits.
std::string format_complex(const Complexd& z, int digits = 17);
std::string format_ext(const ExtComplexd& z, int digits = 17);

Json to_json(double x);  // non-finite values become "inf", "-inf" or "nan"
double double_from_json(const Json& j);

Json to_json(const Complexd& z);
Json to_json(const ExtComplexd& z);
Json to_json(const MapParamsd& p);
Json to_json(const ConditionSignature& s);
Json to_json(const FixedPointRecord& r);
Json to_json(const TerminationReason& t);
Json to_json(const OrbitSettings& s);
Json to_json(const Orbit& o);
Json to_json(const OrbitClass& c);
Json to_json(const CycleRecord& c);
Json to_json(const SecondIterateSet& s);
Json to_json(const BoxFit& f);
Json to_json(const ChaosReport& r);
Json to_json(const ScanOutcome& o);
Json to_json(const ScanSummary& s);

Complexd complex_from_json(const Json& j);
ExtComplexd ext_from_json(const Json& j);
MapParamsd params_from_json(const Json& j);
ConditionSignature signature_from_json(const Json& j);
FixedPointRecord fixed_point_from_json(const Json& j);
TerminationReason termination_from_json(const Json& j);
OrbitSettings orbit_settings_from_json(const Json& j);
Orbit orbit_from_json(const Json& j);
CycleRecord cycle_from_json(const Json& j);
BoxFit box_fit_from_json(const Json& j);
ChaosReport chaos_report_from_json(const Json& j);

/// CSV with header "n,re,im"; infinity is written as "inf,inf".
void write_points_csv(std::ostream& os, const std::vector<std::size_t>& indices, const std::vector<ExtComplexd>& points);
void write_orbit_csv(std::ostream& os, const Orbit& orbit);
std::vector<std::pair<std::size_t, ExtComplexd>> read_points_csv(std::istream& is);

}  // namespace ratdyn

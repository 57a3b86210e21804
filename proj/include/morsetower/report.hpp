#ifndef MORSETOWER_REPORT_HPP
#define MORSETOWER_REPORT_HPP

#include <json.hpp>

#include "morsetower/bidirect.hpp"
#include "morsetower/novikov.hpp"
#include "morsetower/tower.hpp"

namespace morsetower {

using Json = nlohmann::ordered_json;

// Rationals are serialized as strings ("p/q", or "p" when the denominator is
// one) so no value ever passes through a float. Arbitrary-precision integers
// are serialized as decimal strings for the same reason.
Json json_of(const Rational& x);
Json json_of(const Integer& x);
Json json_of(const std::vector<Rational>& xs);
Json json_of(const std::vector<Integer>& xs);

Json json_of(const ExactMatrix& m);
Json json_of(const PresentedModule& m);
Json json_of(const ModuleMap& f);
Json json_of(const ImagePresentation& im);

Json json_of(const CriticalPoint& p);
Json json_of(const FloerTriple& t);
Json json_of(const ValidationReport& r);

Json json_of(const Window& w);
Json json_of(const WindowComplex& c);
Json json_of(const HomologyGroup& h);
Json json_of(const SquareClassification& s);
Json json_of(const IdentityReport& r);

Json json_of(const Tower& t);
Json json_of(const GridLimit& l);
Json json_of(const LevelImages& l);
Json json_of(const StabilizationReport& r);
Json json_of(const MlCertificate& c);
Json json_of(const Lim1Report& r);

Json json_of(const KappaReport& r);
Json json_of(const TamenessReport& r);
Json json_of(const TheoremAGridResult& r);
Json json_of(const TheoremAReport& r);

Json json_of(const WitnessSequence& s);
Json json_of(const WitnessValidation& v);
Json json_of(const ObstructionEntry& e);
Json json_of(const ObstructionReport& r);

/// Plain-text rendering carrying every scalar present in the JSON: one
/// "path: value" line per leaf, arrays indexed, insertion order preserved.
std::string render_text(const Json& j);

}  // namespace morsetower

#endif

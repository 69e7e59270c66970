#pragma once

// JSON encodings of the library's values. GroupElement and AlgebraElement
// are 2x2 nested arrays, HPoint is [x, y], words are strings like "a B a a".

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "adsg/ads.hpp"
#include "adsg/contraction.hpp"
#include "adsg/strip.hpp"

namespace adsg {

using Json = nlohmann::json;

/// Malformed or incomplete input (as opposed to a domain error).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const GroupElement& g);
Json to_json(const AlgebraElement& x);
Json to_json(const HPoint& p);
Json to_json(const TangentVector& v);
Json to_json(const Representation& r);
Json to_json(const Cocycle& u);
Json to_json(const LorentzDistance& d);
Json to_json(const Geodesic& g);
Json to_json(const AdmissibilityReport& r);
Json to_json(const PropernessReport& r);

GroupElement group_element_from_json(const Json& j);
AlgebraElement algebra_element_from_json(const Json& j);
HPoint hpoint_from_json(const Json& j);
Word word_from_json(const Json& j);
Representation representation_from_json(const Json& j);
/// {"rank", "base": Representation, "values": [matrix...]}.
Cocycle cocycle_from_json(const Json& j);
/// {"type": "pants" | "torus", "lengths": [...]}.
SchottkyGroup surface_from_json(const Json& j);
/// {"ab": 1, "bc": 0.5} or [["ab", 1], ...].
WeightedArcSystem weighted_system_from_json(const ArcComplex& cx, const Json& j);
Json weighted_system_to_json(const ArcComplex& cx, const WeightedArcSystem& x);

/// Required member access with an InputError naming the missing key.
const Json& require(const Json& obj, const char* key);

}  // namespace adsg

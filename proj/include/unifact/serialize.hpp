#pragma once

#include <json.hpp>

#include "unifact/automorphism.hpp"
#include "unifact/direct_power.hpp"
#include "unifact/group.hpp"
#include "unifact/strips.hpp"

namespace unifact {

using Json = nlohmann::json;

/// {"kind":"cyclic","n":3}, {"kind":"product","factors":[...]},
/// {"kind":"table","mul":[[...]]}, {"kind":"perm","degree":d,"generators":[[...]]}.
/// Permutation generators are 0-based point images.
GroupSpec group_spec_from_json(const Json& j);
Json group_spec_to_json(const GroupSpec& spec);

/// An automorphism is the array of images of 0..|T|-1.
Json to_json(const Automorphism& a);
Automorphism automorphism_from_json(const GroupPtr& group, const Json& j);

/// {"support":[1,2],"twists":[[...]]}; support is 1-based and the twists
/// are those of the second and later support coordinates.
Json to_json(const FullStrip& s);
FullStrip strip_from_json(const GroupPtr& group, const Json& j);

/// {"strips":[...],"full":[1-based indices]}
Json to_json(const StripProduct& p);
StripProduct strip_product_from_json(const DirectPower& m, const Json& j);

/// {"perm":[1-based images],"twists":[[...] per coordinate]}
Json to_json(const FactorAutomorphism& g);
FactorAutomorphism factor_automorphism_from_json(const DirectPower& m, const Json& j);

/// Exact integer: a JSON number when it fits in 64 bits, else a decimal string.
Json to_json(const BigInt& n);

/// 1-based copy of a 0-based index list.
Json one_based(const std::vector<unsigned>& idx);

}  // namespace unifact

#pragma once

#include <string>

#include <json.hpp>

#include "exactkit/diagram.hpp"
#include "exactkit/lab.hpp"

namespace exactkit {

using Json = nlohmann::json;

/// {"p","rows","cols","data":[[...],...]}
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"p","N","dim","action":[[...]]}
Json to_json(const LambdaModule& m);
LambdaModule module_from_json(const Json& j);

/// {"src","tgt","mat"}
Json to_json(const ModuleMorphism& f);
ModuleMorphism morphism_from_json(const Json& j);

/// {"a","i","b","p","c"}: modules a, b, c and the matrices of i, p.
Json to_json(const ShortExactSeq& e);
ShortExactSeq ses_from_json(const Json& j);

/// {"f","g","h"}
Json to_json(const SesMorphism& m);

/// {"pairs":{"i,j":{"basis","dim","ext_dim"}}}; dim is dim U(i, j).
Json to_json(const Skeleton& sk, const SubfunctorData& F);
SubfunctorData subfunctor_from_json(const Skeleton& sk, const Json& j);

/// Modules under A..J, morphisms under a b c d e f g h i j k l.
Json to_json(const Grid3x3& g);

Json to_json(const Witness& w);
Json to_json(const MorphismClassVerdict& v);
Json to_json(const ThreeByThreeReport& r, const LabOptions& opt);
Json to_json(const LabOptions& opt);

/// Compact, sorted keys.
std::string canonical(const Json& j);

}  // namespace exactkit

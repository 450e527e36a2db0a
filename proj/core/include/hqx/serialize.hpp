#pragma once

#include <json.hpp>

#include "hqx/family.hpp"
#include "hqx/hecke_spectral.hpp"
#include "hqx/qexpansion.hpp"
#include "hqx/quad_field.hpp"
#include "hqx/symbolic.hpp"

namespace hqx {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "hqx/1";

Json to_json(const PadicNum& x);
PadicNum padic_from_json(const Json& j);

Json to_json(const QuadExtNum& x);
QuadExtNum quadext_from_json(const Json& j, long p);

Json to_json(const mpq_class& q);  // "num/den" or "num"
mpq_class rational_from_json(const Json& j);

Json to_json(const QuadElem& v);
Json index_json(const IntElem& v);  // as the rational quadruple
QuadElem quadelem_from_json(const Json& j, const FieldPtr& F);
IntElem index_from_json(const Json& j);

Json to_json(const QuadField& F);
FieldPtr field_from_json(const Json& j);

Json to_json(const PrimeSplit& s);
SplitPtr split_from_json(const Json& j);

Json to_json(const HilbertQExp& f);
// Builds the field and split from the embedded (D, p, prec).
HilbertQExp hilbert_from_json(const Json& j);
HilbertQExp hilbert_from_json(const Json& j, const SplitPtr& s);

Json to_json(const ModularQExp& g);
ModularQExp modular_from_json(const Json& j);

Json to_json(const RootPair& r);
Json to_json(const SpectralData& sd);
SpectralData spectral_from_json(const Json& j);
Json to_json(const OrdinaryData& od);
OrdinaryData ordinary_from_json(const Json& j);

Json poly_json(const PadicPoly& poly);
PadicPoly poly_from_json(const Json& j);

Json to_json(const LambdaCoeff& a);
LambdaCoeff lambda_from_json(const Json& j, long p);
Json to_json(const HilbertFamily& F, long prec);
HilbertFamily family_from_json(const Json& j);

Json to_json(const AjScalar& a);
Json to_json(const EulerSummationCertificate& c);
Json to_json(const SchollReport& r);
Json to_json(const IdentityResult& r);

// {"schema": ..., "error": {"type", "message", ...}}
Json error_json(const std::exception& e);

}  // namespace hqx

#pragma once

#include <json.hpp>

#include "adhm/deform.hpp"
#include "adhm/monad.hpp"
#include "adhm/tangent.hpp"
#include "adhm/uhlenbeck.hpp"

namespace adhm {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

// Datum documents carry exact rationals as "p/q" strings, Gaussian
// rationals as ["p/q","p/q"] pairs, and complex floats as [re, im].
inline constexpr const char* kSchemaVersion = "1";

json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, FieldKind f);
json mat_to_json(const Mat& m);
Mat mat_from_json(const json& j, int rows, int cols, FieldKind f);

json datum_to_json(const SymplecticDatum& d, const std::string& comment = "");
SymplecticDatum datum_from_json(const json& j);
SymplecticDatum load_datum(const std::string& path);

json classical_to_json(const ClassicalDatum& d);
json validation_to_json(const ValidationReport& r);
json polymat_to_json(const PolyMat& p);
json curve_to_json(const DeformationCurve& c);
json certificate_to_json(const CurveCertificate& c);
json uhlenbeck_to_json(const UhlenbeckPoint& p);
json tangent_to_json(const TangentReport& r);
json fiber_to_json(const FiberReport& r);
json lift_to_json(const SymplecticLift& l);

// FNV-1a over raw bytes, hex-encoded; used for input digests in reports.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace adhm

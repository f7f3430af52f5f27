#pragma once

#include <nlohmann/json.hpp>

#include "amlab/decompose.hpp"
#include "amlab/gauge.hpp"
#include "amlab/scf.hpp"

namespace amlab {

// JSON views of the report types. Vectors are [x, y, z]; optional values are null
// when absent. Doubles are written with round-trip precision.

void to_json(nlohmann::json& j, const Vec3& v);
void to_json(nlohmann::json& j, const Grid3& g);
void to_json(nlohmann::json& j, const PhysicalParams& p);
void to_json(nlohmann::json& j, const Tolerances& t);
void to_json(nlohmann::json& j, const FarFieldModel& m);
void to_json(nlohmann::json& j, const DecompositionReport& r);
void to_json(nlohmann::json& j, const MomentumReport& r);
void to_json(nlohmann::json& j, const GaugeTrial& t);
void to_json(nlohmann::json& j, const GaugeScanReport& r);
void to_json(nlohmann::json& j, const ScfRecord& r);

/// Scalar summary of an SCF end state (fields and spinor are not serialized).
nlohmann::json scf_summary(const ScfState& s);

}  // namespace amlab

#pragma once

#include <json.hpp>

#include "lpoly/chaining.hpp"
#include "lpoly/constructions.hpp"
#include "lpoly/evaluate.hpp"
#include "lpoly/family.hpp"
#include "lpoly/khintchine.hpp"
#include "lpoly/witness.hpp"

namespace lpoly {

// ±1 arrays for assignments, 1-based index lists for variable sets.
void to_json(nlohmann::json& j, const Assignment& x);
void to_json(nlohmann::json& j, const BoundSummary& b);
void to_json(nlohmann::json& j, const SupNormResult& r);
void to_json(nlohmann::json& j, const BlockRecord& b);
void to_json(nlohmann::json& j, const ChainingCertificate& c);
void to_json(nlohmann::json& j, const SplitReport& s);
void to_json(nlohmann::json& j, const BernsteinSweep& s);
void to_json(nlohmann::json& j, const WitnessConfig& c);
void to_json(nlohmann::json& j, const WitnessReport& r);
void to_json(nlohmann::json& j, const PaleyReport& r);
void to_json(nlohmann::json& j, const DetMaxResult& r);
void to_json(nlohmann::json& j, const DeterminantComparison& c);
void to_json(nlohmann::json& j, const MomentReport& m);
void to_json(nlohmann::json& j, const ConverseReport& r);
void to_json(nlohmann::json& j, const GapRow& r);

/// Reads back a certificate written by to_json (signs + family from the
/// embedded LPOLY text).
ChainingCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace lpoly

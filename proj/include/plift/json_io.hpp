#pragma once

#include <json.hpp>
#include <string>

#include "plift/catalog.hpp"
#include "plift/dynamics.hpp"
#include "plift/lifts.hpp"

namespace plift {

// Document schemas are versioned; see docs/schemas.md.
inline constexpr int kSchemaVersion = 1;

// Tensor document: { schema_version, kind:"tensor", vars, fiber_vars?,
// params, matrix, provenance? }. Matrix entries are rendered polynomials.
nlohmann::json tensor_to_json(const PoissonTensor& pi);
nlohmann::json tensor_to_json(const LiftedTensor& lifted);
PoissonTensor tensor_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const std::string& name, const IdentityReport& report);

nlohmann::json table_to_json(const catalog::Table& table, const std::string& kind,
                             bool with_witnesses = false);
std::string table_to_csv(const catalog::Table& table);
std::string table_to_markdown(const catalog::Table& table);

std::string trajectory_to_csv(const Trajectory& traj, const std::vector<std::string>& var_names);
nlohmann::json conservation_to_json(const ConservationReport& report);

}  // namespace plift

/*
 * Copyright 2026 The qwalk Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// JSON (de)serialization of the public records. Every document written here
// carries a `schema_version` field.

#include <nlohmann/json.hpp>

#include "qwalk/feasibility.hpp"
#include "qwalk/model.hpp"

namespace qwalk {

inline constexpr int kSchemaVersion = 1;

/// Unknown keys are a ConfigError.
DeviceConfig device_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DeviceConfig& cfg);

CorrelationMatrix correlation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CorrelationMatrix& m);

EigenSystem eigensystem_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EigenSystem& es);

/// Unknown keys are a ConfigError.
PhysicalParams physical_params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PhysicalParams& p);
nlohmann::json to_json(const LoopBudget& b);
nlohmann::json to_json(const DiscretenessReport& r);

}  // namespace qwalk
